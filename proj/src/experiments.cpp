#include "imc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "imc/errors.hpp"
#include "imc/rng.hpp"
#include "imc/solve.hpp"

namespace imc {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::size_t effective_threads(std::size_t requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, count) on up to `threads` workers; the first
// exception wins and is rethrown after all workers join.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min(effective_threads(threads), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

BatchStats summarise(double lambda, std::vector<RunRecord> records) {
    BatchStats s{lambda, records.size(), 0, 0, 0, 0, 0, std::move(records)};
    for (const RunRecord& r : s.per_run) {
        s.mean_iters_lower += static_cast<double>(r.iters_lower);
        s.mean_iters_upper += static_cast<double>(r.iters_upper);
        s.max_iters = std::max({s.max_iters, r.iters_lower, r.iters_upper});
    }
    const double n = static_cast<double>(s.runs);
    s.mean_iters_lower /= n;
    s.mean_iters_upper /= n;
    if (s.runs > 1) {
        double vl = 0, vu = 0;
        for (const RunRecord& r : s.per_run) {
            vl += std::pow(static_cast<double>(r.iters_lower) - s.mean_iters_lower, 2);
            vu += std::pow(static_cast<double>(r.iters_upper) - s.mean_iters_upper, 2);
        }
        s.std_lower = std::sqrt(vl / (n - 1.0));
        s.std_upper = std::sqrt(vu / (n - 1.0));
    }
    return s;
}

std::vector<BatchStats> run_cells(const BatchConfig& cfg) {
    if (cfg.runs_per_cell == 0)
        throw std::invalid_argument("run_batch: runs_per_cell must be positive");
    if (cfg.lambda_grid.empty())
        throw std::invalid_argument("run_batch: lambda grid must be nonempty");
    std::vector<BatchStats> cells;
    cells.reserve(cfg.lambda_grid.size());
    for (std::size_t ci = 0; ci < cfg.lambda_grid.size(); ++ci) {
        const double lambda = cfg.lambda_grid[ci];
        const std::uint64_t cell_seed = split_seed(cfg.seed, ci);
        std::vector<RunRecord> records(cfg.runs_per_cell);
        try {
            parallel_for(cfg.runs_per_cell, cfg.threads, [&](std::size_t r) {
                const std::uint64_t run_seed = split_seed(cell_seed, r);
                const InstanceSpec inst =
                    gen_random_instance(cfg.n, lambda, cfg.model, cfg.epsilon, run_seed);
                const TargetSet target = inst.target_set();
                const SolveResult lo = lower_hitting(inst.credal, target);
                const SolveResult hi = upper_hitting(inst.credal, target);
                records[r] = RunRecord{run_seed, lo.iterations, hi.iterations, lo.residual,
                                       hi.residual};
            });
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("run_batch: cell lambda=" + fmt(lambda) +
                                       " aborted: " + e.what(),
                                   e.iterations, e.trace);
        }
        cells.push_back(summarise(lambda, std::move(records)));
    }
    return cells;
}

void write_raw(const BatchConfig& cfg, const std::vector<BatchStats>& cells,
               const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("run_batch: cannot write '" + path + "'");
    out << "family,N,lambda,model,epsilon,seed,run,iters_lower,iters_upper,"
           "residual_lower,residual_upper\n";
    for (const BatchStats& cell : cells)
        for (std::size_t r = 0; r < cell.per_run.size(); ++r) {
            const RunRecord& rec = cell.per_run[r];
            out << "random," << cfg.n << ',' << fmt(cell.lambda) << ','
                << to_string(cfg.model) << ',' << fmt(cfg.epsilon) << ',' << rec.seed << ','
                << r << ',' << rec.iters_lower << ',' << rec.iters_upper << ','
                << fmt(rec.residual_lower) << ',' << fmt(rec.residual_upper) << '\n';
        }
}

void write_agg(const std::vector<BatchStats>& cells, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("run_batch: cannot write '" + path + "'");
    out << "bound,lambda,mean,std,ci95_lo,ci95_hi\n";
    for (const BatchStats& c : cells)
        out << "lower," << fmt(c.lambda) << ',' << fmt(c.mean_iters_lower) << ','
            << fmt(c.std_lower) << ',' << fmt(c.mean_iters_lower - 1.96 * c.std_lower) << ','
            << fmt(c.mean_iters_lower + 1.96 * c.std_lower) << '\n';
    for (const BatchStats& c : cells)
        out << "upper," << fmt(c.lambda) << ',' << fmt(c.mean_iters_upper) << ','
            << fmt(c.std_upper) << ',' << fmt(c.mean_iters_upper - 1.96 * c.std_upper) << ','
            << fmt(c.mean_iters_upper + 1.96 * c.std_upper) << '\n';
}

void write_hist(const std::vector<BatchStats>& cells, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("run_batch: cannot write '" + path + "'");
    out << "lambda,iterations,count_lower,count_upper\n";
    for (const BatchStats& c : cells) {
        std::map<std::size_t, std::pair<std::size_t, std::size_t>> counts;
        for (const RunRecord& r : c.per_run) {
            counts[r.iters_lower].first++;
            counts[r.iters_upper].second++;
        }
        for (const auto& [iters, pair] : counts)
            out << fmt(c.lambda) << ',' << iters << ',' << pair.first << ',' << pair.second
                << '\n';
    }
}

} // namespace

std::vector<BatchStats> run_batch(const BatchConfig& cfg, const std::string& raw_csv,
                                  const std::string& agg_csv, const std::string& hist_csv) {
    std::vector<BatchStats> cells = run_cells(cfg);
    if (!raw_csv.empty()) write_raw(cfg, cells, raw_csv);
    if (!agg_csv.empty()) write_agg(cells, agg_csv);
    if (!hist_csv.empty()) write_hist(cells, hist_csv);
    return cells;
}

std::vector<PeakRow> lambda_peak_scan(const std::vector<std::size_t>& n_grid,
                                      const std::vector<double>& lambda_grid,
                                      CredalModel model, std::size_t runs, double epsilon,
                                      std::uint64_t seed, const std::string& scan_csv,
                                      const std::string& peaks_csv, std::size_t threads) {
    if (n_grid.empty() || lambda_grid.empty())
        throw std::invalid_argument("lambda_peak_scan: grids must be nonempty");
    std::vector<PeakRow> peaks;
    std::ofstream scan;
    if (!scan_csv.empty()) {
        scan.open(scan_csv);
        if (!scan) throw std::runtime_error("lambda_peak_scan: cannot write '" + scan_csv + "'");
        scan << "N,lambda,mean_lower,mean_upper,std_lower,std_upper\n";
    }
    for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
        BatchConfig cfg{n_grid[ni], lambda_grid, model, runs, epsilon,
                        split_seed(seed, ni), threads};
        const std::vector<BatchStats> cells = run_cells(cfg);
        PeakRow best{n_grid[ni], cells.front().lambda, -1.0};
        for (const BatchStats& c : cells) {
            const double mean = 0.5 * (c.mean_iters_lower + c.mean_iters_upper);
            if (scan.is_open())
                scan << cfg.n << ',' << fmt(c.lambda) << ',' << fmt(c.mean_iters_lower) << ','
                     << fmt(c.mean_iters_upper) << ',' << fmt(c.std_lower) << ','
                     << fmt(c.std_upper) << '\n';
            if (mean > best.peak_mean) {
                best.peak_mean = mean;
                best.lambda_star = c.lambda;
            }
        }
        peaks.push_back(best);
    }
    if (!peaks_csv.empty()) {
        std::ofstream out(peaks_csv);
        if (!out) throw std::runtime_error("lambda_peak_scan: cannot write '" + peaks_csv + "'");
        out << "N,lambda_star,peak_mean\n";
        for (const PeakRow& p : peaks)
            out << p.n << ',' << fmt(p.lambda_star) << ',' << fmt(p.peak_mean) << '\n';
    }
    return peaks;
}

} // namespace imc
