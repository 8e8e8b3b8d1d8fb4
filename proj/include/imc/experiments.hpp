#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imc/generators.hpp"
#include "imc/instance.hpp"

namespace imc {

struct RunRecord {
    std::uint64_t seed;
    std::size_t iters_lower;
    std::size_t iters_upper;
    double residual_lower;
    double residual_upper;
};

/// Iteration-count statistics for one (N, lambda, model) cell.
struct BatchStats {
    double lambda;
    std::size_t runs;
    double mean_iters_lower;
    double mean_iters_upper;
    double std_lower;
    double std_upper;
    std::size_t max_iters;
    std::vector<RunRecord> per_run;
};

struct BatchConfig {
    std::size_t n;
    std::vector<double> lambda_grid;
    CredalModel model;
    std::size_t runs_per_cell;
    double epsilon = 0.1;
    std::uint64_t seed = 0;
    /// 0 picks the hardware concurrency; IMC_HIT_THREADS caps it in the CLI.
    std::size_t threads = 0;
};

/**
 * For each lambda in the grid, generates runs_per_cell random instances and
 * solves both bounds. Per-run seeds are split from the batch seed, runs
 * execute in parallel, rows land in run order. Empty paths skip the
 * corresponding file. A run that fails to converge aborts its cell with
 * diagnostics.
 *
 * raw CSV: family,N,lambda,model,epsilon,seed,run,iters_lower,iters_upper,
 *          residual_lower,residual_upper (one row per run)
 * agg CSV: bound,lambda,mean,std,ci95_lo,ci95_hi
 * hist CSV: lambda,iterations,count_lower,count_upper
 */
std::vector<BatchStats> run_batch(const BatchConfig& cfg, const std::string& raw_csv,
                                  const std::string& agg_csv,
                                  const std::string& hist_csv = "");

struct PeakRow {
    std::size_t n;
    double lambda_star;
    double peak_mean;
};

/**
 * For each N in the grid, finds the lambda maximising the mean iteration
 * count (averaged over the two bounds; lowest lambda on ties).
 *
 * scan CSV: N,lambda,mean_lower,mean_upper,std_lower,std_upper
 * peaks CSV: N,lambda_star,peak_mean
 */
std::vector<PeakRow> lambda_peak_scan(const std::vector<std::size_t>& n_grid,
                                      const std::vector<double>& lambda_grid,
                                      CredalModel model, std::size_t runs, double epsilon,
                                      std::uint64_t seed, const std::string& scan_csv,
                                      const std::string& peaks_csv,
                                      std::size_t threads = 0);

} // namespace imc
