// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits nonzero when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "imc/experiments.hpp"
#include "imc/generators.hpp"
#include "imc/markov.hpp"
#include "imc/oracle.hpp"
#include "imc/reachability.hpp"
#include "imc/solve.hpp"
#include "support.hpp"

using namespace imc;

namespace {

int failures = 0;

void criterion(int number, const std::string& name,
               const std::function<std::string()>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
        detail = body();
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d. %-28s %s(%.2fs)\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.empty() ? "" : (detail + " ").c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

struct check_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw check_failure(what);
}

// --- criterion bodies -------------------------------------------------------

std::string worst_case_family() {
    for (std::size_t m = 2; m <= 8; ++m) {
        auto inst = worst_case_instance(m);
        SolveOptions opts;
        opts.initial_selection = ExtremeSelection{{0, 0, 0}};
        auto r = upper_hitting(inst.credal, inst.target_set(), opts);
        require(r.iterations == m,
                "m=" + std::to_string(m) + ": expected exactly m iterations, got " +
                    std::to_string(r.iterations));
        const double pm = std::pow(2.0, static_cast<double>(m));
        require(std::abs(r.probabilities.values[0] - pm / (pm + 1.0)) <= 1e-9,
                "m=" + std::to_string(m) + ": wrong limit value");
    }
    return "m=2..8 exact";
}

std::string complete_graph_two_iterations() {
    int checked = 0;
    for (std::size_t n : {std::size_t{5}, std::size_t{10}}) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            auto inst = gen_random_instance(n, static_cast<double>(n),
                                            CredalModel::eps_contam, 0.1,
                                            split_seed(2024, seed * 2 + n));
            const TargetSet a = inst.target_set();
            auto lo = lower_hitting(inst.credal, a);
            auto hi = upper_hitting(inst.credal, a);
            require(lo.iterations == 2, "lower solver took " +
                                            std::to_string(lo.iterations) + " iterations");
            require(hi.iterations == 2, "upper solver took " +
                                            std::to_string(hi.iterations) + " iterations");
            ++checked;
        }
    }
    return std::to_string(checked) + " instances, always 2";
}

// Shared pool for criteria 3 and 4.
std::vector<CredalSet> oracle_pool() {
    std::vector<CredalSet> pool;
    SplitMix64 rng(30103);
    for (int i = 0; i < 200; ++i)
        pool.push_back(test::random_vertex_credal(3 + rng.next_below(4), 3, 3, rng));
    return pool;
}

std::string oracle_equivalence() {
    auto pool = oracle_pool();
    SplitMix64 rng(30104);
    for (const CredalSet& c : pool) {
        TargetSet a(c.n_states(), {rng.next_below(c.n_states())});
        auto bounds = brute_force_bounds(c, a);
        auto lo = lower_hitting(c, a);
        auto hi = upper_hitting(c, a);
        require(test::max_abs_diff(lo.probabilities.values, bounds.lower.values) <= 1e-9,
                "lower bound disagrees with enumeration");
        require(test::max_abs_diff(hi.probabilities.values, bounds.upper.values) <= 1e-9,
                "upper bound disagrees with enumeration");
    }
    return "200 instances";
}

std::string sandwich_property() {
    auto pool = oracle_pool();
    SplitMix64 rng(30104); // same targets as criterion 3
    for (const CredalSet& c : pool) {
        TargetSet a(c.n_states(), {rng.next_below(c.n_states())});
        sandwich_check(c, a, 50, split_seed(515, c.n_states()));
    }
    return "200 instances x 50 samples";
}

std::string monte_carlo_consistency() {
    SplitMix64 rng(42424);
    for (int i = 0; i < 20; ++i) {
        const std::size_t n = 3 + rng.next_below(8); // up to 10 states
        const TransitionMatrix t = (i % 2 == 0) ? test::random_sparse_matrix(n, 3, rng)
                                                : test::random_dense_matrix(n, rng);
        TargetSet a(n, {rng.next_below(n)});
        const numvec p = hitting_probabilities(t, a).values;
        for (std::size_t x = 0; x < n; ++x) {
            const McEstimate e =
                simulate_hitting(t, a, x, McConfig{100000, 50 * n, rng.next_u64()});
            // the solved value itself carries the 1e-9 residual budget
            require(std::abs(p[x] - e.estimate) <= 3.0 * e.std_error + e.survival + 1e-9,
                    "matrix " + std::to_string(i) + ", start " + std::to_string(x) +
                        ": |" + std::to_string(p[x]) + " - " + std::to_string(e.estimate) +
                        "| > 3se + survival");
        }
    }
    return "20 matrices, every start state";
}

std::string reachability_fixtures() {
    auto e1 = fixture(Family::example1);
    auto rep1 = lower_reach_report(e1.credal, e1.target_set());
    require(rep1.chain.back().contains(0), "example1: state 0 must lower-reach the target");
    require(!lr2_minimal_n(e1.credal, StateSet(4, {2}), 0, 40).has_value(),
            "example1: (LR2) must fail up to cap 40");

    auto e2 = fixture(Family::example2);
    require(!lr3_holds(e2.credal, StateSet(3, {2}), 0), "example2: (LR3) must fail");
    auto n2 = lr2_minimal_n(e2.credal, StateSet(3, {2}), 0, 40);
    require(n2.has_value(), "example2: (LR2) must hold");
    require(*n2 <= 10, "example2: minimal n exceeds 10");
    std::ostringstream note;
    note << "example2 minimal n = " << *n2
         << " (first common time of the period-3 and period-2 vertex cycles)";
    return note.str();
}

std::string zero_set_exactness() {
    SplitMix64 rng(70707);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 3 + rng.next_below(4);
        auto c = test::random_vertex_credal(n, 3, 2, rng);
        TargetSet a(n, {rng.next_below(n)});

        auto lower_rep = lower_reach_report(c, a);
        auto upper_rep = upper_reach_report(c, a);
        auto lo = lower_hitting(c, a);
        auto hi = upper_hitting(c, a);
        for (std::size_t x = 0; x < n; ++x) {
            require((lo.probabilities.values[x] < 1e-12) ==
                        lower_rep.trivial_zero.contains(x),
                    "lower zero set mismatch at state " + std::to_string(x));
            require((hi.probabilities.values[x] < 1e-12) ==
                        upper_rep.trivial_zero.contains(x),
                    "upper zero set mismatch at state " + std::to_string(x));
        }

        // union / intersection oracles over all vertex matrices
        std::vector<std::uint8_t> in_union(n, 0), in_all(n, 1);
        ExtremeSelection sel{sizevec(n, 0)};
        for (;;) {
            auto ct = cannot_reach_set(materialize(c, sel), a);
            std::vector<std::uint8_t> here(n, 0);
            for (std::size_t x : ct.members()) here[x] = 1;
            for (std::size_t x = 0; x < n; ++x) {
                in_union[x] |= here[x];
                in_all[x] &= here[x];
            }
            std::size_t z = 0;
            while (z < n && ++sel.choice[z] == c.extreme_count(z)) sel.choice[z++] = 0;
            if (z == n) break;
        }
        for (std::size_t x = 0; x < n; ++x) {
            require(static_cast<bool>(in_union[x]) == lower_rep.trivial_zero.contains(x),
                    "A_T differs from the union oracle");
            require((in_all[x] && !a.contains(x)) == upper_rep.trivial_zero.contains(x),
                    "W_T differs from the intersection oracle");
        }
    }
    return "200 instances";
}

std::string figure1_statistics() {
    std::vector<double> grid;
    for (int l = 1; l <= 10; ++l) grid.push_back(static_cast<double>(l));
    std::ostringstream note;
    for (CredalModel model : {CredalModel::eps_contam, CredalModel::vertex_hull}) {
        BatchConfig cfg{10, grid, model, 1000, 0.1, 8888, 1}; // single-threaded
        const std::string stem = std::string("acceptance_fig1_") + to_string(model);
        const std::string raw = stem + ".csv", agg = stem + "_agg.csv",
                          hist = stem + "_hist.csv";
        auto cells = run_batch(cfg, raw, agg, hist);
        double worst_mean = 0;
        std::size_t worst_iters = 0;
        for (const auto& cell : cells) {
            worst_mean = std::max({worst_mean, cell.mean_iters_lower, cell.mean_iters_upper});
            worst_iters = std::max(worst_iters, cell.max_iters);
            require(cell.mean_iters_lower <= 6.0 && cell.mean_iters_upper <= 6.0,
                    to_string(model) + " lambda=" + std::to_string(cell.lambda) +
                        ": mean iterations above 6");
        }
        require(worst_iters <= 12, to_string(model) + ": max iterations above 12");
        // the emitted files must exist with the raw row count, then go away
        std::ifstream check(raw);
        std::size_t lines = 0;
        for (std::string line; std::getline(check, line);) ++lines;
        require(lines == 1 + grid.size() * 1000, "raw CSV row count is off");
        for (const std::string& f : {raw, agg, hist}) std::remove(f.c_str());
        note << to_string(model) << " worst mean " << worst_mean << ", max "
             << worst_iters << "; ";
    }
    return note.str();
}

std::string propagation_chain() {
    std::size_t previous = 0;
    std::ostringstream note;
    for (std::size_t n : {std::size_t{4}, std::size_t{6}, std::size_t{8}}) {
        auto inst = propagation_chain_instance(n, 0.95);
        auto r = upper_hitting(inst.credal, inst.target_set());
        require(r.iterations >= n - 1, "N=" + std::to_string(n) + ": iterations " +
                                           std::to_string(r.iterations) + " below N-1");
        require(r.iterations > previous, "iteration count must grow with N");
        previous = r.iterations;
        note << "N=" << n << ":" << r.iterations << " ";
    }
    return note.str();
}

std::string property_suites() {
    // (a) operator axioms, (b) monotone/non-expansive envelopes,
    // (c) conjugacy — 500 cases each
    SplitMix64 rng(99991);
    for (int rep = 0; rep < 500; ++rep) {
        const std::size_t n = 2 + rng.next_below(5);
        auto c = test::random_vertex_credal(n, 3, n, rng);
        numvec f(n), g(n);
        double fmin = 1e9, fmax = -1e9;
        for (std::size_t x = 0; x < n; ++x) {
            f[x] = rng.next_double() * 4 - 2;
            g[x] = rng.next_double() * 4 - 2;
            fmin = std::min(fmin, f[x]);
            fmax = std::max(fmax, f[x]);
        }
        const double lambda = 0.1 + 3 * rng.next_double();
        auto lo_f = lower_envelope(c, f).values;
        auto hi_f = upper_envelope(c, f).values;
        auto lo_g = lower_envelope(c, g).values;
        auto hi_g = upper_envelope(c, g).values;
        numvec fg(n), lf(n), nf(n);
        for (std::size_t x = 0; x < n; ++x) {
            fg[x] = f[x] + g[x];
            lf[x] = lambda * f[x];
            nf[x] = -f[x];
        }
        auto lo_fg = lower_envelope(c, fg).values;
        auto hi_fg = upper_envelope(c, fg).values;
        auto lo_lf = lower_envelope(c, lf).values;
        auto lo_nf = lower_envelope(c, nf).values;
        for (std::size_t x = 0; x < n; ++x) {
            require(lo_f[x] >= fmin - 1e-10 && hi_f[x] <= fmax + 1e-10 &&
                        lo_f[x] <= hi_f[x] + 1e-10,
                    "operator bounds violated");
            require(lo_f[x] + lo_g[x] <= lo_fg[x] + 1e-10, "superadditivity violated");
            require(hi_fg[x] <= hi_f[x] + hi_g[x] + 1e-10, "subadditivity violated");
            require(std::abs(lo_lf[x] - lambda * lo_f[x]) <= 1e-10, "homogeneity violated");
            require(std::abs(hi_f[x] + lo_nf[x]) <= 1e-10, "conjugacy violated");
        }
        // non-expansiveness over three iterations
        numvec u = f, v = g;
        const double d0 = test::max_abs_diff(f, g);
        for (int k = 0; k < 3; ++k) {
            u = lower_envelope(c, u).values;
            v = lower_envelope(c, v).values;
            require(test::max_abs_diff(u, v) <= d0 + 1e-10, "non-expansiveness violated");
        }
    }

    // (d) hitting-system rewrite identity at 1e-12 — 500 cases
    SplitMix64 rng_d(99992);
    for (int rep = 0; rep < 500; ++rep) {
        const std::size_t n = 4 + rng_d.next_below(4);
        auto t = test::random_dense_matrix(n, rng_d);
        sizevec pool;
        for (std::size_t x = 1; x < n; ++x) pool.push_back(x);
        shuffle(pool, rng_d);
        pool.resize(rng_d.next_below(n - 1));
        StateSet s(n, pool);
        numvec f(n);
        for (std::size_t x = 0; x < n; ++x) f[x] = rng_d.next_double();
        f[0] = 1.0;
        for (std::size_t x : s.members()) f[x] = 0.0;
        const numvec tf = t.apply(f);
        numvec ind(n, 0.0);
        ind[0] = 1.0;
        const numvec t1a = t.apply(ind);
        for (std::size_t x = 1; x < n; ++x) {
            if (s.contains(x)) continue;
            double inner = 0;
            for (std::size_t y = 1; y < n; ++y)
                if (!s.contains(y)) inner += t(x, y) * f[y];
            require(std::abs(tf[x] - (inner + t1a[x])) <= 1e-12,
                    "rewrite identity violated");
        }
    }

    // (e) strict-contraction onset within 4N steps — 500 cases
    SplitMix64 rng_e(99993);
    for (int rep = 0; rep < 500; ++rep) {
        const std::size_t n = 4 + rng_e.next_below(4);
        auto t = test::random_sparse_matrix(n, 3, rng_e);
        TargetSet a(n, {0});
        auto c = cannot_reach_set(t, a);
        sizevec active;
        for (std::size_t x = 1; x < n; ++x)
            if (!c.contains(x)) active.push_back(x);
        if (active.empty()) continue;
        numvec v(active.size(), 1.0);
        bool contracted = false;
        for (std::size_t k = 1; k <= 4 * n && !contracted; ++k) {
            numvec next(v.size(), 0.0);
            for (std::size_t i = 0; i < active.size(); ++i)
                for (std::size_t j = 0; j < active.size(); ++j)
                    next[i] += t(active[i], active[j]) * v[j];
            v = std::move(next);
            contracted = true;
            for (double val : v)
                if (val >= 1.0) contracted = false;
        }
        require(contracted, "no strict contraction within 4N steps");
    }

    // (f) monotone traces: 250 instances, both solvers — 500 traces
    SplitMix64 rng_f(99994);
    for (int rep = 0; rep < 250; ++rep) {
        const std::size_t n = 3 + rng_f.next_below(4);
        auto c = test::random_vertex_credal(n, 3, 3, rng_f);
        TargetSet a(n, {rng_f.next_below(n)});
        SolveOptions opts;
        opts.record_trace = true;
        auto lo = lower_hitting(c, a, opts);
        auto hi = upper_hitting(c, a, opts);
        auto check = [&](const std::vector<numvec>& trace, bool increasing) {
            for (std::size_t k = 1; k < trace.size(); ++k) {
                bool changed = false;
                for (std::size_t x = 0; x < n; ++x) {
                    const double d = trace[k][x] - trace[k - 1][x];
                    require(increasing ? d >= -1e-12 : d <= 1e-12,
                            "trace not monotone");
                    changed = changed || std::abs(d) > 0;
                }
                if (k + 1 < trace.size()) require(changed, "interior iterate repeated");
            }
        };
        check(*lo.trace, false);
        check(*hi.trace, true);
    }

    // (g) monotone-path certificates — at least 500
    SplitMix64 rng_g(99995);
    int built = 0;
    while (built < 500) {
        const std::size_t n = 4 + rng_g.next_below(5);
        auto t = test::random_sparse_matrix(n, 3, rng_g);
        TargetSet a(n, {rng_g.next_below(n)});
        auto c = cannot_reach_set(t, a);
        auto p = hitting_probabilities(t, a).values;
        for (std::size_t x = 0; x < n; ++x) {
            if (a.contains(x) || c.contains(x)) continue;
            auto cert = monotone_path(t, a, x);
            ++built;
            require(cert.states.front() == x && a.contains(cert.states.back()),
                    "certificate endpoints wrong");
            sizevec sorted = cert.states;
            std::sort(sorted.begin(), sorted.end());
            require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                    "certificate path not simple");
            for (std::size_t i = 0; i + 1 < cert.states.size(); ++i) {
                require(t(cert.states[i], cert.states[i + 1]) > kSupportEps,
                        "certificate uses a zero edge");
                require(cert.values[i] <= cert.values[i + 1] + 1e-12,
                        "certificate values decrease");
            }
            for (std::size_t i = 0; i < cert.states.size(); ++i)
                require(std::abs(cert.values[i] - p[cert.states[i]]) <= 1e-12,
                        "certificate values are not the hitting probabilities");
        }
    }
    return ">=500 cases per property";
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion(1, "worst-case family", worst_case_family);
    criterion(2, "complete-graph 2-iteration", complete_graph_two_iterations);
    criterion(3, "oracle equivalence", oracle_equivalence);
    criterion(4, "sandwich property", sandwich_property);
    criterion(5, "Monte-Carlo consistency", monte_carlo_consistency);
    criterion(6, "reachability fixtures", reachability_fixtures);
    criterion(7, "zero-set exactness", zero_set_exactness);
    criterion(8, "iteration statistics", figure1_statistics);
    criterion(9, "propagation chain", propagation_chain);
    criterion(10, "property suites", property_suites);
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
