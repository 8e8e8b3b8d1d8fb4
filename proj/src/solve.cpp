#include "imc/solve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "imc/errors.hpp"
#include "imc/markov.hpp"
#include "imc/rng.hpp"

namespace imc {

namespace {

// Residual of the nonlinear fixed point p = 1_A + 1_{A^c} (envelope p),
// given the envelope values at p.
double envelope_residual(const TargetSet& a, const numvec& p, const numvec& env_values) {
    double worst = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) {
        const double want = a.contains(x) ? 1.0 : env_values[x];
        worst = std::max(worst, std::abs(p[x] - want));
    }
    return worst;
}

double row_value(const TransitionMatrix& t, std::size_t x, const numvec& p) {
    const auto row = t.row(x);
    double acc = 0.0;
    for (std::size_t y = 0; y < p.size(); ++y) acc += row[y] * p[y];
    return acc;
}

// Per-row state of the alternating iteration: the chosen extreme point, or
// nullopt for a row still kept from the starting matrix. The upper solver's
// row-keeping rule applies from the very first iteration, where the current
// row is the interior starting row and not representable as a selection.
using RowChoices = std::vector<std::optional<std::size_t>>;

SolveResult run_alternating(Bound mode, const CredalSet& c, const TargetSet& a,
                            const SolveOptions& opts) {
    const std::size_t n = c.n_states();
    if (a.n_states() != n)
        throw std::invalid_argument("hitting solve: mismatched state spaces");
    if (!(opts.residual_tol > 0.0))
        throw std::invalid_argument("hitting solve: residual_tol must be positive");
    const std::size_t max_iters =
        opts.max_iterations > 0 ? opts.max_iterations : 10 * n + 100;

    const ReachabilityReport report = mode == Bound::lower ? lower_reach_report(c, a)
                                                           : upper_reach_report(c, a);
    const StateSet& zero = report.trivial_zero;

    TransitionMatrix t = report.witness;
    RowChoices chosen(n); // all rows start as kept starting rows
    bool comparable = false; // the choices reflect a previous selection step
    if (opts.initial_selection) {
        const ExtremeSelection& init = *opts.initial_selection;
        if (init.choice.size() != n)
            throw std::invalid_argument("hitting solve: initial selection has wrong size");
        t = materialize(c, init);
        if (!(cannot_reach_set(t, a) == zero))
            throw std::invalid_argument(
                "hitting solve: initial selection does not preserve the trivial zero set");
        for (std::size_t x = 0; x < n; ++x) chosen[x] = init.choice[x];
        comparable = true;
    }

    std::vector<numvec> trace;
    for (std::size_t iter = 1; iter <= max_iters; ++iter) {
        const HittingVector p = hitting_with_zero_set(t, a, zero, opts.residual_tol);
        if (opts.record_trace) {
            trace.push_back(p.values);
            if (!(cannot_reach_set(t, a) == zero))
                throw SolverError("hitting solve: C_T drifted away from the trivial zero "
                                  "set at iteration " + std::to_string(iter));
        }
        const Envelope env = mode == Bound::lower ? lower_envelope(c, p.values)
                                                  : upper_envelope(c, p.values);
        RowChoices next(n);
        if (mode == Bound::lower) {
            for (std::size_t x = 0; x < n; ++x) next[x] = env.witness.choice[x];
        } else {
            // keep any row that already attains the envelope value
            for (std::size_t x = 0; x < n; ++x)
                next[x] = row_value(t, x, p.values) >= env.values[x] - kTieTol
                              ? chosen[x]
                              : std::optional(env.witness.choice[x]);
        }
        const bool stable = comparable && next == chosen;
        comparable = true; // from now on the choices reflect an envelope pass
        if (stable) {
            const double res = envelope_residual(a, p.values, env.values);
            if (res > opts.residual_tol)
                throw SolverError("hitting solve: converged selection but fixed-point "
                                  "residual " + std::to_string(res) + " exceeds tolerance");
            ExtremeSelection final_sel{sizevec(n)};
            for (std::size_t x = 0; x < n; ++x)
                final_sel.choice[x] = next[x] ? *next[x] : env.witness.choice[x];
            return SolveResult{mode,
                               p,
                               iter,
                               std::move(final_sel),
                               res,
                               opts.record_trace ? std::optional(std::move(trace))
                                                 : std::nullopt};
        }
        std::vector<ProbabilityRow> rows;
        rows.reserve(n);
        for (std::size_t x = 0; x < n; ++x)
            rows.push_back(next[x] ? c.extreme_point(x, *next[x])
                                   : ProbabilityRow(t.row_copy(x)));
        t = TransitionMatrix(std::move(rows));
        chosen = std::move(next);
    }
    throw ConvergenceError("hitting solve: extreme-point selection did not stabilise "
                           "within " + std::to_string(max_iters) + " iterations",
                           max_iters, std::move(trace));
}

} // namespace

SolveResult lower_hitting(const CredalSet& c, const TargetSet& a, const SolveOptions& opts) {
    return run_alternating(Bound::lower, c, a, opts);
}

SolveResult upper_hitting(const CredalSet& c, const TargetSet& a, const SolveOptions& opts) {
    return run_alternating(Bound::upper, c, a, opts);
}

bool sandwich_check(const CredalSet& c, const TargetSet& a, std::size_t samples,
                    std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("sandwich_check: samples must be positive");
    const std::size_t n = c.n_states();
    const numvec lo = lower_hitting(c, a).probabilities.values;
    const numvec hi = upper_hitting(c, a).probabilities.values;

    SplitMix64 root(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        SplitMix64 rng = root.split(s);
        std::vector<ProbabilityRow> rows;
        rows.reserve(n);
        for (std::size_t x = 0; x < n; ++x) {
            const std::size_t m = c.extreme_count(x);
            const numvec w = uniform_simplex(m, rng);
            numvec row(n, 0.0);
            for (std::size_t k = 0; k < m; ++k) {
                const ProbabilityRow v = c.extreme_point(x, k);
                for (std::size_t y = 0; y < n; ++y) row[y] += w[k] * v[y];
            }
            rows.emplace_back(std::move(row));
        }
        const TransitionMatrix t(std::move(rows));
        const numvec p = hitting_probabilities(t, a).values;
        for (std::size_t x = 0; x < n; ++x) {
            if (p[x] < lo[x] - kResidualTol || p[x] > hi[x] + kResidualTol)
                throw SolverError("sandwich_check: sampled matrix " + std::to_string(s) +
                                  " violates the bounds at state " + std::to_string(x) +
                                  " (p=" + std::to_string(p[x]) + ", bounds [" +
                                  std::to_string(lo[x]) + ", " + std::to_string(hi[x]) +
                                  "])");
        }
    }
    return true;
}

} // namespace imc
