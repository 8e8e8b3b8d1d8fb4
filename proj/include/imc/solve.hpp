#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "imc/credal.hpp"
#include "imc/hitting.hpp"
#include "imc/reachability.hpp"
#include "imc/types.hpp"

namespace imc {

enum class Bound { lower, upper };

struct SolveOptions {
    double residual_tol = kResidualTol;
    /// 0 means the default 10 N + 100. Exceeding the cap is an anomaly worth
    /// inspecting, not something to tolerate silently.
    std::size_t max_iterations = 0;
    bool record_trace = false;
    /// Optional starting vertex matrix. It must preserve the trivial zero
    /// set (C_T equal to it); the worst-case family is driven from its first
    /// vertex this way.
    std::optional<ExtremeSelection> initial_selection;
};

struct SolveResult {
    Bound mode;
    HittingVector probabilities;
    std::size_t iterations;
    ExtremeSelection final_selection;
    double residual;
    std::optional<std::vector<numvec>> trace;
};

/**
 * Lower hitting probabilities (inf over all matrices of the credal set).
 * Starts from the lower-reachability witness and alternates restricted
 * solves with lower-envelope extreme-point selection until the selection
 * repeats.
 */
SolveResult lower_hitting(const CredalSet& c, const TargetSet& a,
                          const SolveOptions& opts = {});

/**
 * Upper hitting probabilities (sup over the credal set). Starts from the
 * center matrix and applies the row-keeping tiebreak: a row that already
 * attains the envelope value is never replaced, which prevents oscillation
 * to disconnecting selections.
 */
SolveResult upper_hitting(const CredalSet& c, const TargetSet& a,
                          const SolveOptions& opts = {});

/**
 * Draws `samples` random matrices from the credal set (random convex
 * combinations of row extreme points) and checks that every precise hitting
 * vector lies between the lower and upper bounds, within 1e-9 componentwise.
 * Throws SolverError naming the offending state on violation.
 */
bool sandwich_check(const CredalSet& c, const TargetSet& a, std::size_t samples,
                    std::uint64_t seed);

} // namespace imc
