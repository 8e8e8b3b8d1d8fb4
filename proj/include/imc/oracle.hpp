#pragma once

#include <cstdint>

#include "imc/credal.hpp"
#include "imc/hitting.hpp"
#include "imc/types.hpp"

namespace imc {

struct McConfig {
    std::size_t trials;
    std::size_t horizon;
    std::uint64_t seed;
};

struct McEstimate {
    double estimate;
    double std_error;
    /// Fraction of trials still outside A u C_T at the horizon; reported so
    /// callers can judge the truncation bias of this finite-horizon estimate.
    double survival;
};

/**
 * Monte-Carlo estimate of the probability of hitting A from `start` within
 * the horizon. Trials entering C_T exit early as definite misses. Streams
 * are split per trial index, so the result is bit-identical for a given
 * seed regardless of evaluation order.
 */
McEstimate simulate_hitting(const TransitionMatrix& t, const TargetSet& a,
                            std::size_t start, const McConfig& cfg);

struct BruteBounds {
    HittingVector lower;
    HittingVector upper;
    std::size_t combinations;
};

/**
 * Componentwise min and max of the precise hitting vectors over every
 * vertex matrix of the credal set. Valid as an oracle for the credal bounds
 * because the iterative algorithms terminate at vertex matrices for
 * finitely generated rows. Throws CapacityError when the number of vertex
 * matrices exceeds combo_limit.
 */
BruteBounds brute_force_bounds(const CredalSet& c, const TargetSet& a,
                               std::size_t combo_limit = 100000);

} // namespace imc
