#pragma once

#include <optional>
#include <vector>

#include "imc/credal.hpp"
#include "imc/types.hpp"

namespace imc {

enum class ReachMode { lower, upper };

/**
 * Partition of the state space by reachability of the target: the chain
 * D_0 = A, D_1, ... grown to its fixpoint, the trivially-zero states (states
 * that cannot lower/upper reach A), the remaining nontrivial states, and a
 * witness matrix T in the credal set with C_T equal to the trivial set.
 */
struct ReachabilityReport {
    ReachMode mode;
    TargetSet target;
    std::vector<StateSet> chain;
    StateSet trivial_zero;
    StateSet nontrivial;
    TransitionMatrix witness;
};

/// Upper reachability: states with no possible-edge path to A cannot upper
/// reach it. The witness is the center matrix.
ReachabilityReport upper_reach_report(const CredalSet& c, const TargetSet& a);

/**
 * Lower reachability via the (LR1) fixpoint
 * D_{k+1} = D_k u {z : [T 1_{D_k}](z) > 0 under the lower envelope}. The
 * witness uses the disconnecting extreme point on the trivial states and the
 * center row elsewhere.
 */
ReachabilityReport lower_reach_report(const CredalSet& c, const TargetSet& a);

/**
 * Exact decision of (LR3): does [T^n 1_D](x) stay positive under the lower
 * envelope for some n? Decided by iterating supports,
 * S_{n+1} = {z : every extreme point of row z touches S_n}, with cycle
 * detection over the visited support sets.
 */
bool lr3_holds(const CredalSet& c, const StateSet& d, std::size_t x);

/**
 * Least n <= n_cap such that every matrix in the credal set admits a
 * length-n walk from x into D, or nullopt when no such n exists below the
 * cap. Decided by enumerating one vertex support per row (the minimal
 * achievable supports), which is exact for finitely generated rows.
 * Throws CapacityError when the assignment count exceeds combo_limit.
 */
std::optional<std::size_t> lr2_minimal_n(const CredalSet& c, const StateSet& d,
                                         std::size_t x, std::size_t n_cap,
                                         std::size_t combo_limit = 100000);

/// True iff no possible edge leaves D.
bool closed_set_check(const CredalSet& c, const StateSet& d);

} // namespace imc
