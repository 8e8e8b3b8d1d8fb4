#pragma once

#include "imc/types.hpp"

namespace imc {

/**
 * Hitting probabilities of a single transition matrix: 1 on A, 0 exactly on
 * C_T, and the restricted linear-system solution elsewhere. Satisfies
 * p = 1_A + 1_{A^c} (T p) within the residual tolerance.
 */
struct HittingVector {
    numvec values;
};

/// Simple path to the target along positive entries with nondecreasing
/// hitting probabilities.
struct PathCertificate {
    sizevec states;
    numvec values;
};

/**
 * Unique solution of (I - T|_{A^c \ S}) x = rhs via dense LU with partial
 * pivoting. S must contain C_T and be a proper subset of A^c; rhs lives on
 * A^c \ S. A pivot below 1e-12 signals a violated precondition or a
 * degenerate input and raises SolverError.
 */
ValueFunction fundamental_solve(const TransitionMatrix& t, const TargetSet& a,
                                const StateSet& s, const ValueFunction& rhs);

HittingVector hitting_probabilities(const TransitionMatrix& t, const TargetSet& a);

/**
 * Hitting probabilities when the set of hitting-probability-zero states is
 * already known to equal C_T (reused by the credal solvers, which maintain
 * that set across iterations). The post-solve residual check catches callers
 * whose zero set is wrong.
 */
HittingVector hitting_with_zero_set(const TransitionMatrix& t, const TargetSet& a,
                                    const StateSet& zero,
                                    double residual_tol = kResidualTol);

/// max_x | p(x) - (1_A(x) + 1_{A^c}(x) [T p](x)) |
double hitting_residual(const TransitionMatrix& t, const TargetSet& a, const numvec& p);

/**
 * Certificate path from x to A along entries above kSupportEps whose hitting
 * probabilities never decrease. x must lie outside both A and C_T.
 */
PathCertificate monotone_path(const TransitionMatrix& t, const TargetSet& a, std::size_t x);

} // namespace imc
