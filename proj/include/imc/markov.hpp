#pragma once

#include <Eigen/Dense>

#include "imc/types.hpp"

namespace imc {

/// f restricted to S; S must be a nonempty subset of f's carrier.
ValueFunction restrict_function(const ValueFunction& f, const StateSet& s);

/// g extended by zero from its carrier to the superset.
ValueFunction extend_function(const ValueFunction& g, const StateSet& superset);

/**
 * Restriction of a transition matrix to a subset S: the |S|x|S| submatrix.
 * Applying it to g equals restricting T (g extended by zero to the full
 * space) back to S.
 */
struct RestrictedMatrix {
    StateSet states;
    Eigen::MatrixXd block;

    ValueFunction apply(const ValueFunction& g) const;
};

RestrictedMatrix restrict_matrix(const TransitionMatrix& t, const StateSet& s);

/**
 * True iff a directed path of entries above kSupportEps connects `from` to
 * `to`. By the zero-step convention, reaches(x, x) is true.
 */
bool reaches(const TransitionMatrix& t, std::size_t from, std::size_t to);

/// C_T: the states of A^c from which no member of A is reachable.
StateSet cannot_reach_set(const TransitionMatrix& t, const TargetSet& a);

} // namespace imc
