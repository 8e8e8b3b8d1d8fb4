#pragma once

#include <cstdint>

#include "imc/instance.hpp"

namespace imc {

/**
 * Random benchmark instance: target {0}, state N-1 an absorbing trap, a
 * random tree rooted at the target (so every other state can upper-reach
 * it), and independent extra edges from each ordinary state to any other
 * state with probability (lambda-1)/(N-1), which puts the mean out-degree
 * of ordinary states at lambda. The trap keeps only its self-loop, so
 * hitting probabilities stay below one once some edge feeds it.
 *
 * eps_contam attaches an epsilon-contaminated base sampled uniformly on
 * each row's edge simplex, contamination restricted to the row's edges;
 * vertex_hull samples one vertex per outgoing edge uniformly from the edge
 * simplex.
 */
InstanceSpec gen_random_instance(std::size_t n, double lambda, CredalModel model,
                                 double epsilon, std::uint64_t seed);

/**
 * Three-state family on which the upper solver must cycle through all m
 * extreme points: row 0 has vertices (1 - 1/n - 1/n^2, 1/n, 1/n^2) for
 * n = 2^k, k = 1..m; the other rows are absorbing; the target is {1}.
 */
InstanceSpec worst_case_instance(std::size_t m);

/**
 * Chain of N interval rows feeding a 50/50 splitter and an absorbing trap;
 * information about the profitable direction propagates backward one node
 * per iteration, so the upper solver needs about N iterations. Requires
 * (1/2)^(1/N) < b < 1.
 */
InstanceSpec propagation_chain_instance(std::size_t n, double b);

/// The example1 / example2 / tiebreak instances, exactly as printed.
InstanceSpec fixture(Family name);

/// Rebuilds an instance from its generator metadata; byte-identical to the
/// original for equal parameters and seed.
InstanceSpec regenerate(const GeneratorMeta& meta, std::size_t states);

} // namespace imc
