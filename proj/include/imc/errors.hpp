#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace imc {

/// Numerical failure inside a linear solve, or a solver precondition that
/// turned out to be violated (e.g. a singular restricted system).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured work limit was exceeded (e.g. too many vertex-matrix
/// combinations to enumerate).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The iterative solver hit its iteration cap before the extreme-point
/// selection stabilised. Carries the recorded iterates for inspection.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::size_t iterations,
                     std::vector<std::vector<double>> trace)
        : std::runtime_error(what), iterations(iterations), trace(std::move(trace)) {}

    std::size_t iterations;
    std::vector<std::vector<double>> trace;
};

} // namespace imc
