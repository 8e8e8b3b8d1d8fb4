#include "imc/hitting.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>

#include "imc/errors.hpp"
#include "imc/markov.hpp"

namespace imc {

namespace {

constexpr double kPivotTol = 1e-12;

// Solves (I - T|_active) x = rhs by LU with partial pivoting.
numvec solve_block(const TransitionMatrix& t, const sizevec& active, const numvec& rhs) {
    const Eigen::Index k = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            m(i, j) -= t(active[static_cast<std::size_t>(i)],
                         active[static_cast<std::size_t>(j)]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    const Eigen::VectorXd diag = lu.matrixLU().diagonal();
    for (Eigen::Index i = 0; i < k; ++i)
        if (std::abs(diag(i)) < kPivotTol)
            throw SolverError(
                "fundamental solve: pivot below 1e-12; the restricted system is "
                "numerically singular (violated precondition or degenerate input)");
    Eigen::Map<const Eigen::VectorXd> b(rhs.data(), k);
    Eigen::VectorXd x = lu.solve(b);
    return numvec(x.data(), x.data() + x.size());
}

sizevec active_states(const TargetSet& a, const StateSet& s) {
    sizevec active;
    for (std::size_t x = 0; x < a.n_states(); ++x)
        if (!a.contains(x) && !s.contains(x)) active.push_back(x);
    return active;
}

} // namespace

ValueFunction fundamental_solve(const TransitionMatrix& t, const TargetSet& a,
                                const StateSet& s, const ValueFunction& rhs) {
    const std::size_t n = t.n_states();
    if (a.n_states() != n || s.n_states() != n)
        throw std::invalid_argument("fundamental_solve: mismatched state spaces");
    for (std::size_t x : s.members())
        if (a.contains(x))
            throw std::invalid_argument("fundamental_solve: S must be contained in A^c");
    const sizevec active = active_states(a, s);
    if (active.empty())
        throw std::invalid_argument("fundamental_solve: S must be a proper subset of A^c");
    const StateSet active_set(n, active);
    if (!(rhs.carrier() == active_set))
        throw std::invalid_argument("fundamental_solve: rhs must live on A^c \\ S");
    numvec x = solve_block(t, active, rhs.values());
    return ValueFunction(active_set, std::move(x));
}

double hitting_residual(const TransitionMatrix& t, const TargetSet& a, const numvec& p) {
    const numvec tp = t.apply(p);
    double worst = 0.0;
    for (std::size_t x = 0; x < t.n_states(); ++x) {
        const double want = a.contains(x) ? 1.0 : tp[x];
        worst = std::max(worst, std::abs(p[x] - want));
    }
    return worst;
}

HittingVector hitting_with_zero_set(const TransitionMatrix& t, const TargetSet& a,
                                    const StateSet& zero, double residual_tol) {
    const std::size_t n = t.n_states();
    numvec p(n, 0.0);
    for (std::size_t x : a.members()) p[x] = 1.0;
    const sizevec active = active_states(a, zero);
    if (!active.empty()) {
        numvec rhs(active.size(), 0.0);
        for (std::size_t i = 0; i < active.size(); ++i) {
            double acc = 0.0;
            for (std::size_t y : a.members()) acc += t(active[i], y);
            rhs[i] = acc;
        }
        const numvec x = solve_block(t, active, rhs);
        for (std::size_t i = 0; i < active.size(); ++i) p[active[i]] = x[i];
    }
    const double res = hitting_residual(t, a, p);
    if (res > residual_tol)
        throw SolverError("hitting probabilities: post-solve residual " +
                          std::to_string(res) + " exceeds tolerance (zero set " +
                          "does not match C_T, or the system is ill-conditioned)");
    for (double& v : p) v = std::min(1.0, std::max(0.0, v));
    return HittingVector{std::move(p)};
}

HittingVector hitting_probabilities(const TransitionMatrix& t, const TargetSet& a) {
    return hitting_with_zero_set(t, a, cannot_reach_set(t, a), kResidualTol);
}

namespace {

// Probability values closer than this are treated as one level when walking
// the certificate path; LU solves agree to far better than this on equal
// values.
constexpr double kLevelTol = 1e-12;

} // namespace

PathCertificate monotone_path(const TransitionMatrix& t, const TargetSet& a, std::size_t x) {
    const std::size_t n = t.n_states();
    if (x >= n) throw std::out_of_range("monotone_path: state index out of range");
    if (a.contains(x)) throw std::domain_error("monotone_path: start state lies in A");
    const StateSet blocked = cannot_reach_set(t, a);
    if (blocked.contains(x))
        throw std::domain_error("monotone_path: start state cannot reach A");

    const numvec p = hitting_probabilities(t, a).values;

    // Climb through equal-value regions: breadth-first search the states at
    // the current level, then leave through the best exit edge (largest
    // target value, then shortest distance, then lowest indices). Values
    // strictly increase per climb, so no state repeats.
    PathCertificate cert;
    cert.states.push_back(x);
    cert.values.push_back(p[x]);
    std::vector<std::uint8_t> visited(n, 0);

    std::size_t cur = x;
    while (!a.contains(cur)) {
        const double level = p[cur];
        std::vector<std::size_t> parent(n, std::numeric_limits<std::size_t>::max());
        std::vector<std::size_t> dist(n, std::numeric_limits<std::size_t>::max());
        std::deque<std::size_t> queue;
        queue.push_back(cur);
        dist[cur] = 0;

        struct Exit {
            double target_value;
            std::size_t distance;
            std::size_t target;
            std::size_t via;
        };
        std::optional<Exit> best;

        auto consider = [&](std::size_t via, std::size_t y) {
            Exit e{p[y], dist[via], y, via};
            if (!best || e.target_value > best->target_value + kLevelTol ||
                (e.target_value > best->target_value - kLevelTol &&
                 (e.distance < best->distance ||
                  (e.distance == best->distance &&
                   (e.target < best->target ||
                    (e.target == best->target && e.via < best->via))))))
                best = e;
        };

        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            const auto row = t.row(u);
            for (std::size_t y = 0; y < n; ++y) {
                if (!(row[y] > kSupportEps) || y == u) continue;
                if (a.contains(y) || p[y] > level + kLevelTol) {
                    consider(u, y);
                } else if (std::abs(p[y] - level) <= kLevelTol && !visited[y] &&
                           dist[y] == std::numeric_limits<std::size_t>::max()) {
                    dist[y] = dist[u] + 1;
                    parent[y] = u;
                    queue.push_back(y);
                }
            }
        }
        if (!best)
            throw SolverError("monotone_path: no exit from an equal-value region; "
                              "hitting probabilities are inconsistent");

        // Unwind the region path cur -> via, then step across the exit edge.
        sizevec segment;
        for (std::size_t u = best->via; u != cur; u = parent[u]) segment.push_back(u);
        std::reverse(segment.begin(), segment.end());
        for (std::size_t u : segment) {
            cert.states.push_back(u);
            cert.values.push_back(p[u]);
        }
        cert.states.push_back(best->target);
        cert.values.push_back(p[best->target]);

        for (std::size_t u : segment) visited[u] = 1;
        visited[cur] = 1;
        cur = best->target;
    }
    return cert;
}

} // namespace imc
