// Shared helpers for the test suites: random model builders and the
// independent oracles the expected values are computed with. Everything here
// stays clear of the implementation paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "imc/credal.hpp"
#include "imc/rng.hpp"
#include "imc/types.hpp"

namespace imc::test {

// Random stochastic row over a given support, embedded in dimension n.
inline numvec random_row(std::size_t n, const sizevec& support, SplitMix64& rng) {
    numvec w(n, 0.0);
    const numvec s = uniform_simplex(support.size(), rng);
    for (std::size_t i = 0; i < support.size(); ++i) w[support[i]] = s[i];
    return w;
}

// Dense random transition matrix; when a_direct > 0 every row puts at least
// that much mass on state 0 (used where geometric decay must be guaranteed).
inline TransitionMatrix random_dense_matrix(std::size_t n, SplitMix64& rng,
                                            double a_direct = 0.0) {
    std::vector<numvec> rows;
    for (std::size_t x = 0; x < n; ++x) {
        numvec w = uniform_simplex(n, rng);
        if (a_direct > 0.0) {
            for (double& v : w) v *= 1.0 - a_direct;
            w[0] += a_direct;
        }
        rows.push_back(std::move(w));
    }
    return TransitionMatrix::from_rows(rows);
}

// Random sparse-support transition matrix; rows draw a support of 1..max_deg
// states and a uniform distribution over it. Produces nontrivial C_T sets.
inline TransitionMatrix random_sparse_matrix(std::size_t n, std::size_t max_deg,
                                             SplitMix64& rng) {
    std::vector<numvec> rows;
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t deg = 1 + rng.next_below(max_deg);
        sizevec pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        shuffle(pool, rng);
        pool.resize(deg);
        std::sort(pool.begin(), pool.end());
        rows.push_back(random_row(n, pool, rng));
    }
    return TransitionMatrix::from_rows(rows);
}

// Random vertex-row credal set; per row 1..max_vertices vertices, each over
// its own random support of 1..max_deg states. Sparse supports make the
// trivial sets (and their witnesses) nontrivial.
inline CredalSet random_vertex_credal(std::size_t n, std::size_t max_vertices,
                                      std::size_t max_deg, SplitMix64& rng) {
    std::vector<CredalRow> rows;
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t m = 1 + rng.next_below(max_vertices);
        VertexRow vr;
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t deg = 1 + rng.next_below(max_deg);
            sizevec pool(n);
            for (std::size_t i = 0; i < n; ++i) pool[i] = i;
            shuffle(pool, rng);
            pool.resize(deg);
            std::sort(pool.begin(), pool.end());
            vr.vertices.emplace_back(random_row(n, pool, rng));
        }
        rows.push_back(std::move(vr));
    }
    return CredalSet(n, std::move(rows));
}

// Boolean reachability closure by explicit matrix powers: true iff some
// T^k(x, y) > 0 with k <= n. Independent of the BFS implementation.
inline bool power_reaches(const TransitionMatrix& t, std::size_t from, std::size_t to) {
    const std::size_t n = t.n_states();
    std::vector<std::vector<std::uint8_t>> pow(n, std::vector<std::uint8_t>(n, 0));
    for (std::size_t x = 0; x < n; ++x) pow[x][x] = 1; // k = 0
    if (pow[from][to]) return true;
    std::vector<std::vector<std::uint8_t>> step(n, std::vector<std::uint8_t>(n, 0));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) step[x][y] = t(x, y) > kSupportEps ? 1 : 0;
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<std::uint8_t>> next(n, std::vector<std::uint8_t>(n, 0));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t z = 0; z < n; ++z)
                if (pow[x][z])
                    for (std::size_t y = 0; y < n; ++y)
                        if (step[z][y]) next[x][y] = 1;
        pow = std::move(next);
        if (pow[from][to]) return true;
    }
    return false;
}

// C_T by a pairwise reaches() scan over matrix powers.
inline sizevec power_cannot_reach(const TransitionMatrix& t, const sizevec& target) {
    sizevec out;
    for (std::size_t x = 0; x < t.n_states(); ++x) {
        if (std::find(target.begin(), target.end(), x) != target.end()) continue;
        bool any = false;
        for (std::size_t y : target)
            if (power_reaches(t, x, y)) {
                any = true;
                break;
            }
        if (!any) out.push_back(x);
    }
    return out;
}

inline double max_abs_diff(const numvec& a, const numvec& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

} // namespace imc::test
