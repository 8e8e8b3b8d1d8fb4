#include "imc/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "imc/errors.hpp"
#include "imc/markov.hpp"
#include "imc/rng.hpp"

namespace imc {

McEstimate simulate_hitting(const TransitionMatrix& t, const TargetSet& a,
                            std::size_t start, const McConfig& cfg) {
    const std::size_t n = t.n_states();
    if (a.n_states() != n)
        throw std::invalid_argument("simulate_hitting: mismatched state spaces");
    if (start >= n) throw std::out_of_range("simulate_hitting: start state out of range");
    if (cfg.trials == 0) throw std::invalid_argument("simulate_hitting: trials must be positive");
    if (cfg.horizon == 0) throw std::invalid_argument("simulate_hitting: horizon must be positive");

    const StateSet blocked = cannot_reach_set(t, a);
    std::vector<numvec> rows(n);
    for (std::size_t x = 0; x < n; ++x) rows[x] = t.row_copy(x);

    std::size_t hits = 0;
    std::size_t wandering = 0;
    const SplitMix64 root(cfg.seed);
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        SplitMix64 rng = root.split(trial);
        std::size_t pos = start;
        if (a.contains(pos)) {
            ++hits;
            continue;
        }
        if (blocked.contains(pos)) continue;
        bool resolved = false;
        for (std::size_t step = 0; step < cfg.horizon; ++step) {
            pos = sample_categorical(rows[pos], rng);
            if (a.contains(pos)) {
                ++hits;
                resolved = true;
                break;
            }
            if (blocked.contains(pos)) { // definite miss, stop early
                resolved = true;
                break;
            }
        }
        if (!resolved) ++wandering;
    }
    const double trials = static_cast<double>(cfg.trials);
    const double est = static_cast<double>(hits) / trials;
    return McEstimate{est, std::sqrt(est * (1.0 - est) / trials),
                      static_cast<double>(wandering) / trials};
}

BruteBounds brute_force_bounds(const CredalSet& c, const TargetSet& a,
                               std::size_t combo_limit) {
    const std::size_t n = c.n_states();
    if (a.n_states() != n)
        throw std::invalid_argument("brute_force_bounds: mismatched state spaces");
    const std::size_t total = c.combination_count();
    if (total > combo_limit)
        throw CapacityError("brute_force_bounds: " + std::to_string(total) +
                            " vertex matrices exceed the limit " +
                            std::to_string(combo_limit));

    numvec lo(n, 2.0), hi(n, -1.0);
    ExtremeSelection sel;
    sel.choice.assign(n, 0);
    for (;;) {
        const TransitionMatrix t = materialize(c, sel);
        const numvec p = hitting_probabilities(t, a).values;
        for (std::size_t x = 0; x < n; ++x) {
            lo[x] = std::min(lo[x], p[x]);
            hi[x] = std::max(hi[x], p[x]);
        }
        std::size_t z = 0;
        while (z < n && ++sel.choice[z] == c.extreme_count(z)) sel.choice[z++] = 0;
        if (z == n) break;
    }
    return BruteBounds{HittingVector{std::move(lo)}, HittingVector{std::move(hi)}, total};
}

} // namespace imc
