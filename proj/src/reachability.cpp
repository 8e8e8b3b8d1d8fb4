#include "imc/reachability.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "imc/errors.hpp"
#include "imc/markov.hpp"

namespace imc {

namespace {

void check_spaces(const CredalSet& c, std::size_t n_other, const char* who) {
    if (c.n_states() != n_other)
        throw std::invalid_argument(std::string(who) + ": mismatched state spaces");
}

// Grows D_0 = A to its fixpoint; `grows` decides membership of a candidate
// state given the current set. Returns the chain D_0 .. D_{k*}.
template <class Grows>
std::vector<StateSet> grow_chain(std::size_t n, const TargetSet& a, Grows grows) {
    std::vector<StateSet> chain;
    chain.emplace_back(n, a.members());
    for (;;) {
        const StateSet& d = chain.back();
        sizevec next = d.members();
        for (std::size_t z = 0; z < n; ++z)
            if (!d.contains(z) && grows(z, d)) next.push_back(z);
        if (next.size() == d.size()) break;
        chain.emplace_back(n, std::move(next));
    }
    return chain;
}

} // namespace

ReachabilityReport upper_reach_report(const CredalSet& c, const TargetSet& a) {
    const std::size_t n = c.n_states();
    check_spaces(c, a.n_states(), "upper_reach_report");
    auto chain = grow_chain(n, a, [&](std::size_t z, const StateSet& d) {
        for (std::size_t y : c.row_support(z))
            if (d.contains(y)) return true;
        return false;
    });
    StateSet reached = chain.back();
    sizevec zero;
    for (std::size_t x = 0; x < n; ++x)
        if (!reached.contains(x)) zero.push_back(x);
    StateSet trivial(n, std::move(zero));
    sizevec rest;
    for (std::size_t x = 0; x < n; ++x)
        if (!a.contains(x) && !trivial.contains(x)) rest.push_back(x);
    return ReachabilityReport{ReachMode::upper, a,         std::move(chain),
                              trivial,          StateSet(n, std::move(rest)),
                              center_matrix(c)};
}

ReachabilityReport lower_reach_report(const CredalSet& c, const TargetSet& a) {
    const std::size_t n = c.n_states();
    check_spaces(c, a.n_states(), "lower_reach_report");
    auto chain = grow_chain(n, a, [&](std::size_t z, const StateSet& d) {
        return lower_mass_positive(c, z, d);
    });
    const StateSet& reached = chain.back();
    sizevec zero;
    for (std::size_t x = 0; x < n; ++x)
        if (!reached.contains(x)) zero.push_back(x);
    StateSet trivial(n, std::move(zero));

    // Witness: on trivial states the extreme point carrying least mass into
    // the reached set (zero, by termination of the fixpoint); center rows
    // elsewhere.
    const TransitionMatrix center = center_matrix(c);
    std::vector<ProbabilityRow> rows;
    rows.reserve(n);
    for (std::size_t x = 0; x < n; ++x) {
        if (!trivial.contains(x)) {
            rows.emplace_back(center.row_copy(x));
            continue;
        }
        double best = 2.0;
        std::size_t idx = 0;
        for (std::size_t k = 0; k < c.extreme_count(x); ++k) {
            const ProbabilityRow v = c.extreme_point(x, k);
            double mass = 0.0;
            for (std::size_t y : reached.members()) mass += v[y];
            if (mass < best) {
                best = mass;
                idx = k;
            }
        }
        if (best > kSupportEps)
            throw SolverError("lower_reach_report: no disconnecting extreme point for a "
                              "trivial state; fixpoint inconsistent");
        rows.push_back(c.extreme_point(x, idx));
    }
    sizevec rest;
    for (std::size_t x = 0; x < n; ++x)
        if (!a.contains(x) && !trivial.contains(x)) rest.push_back(x);
    return ReachabilityReport{ReachMode::lower,
                              a,
                              std::move(chain),
                              trivial,
                              StateSet(n, std::move(rest)),
                              TransitionMatrix(std::move(rows))};
}

bool lr3_holds(const CredalSet& c, const StateSet& d, std::size_t x) {
    const std::size_t n = c.n_states();
    check_spaces(c, d.n_states(), "lr3_holds");
    if (d.empty()) throw std::invalid_argument("lr3_holds: D must be nonempty");
    if (x >= n) throw std::out_of_range("lr3_holds: state index out of range");

    auto key_of = [n](const StateSet& s) {
        std::string key(n, '0');
        for (std::size_t y : s.members()) key[y] = '1';
        return key;
    };

    StateSet current = d;
    std::unordered_set<std::string> seen;
    for (;;) {
        if (current.contains(x)) return true;
        if (!seen.insert(key_of(current)).second) return false; // cycle: never positive at x
        if (current.empty()) return false;
        sizevec next;
        for (std::size_t z = 0; z < n; ++z)
            if (lower_mass_positive(c, z, current)) next.push_back(z);
        current = StateSet(n, std::move(next));
    }
}

std::optional<std::size_t> lr2_minimal_n(const CredalSet& c, const StateSet& d,
                                         std::size_t x, std::size_t n_cap,
                                         std::size_t combo_limit) {
    const std::size_t n = c.n_states();
    check_spaces(c, d.n_states(), "lr2_minimal_n");
    if (d.empty()) throw std::invalid_argument("lr2_minimal_n: D must be nonempty");
    if (x >= n) throw std::out_of_range("lr2_minimal_n: state index out of range");
    if (n_cap < 1) throw std::invalid_argument("lr2_minimal_n: n_cap must be at least 1");
    if (d.contains(x)) return 0;

    std::vector<std::vector<sizevec>> supports(n);
    std::size_t combos = 1;
    for (std::size_t z = 0; z < n; ++z) {
        supports[z] = c.row_vertex_supports(z);
        if (combos > combo_limit / supports[z].size())
            throw CapacityError("lr2_minimal_n: vertex-support combinations exceed limit " +
                                std::to_string(combo_limit));
        combos *= supports[z].size();
    }

    // Walk lengths n with [T^n 1_D](x) > 0 depend only on the row supports,
    // and every matrix in the set dominates some single-vertex support
    // assignment, so intersecting over assignments is exact.
    std::vector<std::uint8_t> feasible(n_cap + 1, 1);
    feasible[0] = 0; // x is outside D
    sizevec pick(n, 0);
    for (;;) {
        std::vector<std::uint8_t> here(n_cap + 1, 0);
        std::vector<std::uint8_t> frontier(n, 0);
        frontier[x] = 1;
        for (std::size_t step = 1; step <= n_cap; ++step) {
            std::vector<std::uint8_t> next(n, 0);
            for (std::size_t z = 0; z < n; ++z) {
                if (!frontier[z]) continue;
                for (std::size_t y : supports[z][pick[z]]) next[y] = 1;
            }
            frontier = std::move(next);
            for (std::size_t y : d.members())
                if (frontier[y]) {
                    here[step] = 1;
                    break;
                }
        }
        bool any = false;
        for (std::size_t k = 0; k <= n_cap; ++k) {
            feasible[k] = feasible[k] && here[k];
            any = any || feasible[k];
        }
        if (!any) return std::nullopt;

        // next assignment (mixed-radix odometer)
        std::size_t z = 0;
        while (z < n && ++pick[z] == supports[z].size()) pick[z++] = 0;
        if (z == n) break;
    }
    for (std::size_t k = 0; k <= n_cap; ++k)
        if (feasible[k]) return k;
    return std::nullopt;
}

bool closed_set_check(const CredalSet& c, const StateSet& d) {
    check_spaces(c, d.n_states(), "closed_set_check");
    for (std::size_t x : d.members())
        for (std::size_t y : c.row_support(x))
            if (!d.contains(y)) return false;
    return true;
}

} // namespace imc
