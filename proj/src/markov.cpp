#include "imc/markov.hpp"

#include <stdexcept>
#include <vector>

namespace imc {

ValueFunction restrict_function(const ValueFunction& f, const StateSet& s) {
    if (s.empty()) throw std::domain_error("restrict_function: empty subset");
    if (!s.is_subset_of(f.carrier()))
        throw std::domain_error("restrict_function: subset not contained in carrier");
    numvec out;
    out.reserve(s.size());
    for (std::size_t x : s.members()) out.push_back(f.at(x));
    return ValueFunction(s, std::move(out));
}

ValueFunction extend_function(const ValueFunction& g, const StateSet& superset) {
    if (!g.carrier().is_subset_of(superset))
        throw std::domain_error("extend_function: carrier not contained in superset");
    numvec out;
    out.reserve(superset.size());
    for (std::size_t x : superset.members())
        out.push_back(g.carrier().contains(x) ? g.at(x) : 0.0);
    return ValueFunction(superset, std::move(out));
}

ValueFunction RestrictedMatrix::apply(const ValueFunction& g) const {
    if (!(g.carrier() == states))
        throw std::domain_error("RestrictedMatrix::apply: carrier mismatch");
    Eigen::Map<const Eigen::VectorXd> v(g.values().data(),
                                        static_cast<Eigen::Index>(g.size()));
    Eigen::VectorXd r = block * v;
    return ValueFunction(states, numvec(r.data(), r.data() + r.size()));
}

RestrictedMatrix restrict_matrix(const TransitionMatrix& t, const StateSet& s) {
    if (s.empty()) throw std::domain_error("restrict_matrix: empty subset");
    if (s.n_states() != t.n_states())
        throw std::domain_error("restrict_matrix: subset is over a different state space");
    const sizevec& m = s.members();
    const Eigen::Index k = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXd block(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            block(i, j) = t(m[static_cast<std::size_t>(i)], m[static_cast<std::size_t>(j)]);
    return RestrictedMatrix{s, std::move(block)};
}

namespace {

// Forward reachability over support edges (entries above kSupportEps),
// starting from the given seed set.
std::vector<std::uint8_t> forward_closure(const TransitionMatrix& t,
                                          const sizevec& seeds) {
    const std::size_t n = t.n_states();
    std::vector<std::uint8_t> seen(n, 0);
    sizevec stack;
    for (std::size_t x : seeds) {
        if (!seen[x]) {
            seen[x] = 1;
            stack.push_back(x);
        }
    }
    while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        const auto row = t.row(x);
        for (std::size_t y = 0; y < n; ++y) {
            if (row[y] > kSupportEps && !seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
        }
    }
    return seen;
}

} // namespace

bool reaches(const TransitionMatrix& t, std::size_t from, std::size_t to) {
    const std::size_t n = t.n_states();
    if (from >= n || to >= n) throw std::out_of_range("reaches: state index out of range");
    if (from == to) return true; // n = 0 steps
    return forward_closure(t, {from})[to] != 0;
}

StateSet cannot_reach_set(const TransitionMatrix& t, const TargetSet& a) {
    const std::size_t n = t.n_states();
    if (a.n_states() != n)
        throw std::invalid_argument("cannot_reach_set: target over a different state space");
    // Reverse reachability from A on the support graph.
    std::vector<std::uint8_t> hits(n, 0);
    for (std::size_t y : a.members()) hits[y] = 1;
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t x = 0; x < n; ++x) {
            if (hits[x]) continue;
            const auto row = t.row(x);
            for (std::size_t y = 0; y < n; ++y) {
                if (row[y] > kSupportEps && hits[y]) {
                    hits[x] = 1;
                    grew = true;
                    break;
                }
            }
        }
    }
    sizevec out;
    for (std::size_t x = 0; x < n; ++x)
        if (!hits[x] && !a.contains(x)) out.push_back(x);
    return StateSet(n, std::move(out));
}

} // namespace imc
