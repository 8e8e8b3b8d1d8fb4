#include "imc/generators.hpp"

#include <cmath>
#include <stdexcept>

#include "imc/rng.hpp"

namespace imc {

namespace {

numvec embed(std::size_t n, const sizevec& where, const numvec& weights) {
    numvec out(n, 0.0);
    for (std::size_t i = 0; i < where.size(); ++i) out[where[i]] = weights[i];
    return out;
}

CredalRow singleton_row(std::size_t n, std::size_t y, CredalModel model, double epsilon) {
    if (model == CredalModel::vertex_hull)
        return VertexRow{{ProbabilityRow::point_mass(n, y)}};
    return EpsContamRow{ProbabilityRow::point_mass(n, y), epsilon, StateSet(n, {y})};
}

} // namespace

InstanceSpec gen_random_instance(std::size_t n, double lambda, CredalModel model,
                                 double epsilon, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("gen_random_instance: need at least 3 states");
    if (lambda < 1.0 || lambda > static_cast<double>(n))
        throw std::invalid_argument("gen_random_instance: lambda must lie in [1, N]");
    if (model == CredalModel::eps_contam && !(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("gen_random_instance: epsilon must lie in (0, 1)");

    const std::size_t target = 0;
    const std::size_t trap = n - 1;
    SplitMix64 rng(seed);

    // Support edges of ordinary states; the target and the trap keep
    // self-loop singleton rows built separately below.
    std::vector<std::vector<std::uint8_t>> adj(n, std::vector<std::uint8_t>(n, 0));

    // Random tree rooted at the target: each ordinary state, in a random
    // order, wires to the target or to a state already connected to it.
    sizevec order;
    for (std::size_t x = 1; x < trap; ++x) order.push_back(x);
    shuffle(order, rng);
    sizevec connected{target};
    for (std::size_t x : order) {
        const std::size_t pick = connected[rng.next_below(connected.size())];
        adj[x][pick] = 1;
        connected.push_back(x);
    }

    // Extra edges from ordinary states to any other state (including the
    // target and the trap) with probability (lambda-1)/(N-1). A draw is
    // consumed for every candidate pair so the stream layout is fixed.
    const double p_edge = (lambda - 1.0) / static_cast<double>(n - 1);
    for (std::size_t x = 1; x < trap; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x) continue;
            if (rng.next_double() < p_edge) adj[x][y] = 1;
        }

    std::vector<CredalRow> rows;
    rows.reserve(n);
    for (std::size_t x = 0; x < n; ++x) {
        if (x == target || x == trap) {
            rows.push_back(singleton_row(n, x, model, epsilon));
            continue;
        }
        sizevec edges;
        for (std::size_t y = 0; y < n; ++y)
            if (adj[x][y]) edges.push_back(y);
        if (model == CredalModel::eps_contam) {
            const numvec base = uniform_simplex(edges.size(), rng);
            rows.push_back(EpsContamRow{ProbabilityRow(embed(n, edges, base)), epsilon,
                                        StateSet(n, edges)});
        } else {
            VertexRow vr;
            for (std::size_t k = 0; k < edges.size(); ++k)
                vr.vertices.emplace_back(embed(n, edges, uniform_simplex(edges.size(), rng)));
            rows.push_back(std::move(vr));
        }
    }

    GeneratorMeta meta{Family::random, lambda, model, {}, seed, {}, {}};
    if (model == CredalModel::eps_contam) meta.epsilon = epsilon;
    return InstanceSpec{n, {}, {target}, CredalSet(n, std::move(rows)), seed, meta};
}

InstanceSpec worst_case_instance(std::size_t m) {
    if (m < 2) throw std::invalid_argument("worst_case_instance: m must be at least 2");
    const std::size_t n = 3;
    VertexRow loop_row;
    for (std::size_t k = 1; k <= m; ++k) {
        const double nk = std::pow(2.0, static_cast<double>(k));
        loop_row.vertices.emplace_back(
            numvec{1.0 - 1.0 / nk - 1.0 / (nk * nk), 1.0 / nk, 1.0 / (nk * nk)});
    }
    std::vector<CredalRow> rows;
    rows.push_back(std::move(loop_row));
    rows.push_back(VertexRow{{ProbabilityRow::point_mass(n, 1)}});
    rows.push_back(VertexRow{{ProbabilityRow::point_mass(n, 2)}});
    GeneratorMeta meta{Family::worst_case, {}, {}, {}, {}, m, {}};
    return InstanceSpec{n, {}, {1}, CredalSet(n, std::move(rows)), {}, meta};
}

InstanceSpec propagation_chain_instance(std::size_t n, double b) {
    if (n < 3) throw std::invalid_argument("propagation_chain_instance: need n >= 3");
    const double lower = std::pow(0.5, 1.0 / static_cast<double>(n));
    if (!(b > lower && b < 1.0))
        throw std::invalid_argument(
            "propagation_chain_instance: b must satisfy (1/2)^(1/n) < b < 1");

    const std::size_t total = n + 2;
    const std::size_t splitter = n;
    const std::size_t trap = n + 1;

    auto interval_row = [&](std::size_t toward, std::size_t hedge) {
        // q in [0, b] realised by its two endpoints.
        numvec zero(total, 0.0);
        zero[hedge] = 1.0;
        numvec high(total, 0.0);
        high[toward] = b;
        high[hedge] = 1.0 - b;
        return VertexRow{{ProbabilityRow(std::move(zero)), ProbabilityRow(std::move(high))}};
    };

    std::vector<CredalRow> rows;
    rows.push_back(VertexRow{{ProbabilityRow::point_mass(total, 0)}});
    rows.push_back(interval_row(0, trap)); // state 1 hedges straight into the trap
    for (std::size_t x = 2; x < n; ++x) rows.push_back(interval_row(x - 1, splitter));
    numvec split(total, 0.0);
    split[0] = 0.5;
    split[trap] = 0.5;
    rows.push_back(VertexRow{{ProbabilityRow(std::move(split))}});
    rows.push_back(VertexRow{{ProbabilityRow::point_mass(total, trap)}});

    GeneratorMeta meta{Family::propagation_chain, {}, {}, {}, {}, {}, b};
    return InstanceSpec{total, {}, {0}, CredalSet(total, std::move(rows)), {}, meta};
}

InstanceSpec fixture(Family name) {
    switch (name) {
        case Family::example1: {
            // Four states, target {2}; the first row interpolates between
            // stepping to 1 and stepping to 2.
            std::vector<CredalRow> rows;
            rows.push_back(VertexRow{{ProbabilityRow({0, 0, 1, 0}),    // p = 0
                                      ProbabilityRow({0, 1, 0, 0})}}); // p = 1
            rows.push_back(VertexRow{{ProbabilityRow({0, 0, 1, 0})}});
            rows.push_back(VertexRow{{ProbabilityRow({0, 0, 0, 1})}});
            rows.push_back(VertexRow{{ProbabilityRow({0, 0, 0, 1})}});
            GeneratorMeta meta{Family::example1, {}, {}, {}, {}, {}, {}};
            return InstanceSpec{4, {}, {2}, CredalSet(4, std::move(rows)), {}, meta};
        }
        case Family::example2: {
            // Three-state cycle, target {2}; edge 2 -> 0 closes the loop.
            std::vector<CredalRow> rows;
            rows.push_back(VertexRow{{ProbabilityRow({0, 1, 0}),    // q = 0
                                      ProbabilityRow({0, 0, 1})}}); // q = 1
            rows.push_back(VertexRow{{ProbabilityRow({0, 0, 1})}});
            rows.push_back(VertexRow{{ProbabilityRow({1, 0, 0})}});
            GeneratorMeta meta{Family::example2, {}, {}, {}, {}, {}, {}};
            return InstanceSpec{3, {}, {2}, CredalSet(3, std::move(rows)), {}, meta};
        }
        case Family::tiebreak: {
            // State 0 absorbing, state 1 free over the whole simplex,
            // target {2}.
            std::vector<CredalRow> rows;
            rows.push_back(VertexRow{{ProbabilityRow({1, 0, 0})}});
            rows.push_back(VertexRow{{ProbabilityRow({1, 0, 0}), ProbabilityRow({0, 1, 0}),
                                      ProbabilityRow({0, 0, 1})}});
            rows.push_back(VertexRow{{ProbabilityRow({0, 0, 1})}});
            GeneratorMeta meta{Family::tiebreak, {}, {}, {}, {}, {}, {}};
            return InstanceSpec{3, {}, {2}, CredalSet(3, std::move(rows)), {}, meta};
        }
        default:
            throw std::invalid_argument("fixture: unknown fixture name");
    }
}

InstanceSpec regenerate(const GeneratorMeta& meta, std::size_t states) {
    switch (meta.family) {
        case Family::random:
            if (!meta.lambda || !meta.model || !meta.seed)
                throw std::invalid_argument("regenerate: random family needs lambda, model, seed");
            return gen_random_instance(states, *meta.lambda, *meta.model,
                                       meta.epsilon.value_or(0.1), *meta.seed);
        case Family::worst_case:
            if (!meta.m) throw std::invalid_argument("regenerate: worst_case needs m");
            return worst_case_instance(*meta.m);
        case Family::propagation_chain:
            if (!meta.b) throw std::invalid_argument("regenerate: propagation_chain needs b");
            return propagation_chain_instance(states - 2, *meta.b);
        default:
            return fixture(meta.family);
    }
}

} // namespace imc
