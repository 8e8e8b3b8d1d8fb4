#include <doctest.h>

#include "imc/markov.hpp"
#include "support.hpp"

using namespace imc;

TEST_CASE("probability rows validate and renormalise") {
    CHECK_THROWS_AS(ProbabilityRow({0.5, -0.1, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(ProbabilityRow({0.5, 0.4}), std::invalid_argument); // drift 0.1
    // drift below the rejection threshold is renormalised
    ProbabilityRow r({0.5 + 4e-7, 0.5});
    double sum = 0;
    for (double w : r.weights()) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("restrict and extend match their definitions") {
    auto f = ValueFunction::full(3, {0.2, 0.5, 0.9});
    StateSet s(3, {1, 2});
    auto g = restrict_function(f, s);
    CHECK(g.values() == numvec{0.5, 0.9});

    // restriction to the full carrier is the identity
    auto same = restrict_function(f, StateSet::full(3));
    CHECK(same.values() == f.values());

    auto h = ValueFunction(StateSet(3, {2}), {1.0});
    auto up = extend_function(h, StateSet::full(3));
    CHECK(up.values() == numvec{0.0, 0.0, 1.0});
    CHECK(extend_function(up, StateSet::full(3)).values() == up.values());

    CHECK_THROWS_AS(restrict_function(f, StateSet::empty_set(3)), std::domain_error);
    CHECK_THROWS_AS(restrict_function(g, StateSet::full(3)), std::domain_error);
    CHECK_THROWS_AS(extend_function(f, StateSet(3, {0})), std::domain_error);
}

TEST_CASE("extension is the right inverse of restriction") {
    SplitMix64 rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 2 + rng.next_below(6);
        sizevec pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        shuffle(pool, rng);
        pool.resize(1 + rng.next_below(n));
        StateSet s(n, pool);
        numvec vals(s.size());
        for (double& v : vals) v = rng.next_double() * 4 - 2;
        ValueFunction g(s, vals);
        CHECK(restrict_function(extend_function(g, StateSet::full(n)), s) == g);
    }
}

TEST_CASE("mismatched carriers are arithmetic errors") {
    auto a = ValueFunction(StateSet(3, {0, 1}), {1.0, 2.0});
    auto b = ValueFunction(StateSet(3, {1, 2}), {1.0, 2.0});
    CHECK_THROWS_AS(add(a, b), std::domain_error);
    CHECK(add(a, a).values() == numvec{2.0, 4.0});
    CHECK_THROWS_AS(a.at(2), std::domain_error);
}

TEST_CASE("matrix restriction is the indexed submatrix") {
    auto id = TransitionMatrix::identity(4);
    auto r = restrict_matrix(id, StateSet(4, {1, 3}));
    CHECK(r.block(0, 0) == 1.0);
    CHECK(r.block(0, 1) == 0.0);
    CHECK(r.block(1, 1) == 1.0);

    auto t = TransitionMatrix::from_rows({{0.2, 0.3, 0.5}, {0.1, 0.6, 0.3}, {0.4, 0.4, 0.2}});
    auto top = restrict_matrix(t, StateSet(3, {0, 1}));
    CHECK(top.block(0, 0) == doctest::Approx(0.2));
    CHECK(top.block(0, 1) == doctest::Approx(0.3));
    CHECK(top.block(1, 0) == doctest::Approx(0.1));
    CHECK(top.block(1, 1) == doctest::Approx(0.6));

    CHECK_THROWS_AS(restrict_matrix(t, StateSet::empty_set(3)), std::domain_error);
}

TEST_CASE("restricted application agrees with restrict(T extend(g))") {
    SplitMix64 rng(23);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 2 + rng.next_below(6);
        auto t = test::random_dense_matrix(n, rng);
        sizevec pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        shuffle(pool, rng);
        pool.resize(1 + rng.next_below(n));
        StateSet s(n, pool);
        numvec vals(s.size());
        for (double& v : vals) v = rng.next_double() * 2 - 1;
        ValueFunction g(s, vals);

        auto lhs = restrict_matrix(t, s).apply(g);
        auto extended = extend_function(g, StateSet::full(n));
        auto rhs = restrict_function(
            ValueFunction::full(n, t.apply(extended.values())), s);
        CHECK(test::max_abs_diff(lhs.values(), rhs.values()) < 1e-12);
    }
}

TEST_CASE("reaches follows positive-entry paths") {
    auto chain = TransitionMatrix::from_rows(
        {{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}});
    CHECK(reaches(chain, 0, 2));
    CHECK(reaches(chain, 1, 1)); // zero-step convention
    CHECK_FALSE(reaches(chain, 2, 0));

    auto split = TransitionMatrix::from_rows({{1.0, 0.0}, {0.0, 1.0}});
    CHECK_FALSE(reaches(split, 0, 1));
    CHECK_FALSE(reaches(split, 1, 0));
    CHECK_THROWS_AS(reaches(split, 0, 5), std::out_of_range);
}

TEST_CASE("reaches agrees with the matrix-power oracle") {
    SplitMix64 rng(37);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 6;
        auto t = test::random_sparse_matrix(n, 2, rng);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                CHECK(reaches(t, x, y) == test::power_reaches(t, x, y));
    }
}

TEST_CASE("cannot_reach_set on simple fixtures") {
    // absorbing, globally reachable target
    auto t = TransitionMatrix::from_rows(
        {{1.0, 0.0, 0.0}, {0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}});
    CHECK(cannot_reach_set(t, TargetSet(3, {0})).empty());

    // absorbing last state never reaches the target
    auto u = TransitionMatrix::from_rows(
        {{1.0, 0.0, 0.0}, {0.3, 0.3, 0.4}, {0.0, 0.0, 1.0}});
    auto c = cannot_reach_set(u, TargetSet(3, {0}));
    CHECK(c.members() == sizevec{2});
}

TEST_CASE("cannot_reach_set matches the pairwise oracle and stays inside A^c") {
    SplitMix64 rng(41);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 8;
        auto t = test::random_sparse_matrix(n, 2, rng);
        sizevec target{rng.next_below(n)};
        auto c = cannot_reach_set(t, TargetSet(n, target));
        CHECK(c.members() == test::power_cannot_reach(t, target));
        for (std::size_t x : c.members()) CHECK(x != target[0]);
    }
}
