#include <doctest.h>

#include <cmath>

#include "ctxq/classical.hpp"
#include "support.hpp"

using namespace ctxq;
using testsupport::bayesian_leq_exhaustive;
using testsupport::vec;

namespace {

ClassicalState st(std::vector<double> v) { return ClassicalState::from_probabilities(std::move(v)); }

// States on a coarse grid so ties between components are common.
ClassicalState grid_state(std::size_t n, CounterRng& rng) {
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& v : w) total += (v = static_cast<double>(rng.below(4)));
    if (total == 0.0) {
        w[rng.below(n)] = 1.0;
        total = 1.0;
    }
    for (auto& v : w) v /= total;
    return st(w);
}

} // namespace

TEST_SUITE("classical") {

TEST_CASE("validation") {
    CHECK_THROWS_AS(st({}), InvalidDimension);
    CHECK_THROWS_AS(st({0.5, 0.6}), InvalidState);
    CHECK_THROWS_AS(st({1.2, -0.2}), InvalidState);
    CHECK_THROWS_AS(st({NAN, 1.0}), InvalidState);
    CHECK_NOTHROW(st({0.5, 0.5 + 5e-10}));
    CHECK_THROWS_AS(mixed(0), InvalidDimension);
    CHECK_THROWS_AS(pure(3, 3), IndexOutOfRange);
}

TEST_CASE("least and pure elements") {
    CHECK(vec(mixed(3)) == std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(vec(mixed(1)) == std::vector<double>{1.0});
    CHECK(vec(mixed(2)) == std::vector<double>{0.5, 0.5});
    CHECK(vec(pure(3, 0)) == std::vector<double>{1, 0, 0});
    CHECK(vec(pure(1, 0)) == std::vector<double>{1});
    CHECK(vec(pure(4, 3)) == std::vector<double>{0, 0, 0, 1});
    CHECK(pure(4, 3).is_pure());
    CHECK_FALSE(st({0.999999, 0.000001}).is_pure());
}

TEST_CASE("order examples") {
    CHECK(bayesian_leq(mixed(4), st({0.7, 0.1, 0.1, 0.1})));
    CHECK(bayesian_leq(st({0.2, 0.5, 0.3}), pure(3, 1)));
    CHECK_FALSE(bayesian_leq(st({0.9, 0.1}), st({0.5, 0.5})));
    CHECK_FALSE(bayesian_leq(st({0.6, 0.4}), st({0.1, 0.9})));
    CHECK_THROWS_AS(bayesian_leq(mixed(2), mixed(3)), DimensionMismatch);
}

TEST_CASE("co-sort agrees with the exhaustive permutation search") {
    CounterRng root(11);
    std::size_t related = 0;
    for (std::uint64_t k = 0; k < 6000; ++k) {
        auto rng = root.split(k);
        const auto n = 1 + static_cast<std::size_t>(rng.below(6));
        const bool grid = rng.below(2) == 0;
        const auto x = grid ? grid_state(n, rng) : random_state(n, rng);
        auto y = grid ? grid_state(n, rng) : random_state(n, rng);
        if (rng.below(3) == 0) y = mixing_path(x, pure(n, rng.below(n)), rng.uniform());
        const bool fast = bayesian_leq(x, y);
        REQUIRE_MESSAGE(fast == bayesian_leq_exhaustive(vec(x), vec(y)), to_string(x) << " vs " << to_string(y));
        related += fast;
    }
    // Make sure both outcomes were exercised.
    CHECK(related > 500);
    CHECK(related < 5500);
}

TEST_CASE("order properties on samples") {
    CounterRng root(12);
    for (std::uint64_t k = 0; k < 3000; ++k) {
        auto rng = root.split(k);
        const auto n = 1 + static_cast<std::size_t>(rng.below(6));
        const auto x = random_state(n, rng);
        const auto y = random_state(n, rng);
        const auto z = random_state(n, rng);
        CHECK(bayesian_leq(x, x));
        CHECK(bayesian_leq(mixed(n), y));
        if (bayesian_leq(x, y) && bayesian_leq(y, x)) CHECK(x.approx_equal(y));
        if (bayesian_leq(x, y) && bayesian_leq(y, z)) CHECK(bayesian_leq(x, z));
        for (std::size_t i = 0; i < n; ++i) {
            if (bayesian_leq(pure(n, i), y)) CHECK(y == pure(n, i));
        }
    }
}

TEST_CASE("transitivity along sampled chains") {
    CounterRng root(13);
    for (std::uint64_t k = 0; k < 2000; ++k) {
        auto rng = root.split(k);
        const auto n = 2 + static_cast<std::size_t>(rng.below(5));
        const auto [x, y] = random_ordered_pair(n, rng);
        // Extending along the same segment gives a third comparable point.
        const auto top = static_cast<std::size_t>(
            std::max_element(y.probs().begin(), y.probs().end()) - y.probs().begin());
        const auto z = mixing_path(y, pure(n, top), rng.uniform());
        REQUIRE(bayesian_leq(x, y));
        CHECK(bayesian_leq(y, z));
        CHECK(bayesian_leq(x, z));
    }
}

TEST_CASE("mixing path endpoints and midpoint") {
    const auto x = st({0.5, 0.5});
    const auto y = st({1.0, 0.0});
    CHECK(mixing_path(x, y, 0.0) == x);
    CHECK(mixing_path(x, y, 1.0) == y);
    CHECK(vec(mixing_path(x, y, 0.5)) == std::vector<double>{0.75, 0.25});
    CHECK_THROWS_AS(mixing_path(x, y, 1.5), ParameterOutOfRange);
    CHECK_THROWS_AS(mixing_path(x, mixed(3), 0.5), DimensionMismatch);
}

TEST_CASE("mixing law on sampled ordered pairs") {
    CounterRng root(14);
    std::size_t violations = 0;
    std::size_t checked = 0;
    for (std::uint64_t k = 0; k < 5000; ++k) {
        auto rng = root.split(k);
        const auto n = 2 + static_cast<std::size_t>(rng.below(5));
        const auto [x, y] = random_ordered_pair(n, rng);
        const auto m = mixing_path(x, y, rng.uniform());
        ++checked;
        if (!bayesian_leq(x, m) || !bayesian_leq(m, y)) ++violations;
    }
    MESSAGE("mixing law violations: " << violations << " of " << checked);
    CHECK(violations == 0);
}

TEST_CASE("elimination examples") {
    CHECK(vec(eliminate(mixed(3), 0)) == std::vector<double>{0.0, 0.5, 0.5});
    CHECK(vec(eliminate(st({0.0, 0.5, 0.5}), 1)) == std::vector<double>{0.0, 0.0, 1.0});
    CHECK_THROWS_AS(eliminate(st({1.0, 0.0}), 0), CertainOutcomeError);
    CHECK_THROWS_AS(eliminate(mixed(2), 2), IndexOutOfRange);
}

TEST_CASE("elimination moves up the order") {
    CounterRng root(15);
    for (std::uint64_t k = 0; k < 3000; ++k) {
        auto rng = root.split(k);
        const auto n = 2 + static_cast<std::size_t>(rng.below(6));
        // From a uniform state on any support (the box search).
        std::vector<double> w(n, 0.0);
        std::size_t live = 0;
        for (auto& v : w) {
            if (rng.below(3) != 0) {
                v = 1.0;
                ++live;
            }
        }
        if (live < 2) {
            w.assign(n, 1.0);
            live = n;
        }
        for (auto& v : w) v /= static_cast<double>(live);
        const auto u = st(w);
        for (std::size_t i = 0; i < n; ++i) {
            if (u[i] > 0.0) CHECK(bayesian_leq(u, eliminate(u, i)));
        }
        // From any state, removing its least likely possible outcome.
        const auto x = random_state(n, rng);
        if (x.is_pure()) continue;
        std::size_t least = n;
        for (std::size_t i = 0; i < n; ++i)
            if (x[i] > 0.0 && (least == n || x[i] < x[least])) least = i;
        CHECK_MESSAGE(bayesian_leq(x, eliminate(x, least)), to_string(x));
    }
}

TEST_CASE("eliminating a likely outcome need not add information") {
    const auto x = st({0.5, 0.3, 0.2});
    const auto y = eliminate(x, 0);
    CHECK(y.approx_equal(st({0.0, 0.6, 0.4})));
    CHECK_FALSE(bayesian_leq(x, y));
    CHECK_FALSE(bayesian_leq_exhaustive(vec(x), vec(y)));
}

TEST_CASE("ordered pair sampler") {
    CounterRng root(16);
    for (std::uint64_t k = 0; k < 2000; ++k) {
        auto rng = root.split(k);
        const auto n = 2 + static_cast<std::size_t>(rng.below(5));
        const auto [x, y] = random_ordered_pair(n, rng);
        CHECK(bayesian_leq(x, y));
        CHECK_FALSE(x == y);
    }
}

}
