#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "idemfs/errors.hpp"
#include "idemfs/measure.hpp"

using namespace idemfs;

namespace {

const std::vector<TNorm> all_tnorms{TNorm::minimum(), TNorm::product(), TNorm::lukasiewicz(),
                                    TNorm::hamacher(0.5), TNorm::hamacher(1.0),
                                    TNorm::hamacher(2.0)};

StarMeasure random_measure(std::mt19937_64& rng, const SpacePtr& s, TNorm t) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(s->size());
    for (auto& x : v) x = u(rng);
    v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)] = 1.0;
    return StarMeasure(SubDensity(s, t, std::move(v)));
}

TestFunction random_test(std::mt19937_64& rng, const SpacePtr& s) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(s->size());
    for (auto& x : v) x = u(rng);
    return TestFunction(s, std::move(v));
}

PointMap random_map(std::mt19937_64& rng, const SpacePtr& from, const SpacePtr& to) {
    std::uniform_int_distribution<std::size_t> pick(0, to->size() - 1);
    PointMap f{from, to, std::vector<std::size_t>(from->size())};
    for (auto& y : f.table) y = pick(rng);
    return f;
}

// Hausdorff distance of the two explicit saturated sets by the definition.
double brute_hypograph(const SubDensity& a, const SubDensity& b, const LevelGrid& levels) {
    ProductSpace prod = product_sup_metric(a.space_ptr(), levels);
    auto ma = to_saturated(a, levels).members();
    auto mb = to_saturated(b, levels).members();
    auto directed = [&](const auto& s, const auto& t) {
        double sup = 0.0;
        for (auto p : s) {
            double inf = INFINITY;
            for (auto q : t) inf = std::min(inf, prod.distance(p, q));
            sup = std::max(sup, inf);
        }
        return sup;
    };
    return std::max(directed(ma, mb), directed(mb, ma));
}

}  // namespace

TEST_CASE("StarMeasure requires max density 1") {
    auto g = grid_1d(4, 0, 1);
    CHECK_NOTHROW(StarMeasure::full(g, TNorm::product()));
    CHECK_THROWS_AS(StarMeasure(SubDensity::constant(g, TNorm::product(), 0.5)), ValidationError);
    CHECK_THROWS_AS(SubDensity(g, TNorm::product(), {0.1, 0.2, 1.2, 0.0}), DomainError);
    CHECK_THROWS_AS(SubDensity(g, TNorm::product(), {0.1}), DomainError);
    CHECK_THROWS_AS(StarMeasure::dirac(g, TNorm::product(), 4), DomainError);
}

TEST_CASE("to_saturated examples") {
    auto g = grid_1d(3, 0, 1);
    LevelGrid m2(2);
    auto full = to_saturated(SubDensity::constant(g, TNorm::product(), 1.0), m2);
    CHECK(full.member_count() == 9);
    CHECK(full.satisfies_conditions());

    auto zero = to_saturated(SubDensity::constant(g, TNorm::product(), 0.0), m2);
    CHECK(zero.member_count() == 3);
    for (std::size_t x = 0; x < 3; ++x) CHECK(zero.contains(x, 0));
    CHECK_FALSE(zero.meets_top());
    CHECK(zero.satisfies_conditions(false));

    LevelGrid m4(4);
    auto dirac = to_saturated(StarMeasure::dirac(g, TNorm::product(), 1), m4);
    CHECK(dirac.member_count() == 5 + 2);
    for (std::size_t k = 0; k <= 4; ++k) CHECK(dirac.contains(1, k));
    CHECK_FALSE(dirac.contains(0, 1));
    CHECK(dirac.satisfies_conditions());
}

TEST_CASE("from_saturated examples and validation") {
    auto g = grid_1d(3, 0, 1);
    LevelGrid m4(4);
    std::vector<SaturatedSet::Point> section{{0, 0}, {1, 0}, {2, 0}};
    auto z = from_saturated(SaturatedSet::from_members(g, m4, section), TNorm::product());
    for (double v : z.values()) CHECK(v == 0.0);

    SubDensity grid_valued(g, TNorm::product(), {0.25, 1.0, 0.5});
    CHECK(from_saturated(to_saturated(grid_valued, m4), TNorm::product()) == grid_valued);

    std::vector<SaturatedSet::Point> gap{{0, 0}, {1, 0}, {2, 0}, {1, 2}};
    CHECK_THROWS_AS(from_saturated(SaturatedSet::from_members(g, m4, gap), TNorm::product()),
                    ValidationError);
    std::vector<SaturatedSet::Point> no_base{{0, 0}, {1, 0}};
    CHECK_THROWS_AS(from_saturated(SaturatedSet::from_members(g, m4, no_base), TNorm::product()),
                    ValidationError);
}

TEST_CASE("quantization truncates to the level grid") {
    std::mt19937_64 rng(5);
    auto g = grid_1d(50, 0, 1);
    LevelGrid m10(10);
    auto mu = random_measure(rng, g, TNorm::product());
    auto back = from_saturated(to_saturated(mu, m10), TNorm::product());
    for (std::size_t i = 0; i < g->size(); ++i) {
        CHECK(back[i] == std::floor(mu[i] * 10.0) / 10.0);
        CHECK(back[i] <= mu[i]);
        CHECK(mu[i] - back[i] < 0.1);
    }
}

TEST_CASE("evaluate examples") {
    auto g = grid_1d(2, 0, 1);
    for (const auto& t : all_tnorms) {
        auto one = StarMeasure::full(g, t);
        for (double c : {0.0, 0.3, 1.0}) {
            CHECK(std::abs(evaluate(one, TestFunction::constant(g, c)) - c) <= 1e-12);
        }
        TestFunction phi(g, {0.7, 0.2});
        CHECK(std::abs(evaluate(StarMeasure::dirac(g, t, 0), phi) - 0.7) <= 1e-12);
    }
    StarMeasure mu(SubDensity(g, TNorm::product(), {1.0, 0.5}));
    CHECK(evaluate(mu, TestFunction(g, {0.2, 0.9})) == 0.45);

    auto other = grid_1d(2, 0, 1);
    CHECK_THROWS_AS(evaluate(mu, TestFunction::constant(other, 0.5)), DomainError);
}

TEST_CASE("evaluate satisfies the three *-measure axioms") {
    std::mt19937_64 rng(77);
    auto g = grid_1d(64, 0, 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& t : all_tnorms) {
        CAPTURE(t.name());
        for (int k = 0; k < 20; ++k) {
            auto mu = random_measure(rng, g, t);
            auto phi = random_test(rng, g);
            auto psi = random_test(rng, g);
            double c = u(rng), lambda = u(rng);
            REQUIRE(std::abs(evaluate(mu, TestFunction::constant(g, c)) - c) <= 1e-12);

            std::vector<double> scaled(g->size()), joined(g->size());
            for (std::size_t i = 0; i < g->size(); ++i) {
                scaled[i] = apply(t, lambda, phi[i]);
                joined[i] = std::max(phi[i], psi[i]);
            }
            REQUIRE(std::abs(evaluate(mu, TestFunction(g, scaled)) -
                             apply(t, lambda, evaluate(mu, phi))) <= 1e-12);
            REQUIRE(evaluate(mu, TestFunction(g, joined)) ==
                    std::max(evaluate(mu, phi), evaluate(mu, psi)));
        }
    }
}

TEST_CASE("pushforward") {
    std::mt19937_64 rng(9);
    auto x = grid_1d(20, 0, 1);
    auto y = grid_1d(7, 0, 1);
    auto mu = random_measure(rng, x, TNorm::product());

    CHECK(pushforward(PointMap::identity(x), mu) == mu);

    PointMap constant{x, y, std::vector<std::size_t>(x->size(), 4)};
    CHECK(pushforward(constant, mu) == StarMeasure::dirac(y, TNorm::product(), 4));

    for (int k = 0; k < 50; ++k) {
        auto f = random_map(rng, x, y);
        auto phi = random_test(rng, y);
        std::vector<double> pulled(x->size());
        for (std::size_t i = 0; i < x->size(); ++i) pulled[i] = phi[f.table[i]];
        auto pushed = pushforward(f, mu);
        REQUIRE(evaluate(pushed, phi) == evaluate(mu, TestFunction(x, pulled)));

        auto z = grid_1d(5, 0, 1);
        auto g = random_map(rng, y, z);
        REQUIRE(pushforward(PointMap::compose(g, f), mu) == pushforward(g, pushed));
        REQUIRE(pushed.density().max() == mu.density().max());
    }

    PointMap bad{x, y, std::vector<std::size_t>(x->size(), 7)};
    CHECK_THROWS_AS(pushforward(bad, mu), DomainError);
}

TEST_CASE("scale") {
    auto g = grid_1d(2, 0, 1);
    SubDensity d(g, TNorm::product(), {1.0, 0.6});
    CHECK(scale(1.0, d) == d);
    auto zero = scale(0.0, d);
    for (double v : zero.values()) CHECK(v == 0.0);
    auto half = scale(0.5, d);
    CHECK(half[0] == 0.5);
    CHECK(half[1] == 0.3);
    CHECK_THROWS_AS(scale(1.5, d), DomainError);

    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto big = grid_1d(33, 0, 1);
    for (const auto& t : all_tnorms) {
        for (int k = 0; k < 20; ++k) {
            auto mu = random_measure(rng, big, t);
            double r = u(rng), s = u(rng);
            auto twice = scale(r, scale(s, mu));
            auto once = scale(apply(t, r, s), mu);
            for (std::size_t i = 0; i < big->size(); ++i)
                REQUIRE(std::abs(twice[i] - once[i]) <= 1e-12);
            REQUIRE(std::abs(scale(r, mu).max() - apply(t, r, 1.0)) <= 1e-12);
        }
    }
}

TEST_CASE("max_union") {
    auto g = grid_1d(2, 0, 1);
    SubDensity a(g, TNorm::product(), {1.0, 0.0}), b(g, TNorm::product(), {0.0, 1.0});
    std::vector<SubDensity> one{a};
    CHECK(max_union(one) == a);
    std::vector<SubDensity> two{a, b};
    CHECK(max_union(two) == SubDensity::constant(g, TNorm::product(), 1.0));
    CHECK_THROWS_AS(max_union(std::span<const SubDensity>{}), DomainError);

    // Union of quantized hypographs is the hypograph of the pointwise max.
    std::mt19937_64 rng(4);
    auto x = grid_1d(30, 0, 1);
    LevelGrid levels(16);
    for (int k = 0; k < 20; ++k) {
        std::vector<SubDensity> items;
        for (int i = 0; i < 3; ++i) items.push_back(random_measure(rng, x, TNorm::minimum()));
        auto merged = to_saturated(max_union(items), levels);
        std::vector<SaturatedSet::Point> members;
        for (const auto& it : items) {
            auto m = to_saturated(it, levels).members();
            members.insert(members.end(), m.begin(), m.end());
        }
        REQUIRE(SaturatedSet::from_members(x, levels, members) == merged);
    }
}

TEST_CASE("weakstar_distance") {
    std::mt19937_64 rng(12);
    auto g = grid_1d(16, 0, 1);
    auto mu = random_measure(rng, g, TNorm::product());
    auto nu = random_measure(rng, g, TNorm::product());
    std::vector<TestFunction> tests{random_test(rng, g), random_test(rng, g)};
    CHECK(weakstar_distance(mu, mu, tests) == 0.0);
    std::vector<TestFunction> consts{TestFunction::constant(g, 0.3)};
    CHECK(weakstar_distance(mu, nu, consts) <= 1e-12);
    std::vector<TestFunction> single{tests[0]};
    CHECK(weakstar_distance(mu, nu, single) ==
          std::abs(evaluate(mu, tests[0]) - evaluate(nu, tests[0])));
    CHECK_THROWS_AS(weakstar_distance(mu, nu, std::span<const TestFunction>{}), DomainError);
}

TEST_CASE("hypograph_distance equals Hausdorff of the explicit saturated sets") {
    std::mt19937_64 rng(42);
    for (auto g : {grid_1d(12, 0, 1), grid_2d(4, 3, {0, 1, 0, 1})}) {
        for (std::size_t m : {1u, 4u, 10u}) {
            LevelGrid levels(m);
            for (int k = 0; k < 20; ++k) {
                auto a = random_measure(rng, g, TNorm::product());
                auto b = random_measure(rng, g, TNorm::product());
                REQUIRE(hypograph_distance(a, b, levels) == brute_hypograph(a, b, levels));
            }
        }
    }
    auto g = grid_1d(5, 0, 1);
    auto mu = StarMeasure::dirac(g, TNorm::product(), 2);
    CHECK(hypograph_distance(mu, mu, LevelGrid(8)) == 0.0);
    // Dirac at 0 vs Dirac at 1: the spike at 0 is 1 away in level or space.
    CHECK(hypograph_distance(StarMeasure::dirac(g, TNorm::product(), 0),
                             StarMeasure::dirac(g, TNorm::product(), 4), LevelGrid(8)) == 1.0);
}
