#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "idemfs/errors.hpp"
#include "idemfs/tnorm.hpp"

using namespace idemfs;

namespace {

std::vector<TNorm> families() {
    return {TNorm::minimum(), TNorm::product(), TNorm::lukasiewicz(), TNorm::hamacher(0.0),
            TNorm::hamacher(0.5), TNorm::hamacher(1.0), TNorm::hamacher(2.0),
            TNorm::hamacher(5.0)};
}

}  // namespace

TEST_CASE("apply: closed-form examples") {
    CHECK(apply(TNorm::product(), 0.5, 0.4) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(apply(TNorm::minimum(), 0.3, 0.7) == 0.3);
    CHECK(std::abs(apply(TNorm::lukasiewicz(), 0.6, 0.7) - 0.3) <= 1e-12);
    for (const auto& t : families()) {
        CAPTURE(t.name());
        CHECK(std::abs(apply(t, 1.0, 0.42) - 0.42) <= 1e-12);
    }
}

TEST_CASE("apply: out-of-range arguments are domain errors") {
    CHECK_THROWS_AS(apply(TNorm::product(), 1.5, 0.2), DomainError);
    CHECK_THROWS_AS(apply(TNorm::minimum(), 0.2, -0.1), DomainError);
    CHECK_THROWS_AS(apply(TNorm::lukasiewicz(), NAN, 0.2), DomainError);
}

TEST_CASE("hamacher: degenerate corner and special parameters") {
    CHECK(apply(TNorm::hamacher(0.0), 0.0, 0.0) == 0.0);
    CHECK(apply(TNorm::hamacher(0.0), 0.5, 0.5) == doctest::Approx(0.25 / 0.75));
    // p = 1 is the product t-norm.
    CHECK(std::abs(apply(TNorm::hamacher(1.0), 0.3, 0.9) - 0.27) <= 1e-15);
    // p = 2 is the Einstein product ab / (1 + (1-a)(1-b)).
    CHECK(std::abs(apply(TNorm::hamacher(2.0), 0.5, 0.5) - 0.25 / 1.25) <= 1e-15);
    CHECK_THROWS_AS(TNorm::hamacher(-1.0), DomainError);
}

TEST_CASE("fold: examples and empty sequence") {
    std::vector<double> halves{0.5, 0.5, 0.5};
    CHECK(fold(TNorm::product(), halves) == 0.125);
    std::vector<double> mins{1.0, 0.4, 0.9};
    CHECK(fold(TNorm::minimum(), mins) == 0.4);
    for (const auto& t : families()) CHECK(fold(t, {}) == 1.0);
    std::vector<double> bad{0.5, 2.0};
    CHECK_THROWS_AS(fold(TNorm::product(), bad), DomainError);
}

TEST_CASE("axioms hold on random triples for every family") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& t : families()) {
        CAPTURE(t.name());
        const double lip = lipschitz_constant(t);
        for (int k = 0; k < 1000; ++k) {
            double a = u(rng), b = u(rng), c = u(rng);
            double ab = apply(t, a, b);
            REQUIRE(std::abs(apply(t, 1.0, a) - a) <= 1e-12);
            REQUIRE(std::abs(ab - apply(t, b, a)) <= 1e-12);
            REQUIRE(std::abs(apply(t, a, apply(t, b, c)) - apply(t, ab, c)) <= 1e-12);
            REQUIRE(apply(t, std::min(a, c), b) <= apply(t, std::max(a, c), b) + 1e-12);
            REQUIRE(ab >= 0.0);
            REQUIRE(ab <= std::min(a, b) + 1e-12);
            REQUIRE(std::abs(ab - apply(t, c, b)) <= lip * std::abs(a - c) + 1e-12);
        }
        AxiomReport rep = check_axioms(t, 1000, 99);
        CHECK(rep.failures == 0);
        CHECK(rep.first_failure.empty());
    }
}

TEST_CASE("check_axioms reports a sample that breaks a law") {
    // A negative tolerance flags every sample.
    AxiomReport rep = check_axioms(TNorm::hamacher(3.0), 1000, 5, -1.0);
    CHECK(rep.failures > 0);
    CHECK_FALSE(rep.first_failure.empty());
}

TEST_CASE("fold over splits and permutations") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& t : families()) {
        CAPTURE(t.name());
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> w(1 + trial % 7);
            for (auto& v : w) v = u(rng);
            const double whole = fold(t, w);
            for (std::size_t cut = 0; cut <= w.size(); ++cut) {
                std::span<const double> all(w);
                double joined = apply(t, fold(t, all.first(cut)), fold(t, all.subspan(cut)));
                REQUIRE(std::abs(whole - joined) <= 1e-12);
            }
            std::shuffle(w.begin(), w.end(), rng);
            REQUIRE(std::abs(whole - fold(t, w)) <= 1e-12);
        }
    }
}

TEST_CASE("names parse and print") {
    CHECK(TNorm::parse("min") == TNorm::minimum());
    CHECK(TNorm::parse("product") == TNorm::product());
    CHECK(TNorm::parse("lukasiewicz") == TNorm::lukasiewicz());
    CHECK(TNorm::parse("hamacher(2)") == TNorm::hamacher(2.0));
    CHECK(TNorm::parse("hamacher(0.5)").parameter == 0.5);
    CHECK(TNorm::parse(TNorm::hamacher(0.25).name()) == TNorm::hamacher(0.25));
    CHECK_THROWS_AS(TNorm::parse("drastic"), DomainError);
    CHECK_THROWS_AS(TNorm::parse("hamacher(x)"), DomainError);
    CHECK_THROWS_AS(TNorm::parse("hamacher(-2)"), DomainError);
}
