#include <doctest.h>

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "idemfs/errors.hpp"
#include "idemfs/ifs.hpp"

using namespace idemfs;
using fixtures::affine1;

namespace {

const std::vector<TNorm> all_tnorms{TNorm::minimum(), TNorm::product(), TNorm::lukasiewicz(),
                                    TNorm::hamacher(0.5), TNorm::hamacher(1.0),
                                    TNorm::hamacher(2.0)};

ValidationError::Kind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ValidationError& e) {
        return e.kind();
    }
    FAIL("expected a ValidationError");
    return ValidationError::Kind::metric;
}

}  // namespace

TEST_CASE("validate: weights") {
    auto g = grid_1d(10, 0, 1);
    std::vector<MapSpec> maps{affine1(0.5, 0), affine1(0.5, 0.5)};
    auto sys = IFSSystem::validate(g, maps, {1.0, 0.5}, TNorm::product());
    CHECK(sys.contraction() == 0.5);
    CHECK(kind_of([&] { IFSSystem::validate(g, maps, {0.5, 0.7}, TNorm::product()); }) ==
          ValidationError::Kind::weight);
    try {
        IFSSystem::validate(g, maps, {0.5, 0.7}, TNorm::product());
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()) == "weight error: max λ = 0.7");
    }
    CHECK(kind_of([&] { IFSSystem::validate(g, maps, {1.0}, TNorm::product()); }) ==
          ValidationError::Kind::weight);
    CHECK(kind_of([&] { IFSSystem::validate(g, maps, {1.0, -0.1}, TNorm::product()); }) ==
          ValidationError::Kind::weight);
}

TEST_CASE("validate: contraction constants") {
    auto g = grid_1d(5, 0, 1);
    TabulatedSpec identity;
    for (std::size_t i = 0; i < 5; ++i) identity.pairs.push_back({i, i});
    CHECK(kind_of([&] { IFSSystem::validate(g, {identity}, {1.0}, TNorm::product()); }) ==
          ValidationError::Kind::not_contraction);
    CHECK(kind_of([&] { IFSSystem::validate(g, {affine1(-1.0, 1.0)}, {1.0}, TNorm::product()); }) ==
          ValidationError::Kind::not_contraction);

    // i -> floor(i/2): ratio between points 0 and 1 is 0, between 1 and 2 is 1.
    TabulatedSpec halve;
    for (std::size_t i = 0; i < 5; ++i) halve.pairs.push_back({i, i / 2});
    CHECK(kind_of([&] { IFSSystem::validate(g, {halve}, {1.0}, TNorm::product()); }) ==
          ValidationError::Kind::not_contraction);

    TabulatedSpec collapse;
    for (std::size_t i = 0; i < 5; ++i) collapse.pairs.push_back({i, 2});
    auto sys = IFSSystem::validate(g, {collapse}, {1.0}, TNorm::product());
    CHECK(sys.contraction() == 0.0);
    CHECK(sys.maps()[0].snapped().table == std::vector<std::size_t>(5, 2));

    // Rotation by 90 degrees scaled by 0.6 has operator norm 0.6.
    auto g2 = grid_2d(5, 5, {-1, 1, -1, 1});
    AffineSpec rot{{0, -0.6, 0.6, 0}, {0, 0}};
    CHECK(IFSSystem::validate(g2, {rot}, {1.0}, TNorm::product()).contraction() ==
          doctest::Approx(0.6));
    AffineSpec shear{{0.5, 0.5, 0, 0.5}, {0, 0}};
    // Singular values of [[.5,.5],[0,.5]] are (sqrt(5) +- 1)/4.
    CHECK(IFSSystem::validate(g2, {shear}, {1.0}, TNorm::product()).contraction() ==
          doctest::Approx((std::sqrt(5.0) + 1) / 4));
}

TEST_CASE("validate: tabulated coverage and grid coverage") {
    auto g = grid_1d(4, 0, 1);
    TabulatedSpec partial{{{0, 0}, {1, 0}}};
    CHECK(kind_of([&] { IFSSystem::validate(g, {partial}, {1.0}, TNorm::product()); }) ==
          ValidationError::Kind::coverage);
    TabulatedSpec twice{{{0, 0}, {0, 1}, {1, 0}, {2, 0}, {3, 0}}};
    CHECK(kind_of([&] { IFSSystem::validate(g, {twice}, {1.0}, TNorm::product()); }) ==
          ValidationError::Kind::coverage);

    // h = 1/3: an image reaching 1 + h is tolerated, 1 + 2h is not.
    CHECK_NOTHROW(IFSSystem::validate(g, {affine1(0.5, 1.0 / 3 + 0.5)}, {1.0}, TNorm::product()));
    CHECK(kind_of([&] { IFSSystem::validate(g, {affine1(0.5, 1.2)}, {1.0}, TNorm::product()); }) ==
          ValidationError::Kind::coverage);
    auto g2 = grid_2d(3, 3, {0, 1, 0, 1});
    CHECK(kind_of([&] { IFSSystem::validate(g2, {affine1(0.5, 0)}, {1.0}, TNorm::product()); }) ==
          ValidationError::Kind::coverage);
}

TEST_CASE("psi: identity and constant maps") {
    auto g = grid_1d(9, 0, 1);
    TabulatedSpec constant;
    for (std::size_t i = 0; i < 9; ++i) constant.pairs.push_back({i, 3});
    auto sys = IFSSystem::validate(g, {constant}, {1.0}, TNorm::product());
    StarMeasure mu(SubDensity(g, TNorm::product(), {0.1, 0.2, 1.0, 0.3, 0, 0, 0.5, 0.5, 0}));
    CHECK(psi(sys, mu) == StarMeasure::dirac(g, TNorm::product(), 3));

    // 0.9x + 0.05 snaps to the identity on a 3-point grid.
    auto three = grid_1d(3, 0, 1);
    auto id = IFSSystem::validate(three, {affine1(0.9, 0.05)}, {1.0}, TNorm::product());
    CHECK(id.maps()[0].snapped().table == std::vector<std::size_t>{0, 1, 2});
    StarMeasure nu(SubDensity(three, TNorm::product(), {0.25, 1.0, 0.5}));
    CHECK(psi(id, nu) == nu);
}

TEST_CASE("psi: one Cantor step on a 7-point grid") {
    // Hand evaluation, h = 1/6. f1(i/6) = i/18 snaps to round(i/3) -> {0,0,1,1,1,2,2};
    // f2(i/6) = (i+12)/18 snaps to {4,4,5,5,5,6,6}.
    auto sys = fixtures::cantor(7, {1.0, 0.5}, TNorm::product());
    CHECK(sys.maps()[0].snapped().table == std::vector<std::size_t>{0, 0, 1, 1, 1, 2, 2});
    CHECK(sys.maps()[1].snapped().table == std::vector<std::size_t>{4, 4, 5, 5, 5, 6, 6});
    auto out = psi(sys, StarMeasure::full(sys.space_ptr(), TNorm::product()));
    std::vector<double> expect{1, 1, 1, 0, 0.5, 0.5, 0.5};
    CHECK(std::vector<double>(out.values().begin(), out.values().end()) == expect);
    CHECK_THROWS_AS(psi(sys, StarMeasure::full(grid_1d(7, 0, 1), TNorm::product())), DomainError);
}

TEST_CASE("psi preserves normalization and the decreasing chain") {
    for (const auto& t : all_tnorms) {
        CAPTURE(t.name());
        auto sys = fixtures::cantor(81, {0.3, 1.0}, t);
        StarMeasure mu = StarMeasure::full(sys.space_ptr(), t);
        for (int n = 0; n < 12; ++n) {
            StarMeasure next = psi(sys, mu);
            REQUIRE(next.density().max() == 1.0);
            for (std::size_t i = 0; i < next.values().size(); ++i) REQUIRE(next[i] <= mu[i]);
            REQUIRE(to_saturated(next, LevelGrid(64)).satisfies_conditions());
            mu = next;
        }
    }
}

TEST_CASE("solve: single halving map converges to the Dirac at 0") {
    for (const auto& t : all_tnorms) {
        CAPTURE(t.name());
        auto sys = fixtures::halving(257, t);
        auto [mu, rep] = solve(sys, std::nullopt, {1e-9, 1000, 256});
        CHECK(mu == StarMeasure::dirac(sys.space_ptr(), t, 0));
        CHECK(rep.stopped_by == SolveReport::Stop::residual);
        CHECK(rep.final_residual == 0.0);
        CHECK(residual(sys, mu, LevelGrid(256)) == 0.0);
        CHECK(rep.apriori_bound == std::pow(0.5, rep.iterations) * 1.0);
    }
}

TEST_CASE("solve: stopping rules") {
    auto sys = fixtures::cantor(729, {1.0, 0.5}, TNorm::product());
    auto coarse = solve(sys, std::nullopt, {1.0, 100, 256});
    CHECK(coarse.report.iterations == 0);
    CHECK(coarse.report.stopped_by == SolveReport::Stop::bound);
    CHECK(coarse.measure == StarMeasure::full(sys.space_ptr(), TNorm::product()));

    auto one = solve(sys, std::nullopt, {1e-6, 1, 256});
    CHECK(one.report.iterations == 1);
    CHECK(one.report.stopped_by == SolveReport::Stop::max_iterations);

    auto full = solve(sys, std::nullopt, {1e-6, 10000, 256});
    CHECK(full.report.stopped_by != SolveReport::Stop::max_iterations);
    if (full.report.stopped_by == SolveReport::Stop::bound) {
        CHECK(full.report.apriori_bound <= 1e-6);
    } else {
        CHECK(full.report.final_residual <= 1e-6);
    }
    CHECK(full.report.snap_slack == doctest::Approx((1.0 / 728) / (2.0 * (2.0 / 3))));
    CHECK_THROWS_AS(solve(sys, std::nullopt, {0.0, 10, 256}), DomainError);
}

TEST_CASE("solve: the bound can fire before the residual") {
    // A loose tol is reached by c^n diam while the residual is still large.
    auto sys = fixtures::cantor(729, {1.0, 0.5}, TNorm::product());
    auto r = solve(sys, std::nullopt, {0.05, 100, 256});
    CHECK(r.report.iterations == 3);  // (1/3)^3 = 0.037 <= 0.05 < (1/3)^2
    CHECK(r.report.stopped_by == SolveReport::Stop::bound);
}

TEST_CASE("residual") {
    auto sys = fixtures::cantor(729, {1.0, 0.5}, TNorm::product());
    LevelGrid levels(256);
    CHECK(residual(sys, StarMeasure::full(sys.space_ptr(), TNorm::product()), levels) > 0.0);

    auto fixed = solve(sys, std::nullopt, {1e-9, 100, 256}).measure;
    CHECK(residual(sys, fixed, levels) == 0.0);
    std::vector<double> v(fixed.values().begin(), fixed.values().end());
    v[364] = 0.75;  // a gap point of the invariant density
    CHECK(residual(sys, StarMeasure(SubDensity(sys.space_ptr(), TNorm::product(), v)), levels) >
          0.0);
}

TEST_CASE("error_bound") {
    CHECK(error_bound(0, 0.5, 2.0) == 2.0);
    CHECK(error_bound(3, 0.5, 1.0) == 0.125);
    CHECK(error_bound(20, 0.5, 1.0) == doctest::Approx(9.5367431640625e-7));
    CHECK_THROWS_AS(error_bound(1, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(error_bound(1, 0.5, 0.0), DomainError);
}

TEST_CASE("uniqueness at grid scale from different seeds") {
    for (const auto& t : all_tnorms) {
        CAPTURE(t.name());
        auto sys = fixtures::cantor(243, {1.0, 0.7}, t);
        const double h = sys.space().spacing();
        LevelGrid levels(128);
        StarMeasure a = StarMeasure::full(sys.space_ptr(), t);
        StarMeasure b = StarMeasure::dirac(sys.space_ptr(), t, 100);
        for (std::size_t n = 1; n <= 12; ++n) {
            a = psi(sys, a);
            b = psi(sys, b);
            REQUIRE(hypograph_distance(a, b, levels) <=
                    error_bound(n, 1.0 / 3, 1.0) + 2 * h + 2.0 / 128);
        }
    }
}
