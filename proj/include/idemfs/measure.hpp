#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "idemfs/space.hpp"
#include "idemfs/tnorm.hpp"

namespace idemfs {

/// A field of levels in [0,1] over a finite space: the pointwise top of a
/// saturated subset of X x [0,1]. No normalization is required; this is
/// what the scalar action and unions produce.
class SubDensity {
public:
    SubDensity(SpacePtr space, TNorm tnorm, std::vector<double> values);

    static SubDensity constant(SpacePtr space, TNorm tnorm, double value);

    const FiniteMetricSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    const TNorm& tnorm() const { return tnorm_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }
    double max() const;

    bool operator==(const SubDensity& o) const {
        return space_ == o.space_ && tnorm_ == o.tnorm_ && values_ == o.values_;
    }

private:
    SpacePtr space_;
    TNorm tnorm_;
    std::vector<double> values_;
};

/// An idempotent *-measure, stored as a density whose maximum is 1.
class StarMeasure {
public:
    /// Throws ValidationError(saturation) unless max density is 1 (within 1e-12).
    explicit StarMeasure(SubDensity density);

    /// Density identically 1: the hypograph X x [0,1].
    static StarMeasure full(SpacePtr space, TNorm tnorm);
    static StarMeasure dirac(SpacePtr space, TNorm tnorm, std::size_t point);

    const SubDensity& density() const { return density_; }
    operator const SubDensity&() const { return density_; }
    const FiniteMetricSpace& space() const { return density_.space(); }
    const TNorm& tnorm() const { return density_.tnorm(); }
    std::span<const double> values() const { return density_.values(); }
    double operator[](std::size_t i) const { return density_[i]; }
    std::size_t size() const { return density_.size(); }

    bool operator==(const StarMeasure& o) const { return density_ == o.density_; }

private:
    SubDensity density_;
};

/// A test function phi: X -> [0,1]. On a finite space every assignment is
/// continuous.
class TestFunction {
public:
    TestFunction(SpacePtr space, std::vector<double> values);
    static TestFunction constant(SpacePtr space, double c);

    const SpacePtr& space_ptr() const { return space_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    SpacePtr space_;
    std::vector<double> values_;
};

/// An explicit finite subset of X x levels, stored as a membership bitmap.
class SaturatedSet {
public:
    using Point = ProductSpace::Point;  // (point index, level index)

    /// Builds the set from arbitrary members; no invariants are enforced.
    static SaturatedSet from_members(SpacePtr space, LevelGrid levels,
                                     std::span<const Point> members);

    const SpacePtr& space_ptr() const { return space_; }
    const LevelGrid& levels() const { return levels_; }
    bool contains(std::size_t point, std::size_t level) const {
        return bits_[point * levels_.count() + level] != 0;
    }
    std::vector<Point> members() const;
    std::size_t member_count() const;

    /// Conditions on elements of the hyperspace of measures: some (x, 1)
    /// present (only when `require_top`), X x {0} contained, and downward
    /// closed in the level coordinate.
    bool meets_top() const;
    bool contains_zero_section() const;
    bool is_downward_closed() const;
    bool satisfies_conditions(bool require_top = true) const {
        return (!require_top || meets_top()) && contains_zero_section() && is_downward_closed();
    }

    bool operator==(const SaturatedSet& o) const {
        return space_ == o.space_ && levels_.resolution() == o.levels_.resolution() &&
               bits_ == o.bits_;
    }

private:
    SaturatedSet(SpacePtr space, LevelGrid levels);

    SpacePtr space_;
    LevelGrid levels_;
    std::vector<std::uint8_t> bits_;
};

/// A map between finite spaces, given by its point table.
struct PointMap {
    SpacePtr from;
    SpacePtr to;
    std::vector<std::size_t> table;

    static PointMap identity(SpacePtr space);
    static PointMap compose(const PointMap& outer, const PointMap& inner);  // outer after inner
};

/// Hypograph quantized down onto the level grid, plus the zero section.
SaturatedSet to_saturated(const SubDensity& density, const LevelGrid& levels);
/// Top level per point. Throws ValidationError(saturation) when the set is
/// not downward closed or misses part of the zero section.
SubDensity from_saturated(const SaturatedSet& set, TNorm tnorm);

/// max over x of T(density(x), phi(x)).
double evaluate(const StarMeasure& mu, const TestFunction& phi);
double evaluate(const SubDensity& mu, const TestFunction& phi);

/// density'(y) = max { density(x) : f(x) = y }, 0 off the image.
StarMeasure pushforward(const PointMap& f, const StarMeasure& mu);
SubDensity pushforward(const PointMap& f, const SubDensity& mu);

/// Scalar action: density'(x) = T(r, density(x)).
SubDensity scale(double r, const SubDensity& mu);

/// Pointwise maximum (union of hypographs).
SubDensity max_union(std::span<const SubDensity> items);

/// max over `tests` of |mu(phi) - nu(phi)|.
double weakstar_distance(const StarMeasure& mu, const StarMeasure& nu,
                         std::span<const TestFunction> tests);

/// Hausdorff distance, under the sup metric on X x [0,1], between the
/// quantized hypographs of two densities. Equal to hausdorff() applied to
/// the two to_saturated() sets, computed in O(|X|^2) using saturation.
double hypograph_distance(const SubDensity& a, const SubDensity& b, const LevelGrid& levels);

}  // namespace idemfs
