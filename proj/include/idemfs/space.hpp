#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace idemfs {

/// Axis-aligned lattice description attached to grid spaces.
struct GridShape {
    std::size_t dims = 1;
    std::array<std::size_t, 2> counts{1, 1};
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{0.0, 0.0};

    double step(std::size_t axis) const {
        return (hi[axis] - lo[axis]) / static_cast<double>(counts[axis] - 1);
    }
    /// Coordinate of lattice index `i` along `axis`.
    double coordinate(std::size_t axis, std::size_t i) const {
        return ((hi[axis] - lo[axis]) * static_cast<double>(i)) /
                   static_cast<double>(counts[axis] - 1) +
               lo[axis];
    }
};

/// A finite metric space: the discretization of a compact metric space.
///
/// Points are indexed 0..size()-1. Spaces carry either Euclidean
/// coordinates (dimension 1 or 2, stored per axis) or an explicit
/// distance matrix. Immutable after construction.
class FiniteMetricSpace {
public:
    /// `coords` is point-major: point i occupies coords[i*dim .. i*dim+dim).
    static FiniteMetricSpace from_coordinates(std::size_t dim, std::span<const double> coords);
    /// Row-major n x n matrix. Only symmetry, zero diagonal and positivity
    /// are checked here; see validate_metric() for the triangle inequality.
    static FiniteMetricSpace from_distance_matrix(std::size_t n, std::vector<double> matrix);

    std::size_t size() const { return size_; }
    /// Coordinate dimension, 0 for matrix-defined spaces.
    std::size_t dimension() const { return dim_; }
    bool has_coordinates() const { return dim_ > 0; }
    std::span<const double> axis(std::size_t k) const { return axes_[k]; }
    double coordinate(std::size_t point, std::size_t k) const { return axes_[k][point]; }

    double distance(std::size_t i, std::size_t j) const;
    double diameter() const { return diameter_; }

    const std::optional<GridShape>& grid() const { return grid_; }
    /// Lattice spacing h (largest axis step) for grids; the largest
    /// nearest-neighbour distance otherwise.
    double spacing() const { return spacing_; }

    /// Nearest point to `p` (length dimension()); ties go to the lowest
    /// index. Grids snap each axis independently, which is the same rule.
    std::size_t snap(std::span<const double> p) const;

private:
    FiniteMetricSpace() = default;
    void finish();

    std::size_t size_ = 0;
    std::size_t dim_ = 0;
    std::array<std::vector<double>, 2> axes_;
    std::vector<double> matrix_;
    std::optional<GridShape> grid_;
    double diameter_ = 0.0;
    double spacing_ = 0.0;

    friend std::shared_ptr<const FiniteMetricSpace> grid_1d(std::size_t, double, double);
    friend std::shared_ptr<const FiniteMetricSpace> grid_2d(std::size_t, std::size_t,
                                                            std::array<double, 4>);
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

/// n equally spaced points on [a, b].
SpacePtr grid_1d(std::size_t n, double a, double b);
/// nx * ny lattice over {x0, x1, y0, y1}, row-major (index = iy*nx + ix).
SpacePtr grid_2d(std::size_t nx, std::size_t ny, std::array<double, 4> bounds);

/// Levels {0, 1/m, ..., 1} quantizing the unit segment.
class LevelGrid {
public:
    explicit LevelGrid(std::size_t resolution);

    std::size_t resolution() const { return m_; }
    std::size_t count() const { return m_ + 1; }
    double level(std::size_t k) const { return static_cast<double>(k) / static_cast<double>(m_); }
    /// Largest k with level(k) <= v, for v in [0,1].
    std::size_t floor_index(double v) const;
    /// The levels as a one-dimensional space (same coordinates as level()).
    SpacePtr as_space() const;

private:
    std::size_t m_;
};

/// X x Y under the sup metric max(d_X, d_Y).
class ProductSpace {
public:
    struct Point {
        std::size_t x;
        std::size_t y;
        auto operator<=>(const Point&) const = default;
    };

    ProductSpace(SpacePtr x, SpacePtr y);

    const FiniteMetricSpace& first() const { return *x_; }
    const FiniteMetricSpace& second() const { return *y_; }
    double distance(Point p, Point q) const;
    double diameter() const;

private:
    SpacePtr x_, y_;
};

/// The sup metric on X x levels.
ProductSpace product_sup_metric(SpacePtr space, const LevelGrid& levels);

/// Hausdorff distance between nonempty point sets (given as indices).
double hausdorff(const FiniteMetricSpace& space, std::span<const std::size_t> a,
                 std::span<const std::size_t> b);
double hausdorff(const ProductSpace& space, std::span<const ProductSpace::Point> a,
                 std::span<const ProductSpace::Point> b);

/// Checks d_H(A, B) <= diam(X) for A, B in X x Y with equal projections
/// onto Y. Throws DomainError when the projections differ.
bool projection_bound_check(const ProductSpace& space, std::span<const ProductSpace::Point> a,
                            std::span<const ProductSpace::Point> b);

/// Triangle inequality check: exhaustive for |X| <= 512, otherwise 10^4
/// seeded random triples. Throws ValidationError(metric) on failure.
void validate_metric(const FiniteMetricSpace& space, unsigned long long seed = 0x5eed);

}  // namespace idemfs
