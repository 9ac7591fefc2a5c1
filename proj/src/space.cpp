#include "idemfs/space.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "idemfs/errors.hpp"
#include "idemfs/kernels.hpp"

namespace idemfs {

FiniteMetricSpace FiniteMetricSpace::from_coordinates(std::size_t dim,
                                                      std::span<const double> coords) {
    if (dim != 1 && dim != 2) throw DomainError("coordinate dimension must be 1 or 2");
    if (coords.size() % dim != 0 || coords.empty()) {
        throw DomainError("coordinate array length is not a positive multiple of dimension");
    }
    FiniteMetricSpace s;
    s.dim_ = dim;
    s.size_ = coords.size() / dim;
    for (std::size_t k = 0; k < dim; ++k) s.axes_[k].resize(s.size_);
    for (std::size_t i = 0; i < s.size_; ++i) {
        for (std::size_t k = 0; k < dim; ++k) {
            double v = coords[i * dim + k];
            if (!std::isfinite(v)) throw DomainError("non-finite coordinate");
            s.axes_[k][i] = v;
        }
    }
    s.finish();
    return s;
}

FiniteMetricSpace FiniteMetricSpace::from_distance_matrix(std::size_t n,
                                                          std::vector<double> matrix) {
    if (n == 0 || matrix.size() != n * n) throw DomainError("distance matrix must be n x n");
    for (std::size_t i = 0; i < n; ++i) {
        if (matrix[i * n + i] != 0.0) throw ValidationError(ValidationError::Kind::metric,
                                                            "nonzero self-distance");
        for (std::size_t j = i + 1; j < n; ++j) {
            double a = matrix[i * n + j], b = matrix[j * n + i];
            if (a != b) {
                throw ValidationError(ValidationError::Kind::metric, "asymmetric distance");
            }
            if (!(a > 0.0) || !std::isfinite(a)) {
                throw ValidationError(ValidationError::Kind::metric,
                                      "distance between distinct points must be positive");
            }
        }
    }
    FiniteMetricSpace s;
    s.size_ = n;
    s.matrix_ = std::move(matrix);
    s.finish();
    return s;
}

void FiniteMetricSpace::finish() {
    if (!grid_) {
        double diam = 0.0;
        for (std::size_t i = 0; i < size_; ++i)
            for (std::size_t j = i + 1; j < size_; ++j) diam = std::max(diam, distance(i, j));
        diameter_ = diam;
        double h = 0.0;
        for (std::size_t i = 0; i < size_ && size_ > 1; ++i) {
            double nn = INFINITY;
            for (std::size_t j = 0; j < size_; ++j)
                if (j != i) nn = std::min(nn, distance(i, j));
            h = std::max(h, nn);
        }
        spacing_ = h;
        if (dim_ > 0) {
            for (std::size_t i = 0; i < size_; ++i)
                for (std::size_t j = i + 1; j < size_; ++j)
                    if (distance(i, j) == 0.0)
                        throw ValidationError(ValidationError::Kind::metric, "duplicate point");
        }
    } else {
        // The max pairwise distance of a rectangular lattice is its diagonal.
        diameter_ = distance(0, size_ - 1);
        spacing_ = 0.0;
        for (std::size_t k = 0; k < grid_->dims; ++k) spacing_ = std::max(spacing_, grid_->step(k));
    }
}

double FiniteMetricSpace::distance(std::size_t i, std::size_t j) const {
    if (dim_ == 0) return matrix_[i * size_ + j];
    double dx = axes_[0][i] - axes_[0][j];
    if (dim_ == 1) return std::fabs(dx);
    double dy = axes_[1][i] - axes_[1][j];
    return std::sqrt(dx * dx + dy * dy);
}

namespace {

std::size_t snap_axis(const GridShape& g, std::size_t axis, double v) {
    const std::size_t n = g.counts[axis];
    double t = (v - g.lo[axis]) / g.step(axis);
    long long guess = static_cast<long long>(std::floor(t));
    guess = std::clamp<long long>(guess, 0, static_cast<long long>(n) - 1);
    std::size_t best = static_cast<std::size_t>(guess);
    double best_d = std::fabs(v - g.coordinate(axis, best));
    // floor() may be off by one after rounding; look at both neighbours.
    for (long long c = guess - 1; c <= guess + 1; ++c) {
        if (c < 0 || c >= static_cast<long long>(n)) continue;
        double d = std::fabs(v - g.coordinate(axis, static_cast<std::size_t>(c)));
        if (d < best_d || (d == best_d && static_cast<std::size_t>(c) < best)) {
            best = static_cast<std::size_t>(c);
            best_d = d;
        }
    }
    return best;
}

}  // namespace

std::size_t FiniteMetricSpace::snap(std::span<const double> p) const {
    if (dim_ == 0) throw DomainError("cannot snap coordinates in a matrix-defined space");
    if (p.size() != dim_) throw DomainError("snap: point dimension mismatch");
    if (grid_) {
        std::size_t ix = snap_axis(*grid_, 0, p[0]);
        if (dim_ == 1) return ix;
        std::size_t iy = snap_axis(*grid_, 1, p[1]);
        return iy * grid_->counts[0] + ix;
    }
    std::size_t best = 0;
    double best_d = INFINITY;
    for (std::size_t i = 0; i < size_; ++i) {
        double dx = p[0] - axes_[0][i];
        double d = dim_ == 1 ? std::fabs(dx)
                             : std::sqrt(dx * dx + (p[1] - axes_[1][i]) * (p[1] - axes_[1][i]));
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

SpacePtr grid_1d(std::size_t n, double a, double b) {
    if (n < 2) throw DomainError("grid_1d needs at least 2 points");
    if (!(a < b)) throw DomainError("grid_1d needs a < b");
    FiniteMetricSpace s;
    GridShape g;
    g.dims = 1;
    g.counts = {n, 1};
    g.lo = {a, 0.0};
    g.hi = {b, 0.0};
    s.dim_ = 1;
    s.size_ = n;
    s.axes_[0].resize(n);
    for (std::size_t i = 0; i < n; ++i) s.axes_[0][i] = g.coordinate(0, i);
    s.grid_ = g;
    s.finish();
    return std::make_shared<const FiniteMetricSpace>(std::move(s));
}

SpacePtr grid_2d(std::size_t nx, std::size_t ny, std::array<double, 4> bounds) {
    if (nx < 2 || ny < 2) throw DomainError("grid_2d needs at least 2 points per axis");
    if (!(bounds[0] < bounds[1]) || !(bounds[2] < bounds[3])) {
        throw DomainError("grid_2d: degenerate rectangle");
    }
    FiniteMetricSpace s;
    GridShape g;
    g.dims = 2;
    g.counts = {nx, ny};
    g.lo = {bounds[0], bounds[2]};
    g.hi = {bounds[1], bounds[3]};
    s.dim_ = 2;
    s.size_ = nx * ny;
    s.axes_[0].resize(s.size_);
    s.axes_[1].resize(s.size_);
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            s.axes_[0][iy * nx + ix] = g.coordinate(0, ix);
            s.axes_[1][iy * nx + ix] = g.coordinate(1, iy);
        }
    }
    s.grid_ = g;
    s.finish();
    return std::make_shared<const FiniteMetricSpace>(std::move(s));
}

LevelGrid::LevelGrid(std::size_t resolution) : m_(resolution) {
    if (resolution == 0) throw DomainError("level resolution must be positive");
}

std::size_t LevelGrid::floor_index(double v) const {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("level value outside [0,1]");
    double scaled = v * static_cast<double>(m_);
    auto k = static_cast<std::size_t>(std::floor(scaled));
    // v*m can land just below an integer that v actually reaches.
    if (k < m_ && level(k + 1) <= v) ++k;
    if (k > 0 && level(k) > v) --k;
    return std::min(k, m_);
}

SpacePtr LevelGrid::as_space() const { return grid_1d(m_ + 1, 0.0, 1.0); }

ProductSpace::ProductSpace(SpacePtr x, SpacePtr y) : x_(std::move(x)), y_(std::move(y)) {
    if (!x_ || !y_) throw DomainError("product of null spaces");
}

double ProductSpace::distance(Point p, Point q) const {
    return std::max(x_->distance(p.x, q.x), y_->distance(p.y, q.y));
}

double ProductSpace::diameter() const { return std::max(x_->diameter(), y_->diameter()); }

ProductSpace product_sup_metric(SpacePtr space, const LevelGrid& levels) {
    return ProductSpace(std::move(space), levels.as_space());
}

namespace {

struct Gathered {
    std::vector<double> x, y, level;
    kernels::PointBlock block() const {
        return {x.data(), y.empty() ? nullptr : y.data(), level.empty() ? nullptr : level.data(),
                x.size()};
    }
};

Gathered gather(const FiniteMetricSpace& s, std::span<const std::size_t> idx) {
    Gathered g;
    g.x.reserve(idx.size());
    for (std::size_t i : idx) {
        if (i >= s.size()) throw DomainError("point index out of range");
        g.x.push_back(s.coordinate(i, 0));
        if (s.dimension() == 2) g.y.push_back(s.coordinate(i, 1));
    }
    return g;
}

template <class Set, class Dist>
double directed_generic(const Set& a, const Set& b, Dist dist) {
    double sup = 0.0;
    for (const auto& p : a) {
        double inf = INFINITY;
        for (const auto& q : b) inf = std::min(inf, dist(p, q));
        sup = std::max(sup, inf);
    }
    return sup;
}

}  // namespace

double hausdorff(const FiniteMetricSpace& space, std::span<const std::size_t> a,
                 std::span<const std::size_t> b) {
    if (a.empty() || b.empty()) throw DomainError("hausdorff of an empty set");
    if (space.has_coordinates()) {
        Gathered ga = gather(space, a), gb = gather(space, b);
        const auto& k = kernels::active();
        return std::max(k.directed(ga.block(), gb.block(), kernels::LevelMetric::none),
                        k.directed(gb.block(), ga.block(), kernels::LevelMetric::none));
    }
    for (auto i : a) if (i >= space.size()) throw DomainError("point index out of range");
    for (auto i : b) if (i >= space.size()) throw DomainError("point index out of range");
    auto d = [&](std::size_t i, std::size_t j) { return space.distance(i, j); };
    return std::max(directed_generic(a, b, d), directed_generic(b, a, d));
}

double hausdorff(const ProductSpace& space, std::span<const ProductSpace::Point> a,
                 std::span<const ProductSpace::Point> b) {
    if (a.empty() || b.empty()) throw DomainError("hausdorff of an empty set");
    const auto& X = space.first();
    const auto& Y = space.second();
    auto in_range = [&](const ProductSpace::Point& p) {
        if (p.x >= X.size() || p.y >= Y.size()) throw DomainError("product point out of range");
    };
    for (const auto& p : a) in_range(p);
    for (const auto& p : b) in_range(p);

    if (X.has_coordinates() && Y.dimension() == 1) {
        auto gather_pairs = [&](std::span<const ProductSpace::Point> s) {
            Gathered g;
            for (const auto& p : s) {
                g.x.push_back(X.coordinate(p.x, 0));
                if (X.dimension() == 2) g.y.push_back(X.coordinate(p.x, 1));
                g.level.push_back(Y.coordinate(p.y, 0));
            }
            return g;
        };
        Gathered ga = gather_pairs(a), gb = gather_pairs(b);
        const auto& k = kernels::active();
        return std::max(k.directed(ga.block(), gb.block(), kernels::LevelMetric::absolute),
                        k.directed(gb.block(), ga.block(), kernels::LevelMetric::absolute));
    }
    auto d = [&](const ProductSpace::Point& p, const ProductSpace::Point& q) {
        return space.distance(p, q);
    };
    return std::max(directed_generic(a, b, d), directed_generic(b, a, d));
}

bool projection_bound_check(const ProductSpace& space, std::span<const ProductSpace::Point> a,
                            std::span<const ProductSpace::Point> b) {
    if (a.empty() || b.empty()) throw DomainError("projection_bound_check: empty set");
    std::set<std::size_t> pa, pb;
    for (const auto& p : a) pa.insert(p.y);
    for (const auto& p : b) pb.insert(p.y);
    if (pa != pb) throw DomainError("projection_bound_check: projections onto Y differ");
    return hausdorff(space, a, b) <= space.first().diameter();
}

void validate_metric(const FiniteMetricSpace& space, unsigned long long seed) {
    const std::size_t n = space.size();
    const double slack = 1e-12 * std::max(1.0, space.diameter());
    auto check = [&](std::size_t p, std::size_t q, std::size_t r) {
        double lhs = space.distance(p, r);
        double rhs = space.distance(p, q) + space.distance(q, r);
        if (lhs > rhs + slack) {
            std::ostringstream os;
            os << "triangle inequality fails at (" << p << ", " << q << ", " << r << "): " << lhs
               << " > " << rhs;
            throw ValidationError(ValidationError::Kind::metric, os.str());
        }
    };
    if (n <= 512) {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t r = p + 1; r < n; ++r) check(p, q, r);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (int k = 0; k < 10000; ++k) check(pick(rng), pick(rng), pick(rng));
    }
}

}  // namespace idemfs
