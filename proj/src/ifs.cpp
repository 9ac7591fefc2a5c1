#include "idemfs/ifs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "idemfs/errors.hpp"

namespace idemfs {

void AffineSpec::apply(std::span<const double> in, std::span<double> out) const {
    const std::size_t d = dimension();
    for (std::size_t r = 0; r < d; ++r) {
        double acc = translation[r];
        for (std::size_t c = 0; c < d; ++c) acc += matrix[r * d + c] * in[c];
        out[r] = acc;
    }
}

double AffineSpec::operator_norm() const {
    if (dimension() == 1) return std::fabs(matrix[0]);
    // Largest singular value of [[a, b], [c, d]].
    double a = matrix[0], b = matrix[1], c = matrix[2], d = matrix[3];
    double fro2 = a * a + b * b + c * c + d * d;
    double det = a * d - b * c;
    double disc = std::max(0.0, fro2 * fro2 - 4.0 * det * det);
    return std::sqrt((fro2 + std::sqrt(disc)) / 2.0);
}

AffineSpec AffineSpec::after(const AffineSpec& inner) const {
    const std::size_t d = dimension();
    AffineSpec out{std::vector<double>(d * d, 0.0), std::vector<double>(d, 0.0)};
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            double acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) acc += matrix[r * d + k] * inner.matrix[k * d + c];
            out.matrix[r * d + c] = acc;
        }
    }
    apply(inner.translation, out.translation);
    return out;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

PointMap snap_affine(const SpacePtr& space, const AffineSpec& f, std::size_t index) {
    const auto& X = *space;
    const std::size_t d = X.dimension();
    if (d == 0) {
        throw ValidationError(ValidationError::Kind::coverage,
                              "affine map on a space without coordinates");
    }
    if (f.dimension() != d || f.matrix.size() != d * d) {
        throw ValidationError(ValidationError::Kind::coverage,
                              "map " + std::to_string(index) + " has dimension " +
                                  std::to_string(f.dimension()) + ", space has " +
                                  std::to_string(d));
    }
    std::array<double, 2> lo{INFINITY, INFINITY}, hi{-INFINITY, -INFINITY};
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            lo[k] = std::min(lo[k], X.coordinate(i, k));
            hi[k] = std::max(hi[k], X.coordinate(i, k));
        }
    }
    std::array<double, 2> reach{};
    for (std::size_t k = 0; k < d; ++k) {
        reach[k] = X.grid() ? X.grid()->step(k) : X.spacing();
    }

    PointMap out{space, space, std::vector<std::size_t>(X.size())};
    std::array<double, 2> p{}, q{};
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (std::size_t k = 0; k < d; ++k) p[k] = X.coordinate(i, k);
        f.apply(std::span(p.data(), d), std::span(q.data(), d));
        for (std::size_t k = 0; k < d; ++k) {
            // Small tolerance so images landing exactly one spacing out still count.
            double slack = reach[k] * (1.0 + 1e-9);
            if (q[k] < lo[k] - slack || q[k] > hi[k] + slack) {
                throw ValidationError(ValidationError::Kind::coverage,
                                      "coverage error: map " + std::to_string(index) +
                                          " sends point " + std::to_string(i) +
                                          " beyond one spacing outside the grid");
            }
        }
        out.table[i] = X.snap(std::span<const double>(q.data(), d));
    }
    return out;
}

PointMap tabulate(const SpacePtr& space, const TabulatedSpec& f, std::size_t index) {
    const std::size_t n = space->size();
    PointMap out{space, space, std::vector<std::size_t>(n, n)};
    for (auto [from, to] : f.pairs) {
        if (from >= n || to >= n) {
            throw ValidationError(ValidationError::Kind::coverage,
                                  "map " + std::to_string(index) + " refers to a missing point");
        }
        if (out.table[from] != n) {
            throw ValidationError(ValidationError::Kind::coverage,
                                  "map " + std::to_string(index) + " assigns point " +
                                      std::to_string(from) + " twice");
        }
        out.table[from] = to;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (out.table[i] == n) {
            throw ValidationError(ValidationError::Kind::coverage,
                                  "map " + std::to_string(index) + " leaves point " +
                                      std::to_string(i) + " unassigned");
        }
    }
    return out;
}

double table_constant(const FiniteMetricSpace& X, const PointMap& f) {
    double worst = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = i + 1; j < X.size(); ++j)
            worst = std::max(worst, X.distance(f.table[i], f.table[j]) / X.distance(i, j));
    return worst;
}

}  // namespace

IFSSystem IFSSystem::validate(SpacePtr space, std::vector<MapSpec> maps,
                              std::vector<double> weights, TNorm tnorm) {
    if (!space) throw DomainError("system without a space");
    if (maps.empty()) throw DomainError("system needs at least one map");
    if (weights.size() != maps.size()) {
        throw ValidationError(ValidationError::Kind::weight,
                              "weight error: " + std::to_string(weights.size()) +
                                  " weights for " + std::to_string(maps.size()) + " maps");
    }
    double top = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0 && w <= 1.0)) {
            throw ValidationError(ValidationError::Kind::weight,
                                  "weight error: weight " + fmt(w) + " outside [0,1]");
        }
        top = std::max(top, w);
    }
    if (std::abs(top - 1.0) > 1e-12) {
        throw ValidationError(ValidationError::Kind::weight,
                              "weight error: max λ = " + fmt(top));
    }

    IFSSystem sys;
    sys.space_ = space;
    sys.weights_ = std::move(weights);
    sys.tnorm_ = tnorm;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        ContractionMap m;
        if (const auto* a = std::get_if<AffineSpec>(&maps[i])) {
            m.snapped_ = snap_affine(space, *a, i);
            m.constant_ = a->operator_norm();
        } else {
            m.snapped_ = tabulate(space, std::get<TabulatedSpec>(maps[i]), i);
            m.constant_ = table_constant(*space, m.snapped_);
        }
        if (!(m.constant_ < 1.0)) {
            throw ValidationError(ValidationError::Kind::not_contraction,
                                  "not-a-contraction error: map " + std::to_string(i) +
                                      " has constant " + fmt(m.constant_));
        }
        m.spec_ = std::move(maps[i]);
        sys.contraction_ = std::max(sys.contraction_, m.constant_);
        sys.maps_.push_back(std::move(m));
    }
    return sys;
}

StarMeasure psi(const IFSSystem& system, const StarMeasure& mu) {
    if (mu.density().space_ptr() != system.space_ptr()) {
        throw DomainError("psi: measure lives on a different space");
    }
    std::vector<SubDensity> parts;
    parts.reserve(system.maps().size());
    for (std::size_t i = 0; i < system.maps().size(); ++i) {
        parts.push_back(scale(system.weights()[i],
                              pushforward(system.maps()[i].snapped(), mu.density())));
    }
    return StarMeasure(max_union(parts));
}

std::string to_string(SolveReport::Stop stop) {
    switch (stop) {
        case SolveReport::Stop::residual: return "residual";
        case SolveReport::Stop::bound: return "bound";
        case SolveReport::Stop::max_iterations: return "maxIterations";
    }
    return "?";
}

double error_bound(std::size_t n, double c, double diam) {
    if (!(c >= 0.0 && c < 1.0)) throw DomainError("error_bound: contraction constant must be in [0,1)");
    if (!(diam > 0.0)) throw DomainError("error_bound: diameter must be positive");
    return std::pow(c, static_cast<double>(n)) * diam;
}

double residual(const IFSSystem& system, const StarMeasure& mu, const LevelGrid& levels) {
    return hypograph_distance(mu.density(), psi(system, mu).density(), levels);
}

SolveResult solve(const IFSSystem& system, const std::optional<StarMeasure>& seed,
                  const SolveOptions& options) {
    if (!(options.tol > 0.0)) throw DomainError("solve: tol must be positive");
    const auto start = std::chrono::steady_clock::now();
    const LevelGrid levels(options.level_resolution);
    const double c = system.contraction();
    const double diam = system.space().diameter();

    SolveReport rep;
    rep.contraction = c;
    rep.diameter = diam;
    rep.spacing = system.space().spacing();
    rep.level_resolution = options.level_resolution;
    rep.snap_slack = rep.spacing / (2.0 * (1.0 - c));

    StarMeasure mu = seed ? *seed : StarMeasure::full(system.space_ptr(), system.tnorm());
    if (mu.density().space_ptr() != system.space_ptr()) {
        throw DomainError("solve: seed lives on a different space");
    }

    rep.apriori_bound = error_bound(0, c, diam);
    if (rep.apriori_bound <= options.tol) {
        rep.final_residual = residual(system, mu, levels);
        rep.stopped_by = SolveReport::Stop::bound;
    } else {
        while (true) {
            StarMeasure next = psi(system, mu);
            ++rep.iterations;
            rep.final_residual = hypograph_distance(mu.density(), next.density(), levels);
            rep.apriori_bound = error_bound(rep.iterations, c, diam);
            mu = std::move(next);
            if (rep.final_residual <= options.tol) {
                rep.stopped_by = SolveReport::Stop::residual;
                break;
            }
            if (rep.apriori_bound <= options.tol) {
                rep.stopped_by = SolveReport::Stop::bound;
                break;
            }
            if (rep.iterations >= options.max_iter) {
                rep.stopped_by = SolveReport::Stop::max_iterations;
                break;
            }
        }
    }
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(mu), rep};
}

}  // namespace idemfs
