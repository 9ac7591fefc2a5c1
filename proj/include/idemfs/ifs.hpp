#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "idemfs/measure.hpp"
#include "idemfs/space.hpp"
#include "idemfs/tnorm.hpp"

namespace idemfs {

/// x -> M x + t on point coordinates; `matrix` is row-major dim x dim.
struct AffineSpec {
    std::vector<double> matrix;
    std::vector<double> translation;

    std::size_t dimension() const { return translation.size(); }
    void apply(std::span<const double> in, std::span<double> out) const;
    /// Operator 2-norm of the linear part.
    double operator_norm() const;
    /// (*this) after `inner`.
    AffineSpec after(const AffineSpec& inner) const;

    bool operator==(const AffineSpec&) const = default;
};

/// Explicit point -> point assignment, as (from, to) pairs covering every point once.
struct TabulatedSpec {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    bool operator==(const TabulatedSpec&) const = default;
};

using MapSpec = std::variant<AffineSpec, TabulatedSpec>;

/// A validated contraction together with its action on grid points.
/// Affine images are snapped to the nearest point (ties to the lowest index).
class ContractionMap {
public:
    const MapSpec& spec() const { return spec_; }
    bool is_affine() const { return std::holds_alternative<AffineSpec>(spec_); }
    const PointMap& snapped() const { return snapped_; }
    double constant() const { return constant_; }

private:
    friend class IFSSystem;
    MapSpec spec_;
    PointMap snapped_;
    double constant_ = 0.0;
};

/// Contractions f_1..f_k with weights whose maximum is 1, and a t-norm.
/// Only obtainable through validate(), so every instance satisfies its invariants.
class IFSSystem {
public:
    /// Throws ValidationError with kind weight, not_contraction or coverage.
    static IFSSystem validate(SpacePtr space, std::vector<MapSpec> maps,
                              std::vector<double> weights, TNorm tnorm);

    const FiniteMetricSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    const std::vector<ContractionMap>& maps() const { return maps_; }
    const std::vector<double>& weights() const { return weights_; }
    const TNorm& tnorm() const { return tnorm_; }
    /// Common contraction constant: the largest individual constant.
    double contraction() const { return contraction_; }

private:
    SpacePtr space_;
    std::vector<ContractionMap> maps_;
    std::vector<double> weights_;
    TNorm tnorm_;
    double contraction_ = 0.0;
};

/// One application of the operator: max over i of lambda_i (*) f_i-pushforward.
StarMeasure psi(const IFSSystem& system, const StarMeasure& mu);

struct SolveOptions {
    double tol = 1e-6;
    std::size_t max_iter = 10000;
    std::size_t level_resolution = 256;
};

struct SolveReport {
    enum class Stop { residual, bound, max_iterations };

    std::size_t iterations = 0;
    /// Hypograph distance between the last two iterates.
    double final_residual = 0.0;
    /// c^iterations * diam(X).
    double apriori_bound = 0.0;
    Stop stopped_by = Stop::max_iterations;
    double wall_seconds = 0.0;
    double contraction = 0.0;
    double diameter = 0.0;
    double spacing = 0.0;
    std::size_t level_resolution = 0;
    /// Accumulated effect of snapping each step: h / (2 (1 - c)).
    double snap_slack = 0.0;
};

std::string to_string(SolveReport::Stop stop);

struct SolveResult {
    StarMeasure measure;
    SolveReport report;
};

/// Iterates psi from `seed` (default: density 1 everywhere) until the
/// residual or the a priori bound drops to `tol`, or max_iter is reached.
SolveResult solve(const IFSSystem& system, const std::optional<StarMeasure>& seed,
                  const SolveOptions& options = {});

/// Hypograph distance between mu and psi(mu).
double residual(const IFSSystem& system, const StarMeasure& mu, const LevelGrid& levels);

/// c^n * diam.
double error_bound(std::size_t n, double c, double diam);

}  // namespace idemfs
