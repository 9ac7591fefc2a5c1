#pragma once

#include <span>
#include <string>
#include <string_view>

namespace idemfs {

/// A continuous triangular norm on [0,1].
///
/// Only closed-form continuous families are admitted. Hamacher uses
/// `parameter` p >= 0:  T(a,b) = ab / (p + (1-p)(a + b - ab)), with
/// T(0,0) = 0 as the continuous extension at p = 0.
struct TNorm {
    enum class Family { minimum, product, lukasiewicz, hamacher };

    Family family = Family::product;
    double parameter = 0.0;

    static TNorm minimum() { return {Family::minimum, 0.0}; }
    static TNorm product() { return {Family::product, 0.0}; }
    static TNorm lukasiewicz() { return {Family::lukasiewicz, 0.0}; }
    static TNorm hamacher(double p);

    /// Parses "min", "product", "lukasiewicz" or "hamacher(p)".
    static TNorm parse(std::string_view name);
    std::string name() const;

    bool operator==(const TNorm& o) const {
        return family == o.family && (family != Family::hamacher || parameter == o.parameter);
    }
};

/// T(a, b); throws DomainError when a or b lies outside [0,1].
double apply(const TNorm& t, double a, double b);

/// Same as apply() without range checks. Callers guarantee a, b in [0,1].
inline double apply_unchecked(const TNorm& t, double a, double b) {
    switch (t.family) {
        case TNorm::Family::minimum:
            return a < b ? a : b;
        case TNorm::Family::product:
            return a * b;
        case TNorm::Family::lukasiewicz: {
            double s = (a + b) - 1.0;
            return s > 0.0 ? s : 0.0;
        }
        case TNorm::Family::hamacher: {
            double ab = a * b;
            double den = t.parameter + (1.0 - t.parameter) * ((a + b) - ab);
            return den == 0.0 ? 0.0 : ab / den;
        }
    }
    return 0.0;
}

/// Left fold of apply over `weights`; the empty fold is the unit 1.
double fold(const TNorm& t, std::span<const double> weights);

/// Smallest L with |T(a,b) - T(a',b')| <= L(|a-a'| + |b-b'|) on [0,1]^2.
double lipschitz_constant(const TNorm& t);

/// Result of sampling the axioms on seeded random triples.
struct AxiomReport {
    std::size_t triples = 0;
    std::size_t failures = 0;
    double worst_violation = 0.0;
    std::string first_failure;
};

/// Checks unit law, commutativity, associativity, monotonicity, the
/// min bound and the Lipschitz bound on `triples` random triples.
AxiomReport check_axioms(const TNorm& t, std::size_t triples, unsigned long long seed,
                         double tolerance = 1e-12);

}  // namespace idemfs
