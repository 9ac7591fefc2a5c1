#include "idemfs/tnorm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "idemfs/errors.hpp"

namespace idemfs {

namespace {

void require_unit(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << "t-norm argument " << what << " = " << v << " outside [0,1]";
        throw DomainError(os.str());
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

TNorm TNorm::hamacher(double p) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
        throw DomainError("hamacher parameter must be a finite value >= 0");
    }
    return {Family::hamacher, p};
}

TNorm TNorm::parse(std::string_view name) {
    name = trim(name);
    if (name == "min" || name == "minimum") return minimum();
    if (name == "product" || name == "prod") return product();
    if (name == "lukasiewicz") return lukasiewicz();
    if (name.starts_with("hamacher(") && name.ends_with(")")) {
        auto inner = trim(name.substr(9, name.size() - 10));
        double p = 0.0;
        auto [ptr, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), p);
        if (ec != std::errc{} || ptr != inner.data() + inner.size()) {
            throw DomainError("bad hamacher parameter in '" + std::string(name) + "'");
        }
        return hamacher(p);
    }
    throw DomainError("unknown t-norm '" + std::string(name) + "'");
}

std::string TNorm::name() const {
    switch (family) {
        case Family::minimum: return "min";
        case Family::product: return "product";
        case Family::lukasiewicz: return "lukasiewicz";
        case Family::hamacher: {
            std::ostringstream os;
            os.precision(17);
            os << "hamacher(" << parameter << ")";
            return os.str();
        }
    }
    return "?";
}

double apply(const TNorm& t, double a, double b) {
    require_unit(a, "a");
    require_unit(b, "b");
    return apply_unchecked(t, a, b);
}

double fold(const TNorm& t, std::span<const double> weights) {
    double acc = 1.0;
    for (double w : weights) {
        require_unit(w, "weight");
        acc = apply_unchecked(t, acc, w);
    }
    return acc;
}

double lipschitz_constant(const TNorm& t) {
    if (t.family == TNorm::Family::hamacher && t.parameter > 2.0) {
        double p = t.parameter;
        return p * p / (4.0 * (p - 1.0));
    }
    return 1.0;
}

AxiomReport check_axioms(const TNorm& t, std::size_t triples, unsigned long long seed,
                         double tolerance) {
    AxiomReport rep;
    rep.triples = triples;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double lip = lipschitz_constant(t);

    auto note = [&](double violation, const char* law, double a, double b, double c) {
        if (violation <= tolerance) return;
        ++rep.failures;
        rep.worst_violation = std::max(rep.worst_violation, violation);
        if (rep.first_failure.empty()) {
            std::ostringstream os;
            os.precision(17);
            os << law << " fails for " << t.name() << " at (" << a << ", " << b << ", " << c
               << "), violation " << violation;
            rep.first_failure = os.str();
        }
    };

    for (std::size_t k = 0; k < triples; ++k) {
        double a = u(rng), b = u(rng), c = u(rng);
        // Include the corners now and then; they are where Hamacher degenerates.
        if (k % 50 == 0) a = 0.0;
        if (k % 70 == 0) b = 0.0;
        if (k % 90 == 0) c = 1.0;

        double ab = apply_unchecked(t, a, b);
        note(std::abs(apply_unchecked(t, 1.0, a) - a), "unit law", a, b, c);
        note(std::abs(ab - apply_unchecked(t, b, a)), "commutativity", a, b, c);
        note(std::abs(apply_unchecked(t, a, apply_unchecked(t, b, c)) -
                      apply_unchecked(t, ab, c)),
             "associativity", a, b, c);
        // Monotonicity: raising either argument to c (when larger) cannot lower the value.
        double a2 = std::max(a, c), b2 = std::max(b, c);
        note(ab - apply_unchecked(t, a2, b2), "monotonicity", a, b, c);
        note(std::max(ab - std::min(a, b), -ab), "bounds", a, b, c);
        double moved = apply_unchecked(t, c, b);
        note(std::abs(ab - moved) - lip * std::abs(a - c), "continuity", a, b, c);
    }
    return rep;
}

}  // namespace idemfs
