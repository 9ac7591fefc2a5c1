#include "idemfs/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "idemfs/errors.hpp"
#include "idemfs/kernels.hpp"

namespace idemfs {

namespace {

void require_levels(std::span<const double> values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
            std::ostringstream os;
            os << what << " value " << values[i] << " at point " << i << " outside [0,1]";
            throw DomainError(os.str());
        }
    }
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* op) {
    if (a != b) throw DomainError(std::string(op) + ": arguments live on different spaces");
}

}  // namespace

SubDensity::SubDensity(SpacePtr space, TNorm tnorm, std::vector<double> values)
    : space_(std::move(space)), tnorm_(tnorm), values_(std::move(values)) {
    if (!space_) throw DomainError("density without a space");
    if (values_.size() != space_->size()) throw DomainError("density size differs from space size");
    require_levels(values_, "density");
}

SubDensity SubDensity::constant(SpacePtr space, TNorm tnorm, double value) {
    const std::size_t n = space ? space->size() : 0;
    return SubDensity(std::move(space), tnorm, std::vector<double>(n, value));
}

double SubDensity::max() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, v);
    return m;
}

StarMeasure::StarMeasure(SubDensity density) : density_(std::move(density)) {
    double m = density_.max();
    if (std::abs(m - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "not a *-measure: max density " << m << " != 1";
        throw ValidationError(ValidationError::Kind::saturation, os.str());
    }
}

StarMeasure StarMeasure::full(SpacePtr space, TNorm tnorm) {
    return StarMeasure(SubDensity::constant(std::move(space), tnorm, 1.0));
}

StarMeasure StarMeasure::dirac(SpacePtr space, TNorm tnorm, std::size_t point) {
    if (!space || point >= space->size()) throw DomainError("dirac point out of range");
    std::vector<double> v(space->size(), 0.0);
    v[point] = 1.0;
    return StarMeasure(SubDensity(std::move(space), tnorm, std::move(v)));
}

TestFunction::TestFunction(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
    if (!space_ || values_.size() != space_->size()) {
        throw DomainError("test function size differs from space size");
    }
    require_levels(values_, "test function");
}

TestFunction TestFunction::constant(SpacePtr space, double c) {
    const std::size_t n = space ? space->size() : 0;
    return TestFunction(std::move(space), std::vector<double>(n, c));
}

SaturatedSet::SaturatedSet(SpacePtr space, LevelGrid levels)
    : space_(std::move(space)), levels_(levels), bits_(space_->size() * levels.count(), 0) {}

SaturatedSet SaturatedSet::from_members(SpacePtr space, LevelGrid levels,
                                        std::span<const Point> members) {
    if (!space) throw DomainError("saturated set without a space");
    SaturatedSet s(std::move(space), levels);
    for (const auto& p : members) {
        if (p.x >= s.space_->size() || p.y >= levels.count()) {
            throw DomainError("saturated set member out of range");
        }
        s.bits_[p.x * levels.count() + p.y] = 1;
    }
    return s;
}

std::vector<SaturatedSet::Point> SaturatedSet::members() const {
    std::vector<Point> out;
    const std::size_t L = levels_.count();
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) out.push_back({i / L, i % L});
    return out;
}

std::size_t SaturatedSet::member_count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool SaturatedSet::meets_top() const {
    for (std::size_t x = 0; x < space_->size(); ++x)
        if (contains(x, levels_.resolution())) return true;
    return false;
}

bool SaturatedSet::contains_zero_section() const {
    for (std::size_t x = 0; x < space_->size(); ++x)
        if (!contains(x, 0)) return false;
    return true;
}

bool SaturatedSet::is_downward_closed() const {
    for (std::size_t x = 0; x < space_->size(); ++x) {
        bool seen_gap = false;
        for (std::size_t k = 0; k < levels_.count(); ++k) {
            if (!contains(x, k)) seen_gap = true;
            else if (seen_gap) return false;
        }
    }
    return true;
}

PointMap PointMap::identity(SpacePtr space) {
    PointMap f{space, space, std::vector<std::size_t>(space->size())};
    for (std::size_t i = 0; i < f.table.size(); ++i) f.table[i] = i;
    return f;
}

PointMap PointMap::compose(const PointMap& outer, const PointMap& inner) {
    require_same_space(inner.to, outer.from, "compose");
    PointMap f{inner.from, outer.to, std::vector<std::size_t>(inner.table.size())};
    for (std::size_t i = 0; i < inner.table.size(); ++i) f.table[i] = outer.table[inner.table[i]];
    return f;
}

SaturatedSet to_saturated(const SubDensity& density, const LevelGrid& levels) {
    std::vector<SaturatedSet::Point> members;
    for (std::size_t x = 0; x < density.size(); ++x) {
        std::size_t top = levels.floor_index(density[x]);
        for (std::size_t k = 0; k <= top; ++k) members.push_back({x, k});
    }
    return SaturatedSet::from_members(density.space_ptr(), levels, members);
}

SubDensity from_saturated(const SaturatedSet& set, TNorm tnorm) {
    if (!set.contains_zero_section()) {
        throw ValidationError(ValidationError::Kind::saturation,
                              "saturated set misses part of the zero section");
    }
    if (!set.is_downward_closed()) {
        throw ValidationError(ValidationError::Kind::saturation,
                              "saturated set is not downward closed");
    }
    const auto& levels = set.levels();
    std::vector<double> values(set.space_ptr()->size(), 0.0);
    for (std::size_t x = 0; x < values.size(); ++x) {
        std::size_t top = 0;
        while (top + 1 < levels.count() && set.contains(x, top + 1)) ++top;
        values[x] = levels.level(top);
    }
    return SubDensity(set.space_ptr(), tnorm, std::move(values));
}

double evaluate(const SubDensity& mu, const TestFunction& phi) {
    require_same_space(mu.space_ptr(), phi.space_ptr(), "evaluate");
    return kernels::active().max_apply(mu.tnorm(), mu.values().data(), phi.values().data(),
                                       mu.size());
}

double evaluate(const StarMeasure& mu, const TestFunction& phi) {
    return evaluate(mu.density(), phi);
}

SubDensity pushforward(const PointMap& f, const SubDensity& mu) {
    require_same_space(f.from, mu.space_ptr(), "pushforward");
    if (f.table.size() != mu.size()) throw DomainError("pushforward: map table size mismatch");
    std::vector<double> out(f.to->size(), 0.0);
    for (std::size_t x = 0; x < f.table.size(); ++x) {
        std::size_t y = f.table[x];
        if (y >= out.size()) throw DomainError("pushforward: image outside target space");
        out[y] = std::max(out[y], mu[x]);
    }
    return SubDensity(f.to, mu.tnorm(), std::move(out));
}

StarMeasure pushforward(const PointMap& f, const StarMeasure& mu) {
    return StarMeasure(pushforward(f, mu.density()));
}

SubDensity scale(double r, const SubDensity& mu) {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("scale factor outside [0,1]");
    std::vector<double> out(mu.size());
    kernels::active().scale(mu.tnorm(), r, mu.values().data(), out.data(), out.size());
    return SubDensity(mu.space_ptr(), mu.tnorm(), std::move(out));
}

SubDensity max_union(std::span<const SubDensity> items) {
    if (items.empty()) throw DomainError("max_union of an empty sequence");
    std::vector<double> out(items.front().values().begin(), items.front().values().end());
    for (const auto& item : items.subspan(1)) {
        require_same_space(items.front().space_ptr(), item.space_ptr(), "max_union");
        if (!(item.tnorm() == items.front().tnorm())) {
            throw DomainError("max_union: mixed t-norms");
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], item[i]);
    }
    return SubDensity(items.front().space_ptr(), items.front().tnorm(), std::move(out));
}

double weakstar_distance(const StarMeasure& mu, const StarMeasure& nu,
                         std::span<const TestFunction> tests) {
    if (tests.empty()) throw DomainError("weakstar_distance needs a nonempty test family");
    require_same_space(mu.density().space_ptr(), nu.density().space_ptr(), "weakstar_distance");
    double worst = 0.0;
    for (const auto& phi : tests) {
        worst = std::max(worst, std::abs(evaluate(mu, phi) - evaluate(nu, phi)));
    }
    return worst;
}

double hypograph_distance(const SubDensity& a, const SubDensity& b, const LevelGrid& levels) {
    require_same_space(a.space_ptr(), b.space_ptr(), "hypograph_distance");
    const auto& X = a.space();
    // For (x, t) in A the nearest member of a saturated B above y is
    // (y, min(t, top_B(y))), so only the tops matter and the sup over t is
    // attained at top_A(x).
    std::vector<double> ta(a.size()), tb(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ta[i] = levels.level(levels.floor_index(a[i]));
        tb[i] = levels.level(levels.floor_index(b[i]));
    }
    if (X.has_coordinates()) {
        const double* y = X.dimension() == 2 ? X.axis(1).data() : nullptr;
        kernels::PointBlock pa{X.axis(0).data(), y, ta.data(), ta.size()};
        kernels::PointBlock pb{X.axis(0).data(), y, tb.data(), tb.size()};
        const auto& k = kernels::active();
        return std::max(k.directed(pa, pb, kernels::LevelMetric::excess),
                        k.directed(pb, pa, kernels::LevelMetric::excess));
    }
    auto directed = [&](const std::vector<double>& s, const std::vector<double>& t) {
        double sup = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            double inf = INFINITY;
            for (std::size_t j = 0; j < t.size(); ++j)
                inf = std::min(inf, std::max(X.distance(i, j), std::max(0.0, s[i] - t[j])));
            sup = std::max(sup, inf);
        }
        return sup;
    };
    return std::max(directed(ta, tb), directed(tb, ta));
}

}  // namespace idemfs
