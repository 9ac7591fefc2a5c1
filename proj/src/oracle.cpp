#include "idemfs/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include "idemfs/errors.hpp"

namespace idemfs::oracle {

std::size_t word_count(std::size_t maps, std::size_t depth) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < depth; ++i) {
        if (maps != 0 && count > word_budget / maps) count = word_budget + 1;
        else count *= maps;
        if (count > word_budget) {
            throw ResourceError("word enumeration of " + std::to_string(maps) + "^" +
                                std::to_string(depth) + " exceeds the budget of " +
                                std::to_string(word_budget) + " words");
        }
    }
    return count;
}

namespace {

bool all_affine(const IFSSystem& s) {
    return std::all_of(s.maps().begin(), s.maps().end(),
                       [](const ContractionMap& m) { return m.is_affine(); });
}

AffineSpec affine_identity(std::size_t d) {
    AffineSpec id{std::vector<double>(d * d, 0.0), std::vector<double>(d, 0.0)};
    for (std::size_t k = 0; k < d; ++k) id.matrix[k * d + k] = 1.0;
    return id;
}

void extend(const IFSSystem& system, bool affine, Word& w, std::size_t depth,
            const std::function<void(const Word&)>& visit) {
    if (w.letters.size() == depth) {
        visit(w);
        return;
    }
    const Word saved = w;
    for (std::size_t i = 0; i < system.maps().size(); ++i) {
        const auto& f = system.maps()[i];
        w.letters.push_back(i);
        w.weight = apply_unchecked(system.tnorm(), saved.weight, system.weights()[i]);
        if (affine) {
            w.composed = std::get<AffineSpec>(saved.composed).after(std::get<AffineSpec>(f.spec()));
        } else {
            w.composed = PointMap::compose(std::get<PointMap>(saved.composed), f.snapped());
        }
        extend(system, affine, w, depth, visit);
        w = saved;
    }
}

}  // namespace

void for_each_word(const IFSSystem& system, std::size_t depth,
                   const std::function<void(const Word&)>& visit) {
    word_count(system.maps().size(), depth);
    const bool affine = all_affine(system);
    Word root;
    if (affine) root.composed = affine_identity(system.space().dimension());
    else root.composed = PointMap::identity(system.space_ptr());
    extend(system, affine, root, depth, visit);
}

std::size_t image_of(const IFSSystem& system, const Word& w, std::size_t x) {
    if (const auto* f = std::get_if<AffineSpec>(&w.composed)) {
        const auto& X = system.space();
        const std::size_t d = X.dimension();
        std::array<double, 2> p{}, q{};
        for (std::size_t k = 0; k < d; ++k) p[k] = X.coordinate(x, k);
        f->apply(std::span(p.data(), d), std::span(q.data(), d));
        return X.snap(std::span<const double>(q.data(), d));
    }
    return std::get<PointMap>(w.composed).table[x];
}

StarMeasure word_expansion(const IFSSystem& system, const StarMeasure& seed, std::size_t depth) {
    if (seed.density().space_ptr() != system.space_ptr()) {
        throw DomainError("word_expansion: seed lives on a different space");
    }
    const std::size_t n = system.space().size();
    std::vector<std::size_t> support;
    for (std::size_t x = 0; x < n; ++x)
        if (seed[x] > 0.0) support.push_back(x);

    std::vector<double> out(n, 0.0);
    for_each_word(system, depth, [&](const Word& w) {
        for (std::size_t x : support) {
            std::size_t y = image_of(system, w, x);
            out[y] = std::max(out[y], apply_unchecked(system.tnorm(), w.weight, seed[x]));
        }
    });
    return StarMeasure(SubDensity(system.space_ptr(), system.tnorm(), std::move(out)));
}

std::vector<std::size_t> attractor_support(const IFSSystem& system, std::size_t depth,
                                           std::size_t reference_point) {
    if (reference_point >= system.space().size()) {
        throw DomainError("attractor_support: reference point out of range");
    }
    std::set<std::size_t> pts;
    for_each_word(system, depth,
                  [&](const Word& w) { pts.insert(image_of(system, w, reference_point)); });
    return {pts.begin(), pts.end()};
}

double brute_hausdorff(const ProductSpace& space, std::span<const ProductSpace::Point> a,
                       std::span<const ProductSpace::Point> b) {
    auto directed = [&](auto s, auto t) {
        double sup = 0.0;
        for (const auto& p : s) {
            double inf = INFINITY;
            for (const auto& q : t) inf = std::min(inf, space.distance(p, q));
            sup = std::max(sup, inf);
        }
        return sup;
    };
    return std::max(directed(a, b), directed(b, a));
}

FuzzReport lemma_prod_fuzzer(SpacePtr x, SpacePtr y, std::size_t trials,
                             unsigned long long seed) {
    if (trials == 0) throw DomainError("lemma_prod_fuzzer needs at least one trial");
    const ProductSpace prod(x, y);
    const double diam = x->diameter();
    FuzzReport rep;
    rep.trials = trials;
    rep.seed = seed;

    // A pair realizing diam(X).
    std::size_t far_a = 0, far_b = 0;
    for (std::size_t i = 0; i < x->size(); ++i)
        for (std::size_t j = i + 1; j < x->size(); ++j)
            if (x->distance(i, j) == diam) {
                far_a = i;
                far_b = j;
                i = x->size();
                break;
            }

    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.4);
    std::uniform_int_distribution<std::size_t> pick_x(0, x->size() - 1);
    std::uniform_int_distribution<std::size_t> pick_y(0, y->size() - 1);

    auto random_fiber = [&] {
        std::vector<std::size_t> fiber;
        for (std::size_t i = 0; i < x->size(); ++i)
            if (coin(rng)) fiber.push_back(i);
        if (fiber.empty()) fiber.push_back(pick_x(rng));
        return fiber;
    };

    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<ProductSpace::Point> A, B;
        if (t == 0) {
            std::size_t y0 = pick_y(rng);
            A.push_back({far_a, y0});
            B.push_back({far_b, y0});
        } else {
            std::vector<std::size_t> ys;
            for (std::size_t j = 0; j < y->size(); ++j)
                if (coin(rng)) ys.push_back(j);
            if (ys.empty()) ys.push_back(pick_y(rng));
            for (std::size_t yj : ys) {
                for (std::size_t xi : random_fiber()) A.push_back({xi, yj});
                for (std::size_t xi : random_fiber()) B.push_back({xi, yj});
            }
        }
        const double fast = hausdorff(prod, A, B);
        const double slow = brute_hausdorff(prod, A, B);
        if (fast != slow) ++rep.mismatches;
        if (!projection_bound_check(prod, A, B) || slow > diam) ++rep.violations;
        const double ratio = slow / diam;
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        if (ratio == 1.0) ++rep.tight_trials;
    }
    return rep;
}

}  // namespace idemfs::oracle
