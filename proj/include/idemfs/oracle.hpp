#pragma once

// Independent, brute-force counterparts of the solver: the word expansion
// of n-fold psi, attractor sampling, and a randomized check of the
// projection lemma for Hausdorff distances on products.

#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

#include "idemfs/ifs.hpp"
#include "idemfs/measure.hpp"
#include "idemfs/space.hpp"

namespace idemfs::oracle {

inline constexpr std::size_t word_budget = 1'000'000;

/// A word (i_1, ..., i_n) with its folded weight and the composition
/// f_{i_1} o ... o f_{i_n}. Affine systems compose exactly; any system
/// with a tabulated map chains the snapped tables instead.
struct Word {
    std::vector<std::size_t> letters;
    double weight = 1.0;
    std::variant<AffineSpec, PointMap> composed;
};

/// Number of words of length `depth`; throws ResourceError past word_budget.
std::size_t word_count(std::size_t maps, std::size_t depth);

/// Visits every word of length `depth` in lexicographic order.
void for_each_word(const IFSSystem& system, std::size_t depth,
                   const std::function<void(const Word&)>& visit);

/// Point reached from `x` through the word's composition (snapped once).
std::size_t image_of(const IFSSystem& system, const Word& w, std::size_t x);

/// density(y) = max over words w, points x with snap(w(x)) = y of
/// T(weight_w, seed(x)).
StarMeasure word_expansion(const IFSSystem& system, const StarMeasure& seed, std::size_t depth);

/// { snap(w(x0)) : |w| = depth }, sorted.
std::vector<std::size_t> attractor_support(const IFSSystem& system, std::size_t depth,
                                           std::size_t reference_point = 0);

struct FuzzReport {
    std::size_t trials = 0;
    unsigned long long seed = 0;
    std::size_t violations = 0;
    /// Trials where the fast and brute-force Hausdorff values differ.
    std::size_t mismatches = 0;
    std::size_t tight_trials = 0;
    double max_ratio = 0.0;
};

/// Random pairs A, B in X x Y with equal projections on Y, each checked
/// for d_H(A, B) <= diam(X). Trial 0 is the tight pair {x_min} vs {x_max}
/// over a single y, whose distance is exactly diam(X).
FuzzReport lemma_prod_fuzzer(SpacePtr x, SpacePtr y, std::size_t trials,
                             unsigned long long seed);

/// Brute-force sup-inf evaluation over all pairs.
double brute_hausdorff(const ProductSpace& space, std::span<const ProductSpace::Point> a,
                       std::span<const ProductSpace::Point> b);

}  // namespace idemfs::oracle
