#pragma once

// Data-parallel inner loops, in a scalar reference form and (on x86-64)
// an AVX2 form chosen at runtime. Both forms evaluate the same IEEE
// operations in the same order, so their results are bit-identical.

#include <cstddef>

#include "idemfs/tnorm.hpp"

namespace idemfs::kernels {

/// Structure-of-arrays view of points. `y` and `level` may be null.
struct PointBlock {
    const double* x = nullptr;
    const double* y = nullptr;
    const double* level = nullptr;
    std::size_t n = 0;
};

/// How the `level` coordinate enters the sup metric.
///   none:     d = euclid(p, q)
///   absolute: d = max(euclid(p, q), |s - t|)        (product sup metric)
///   excess:   d = max(euclid(p, q), max(0, s - t))  (saturated hypographs)
enum class LevelMetric { none, absolute, excess };

/// sup over p in `from` of inf over q in `to` of d(p, q).
using DirectedFn = double (*)(const PointBlock& from, const PointBlock& to, LevelMetric metric);
/// max_i T(a_i, b_i), or 0 when n == 0.
using MaxApplyFn = double (*)(const TNorm& t, const double* a, const double* b, std::size_t n);
/// out_i = T(r, in_i).
using ScaleFn = void (*)(const TNorm& t, double r, const double* in, double* out, std::size_t n);

struct KernelTable {
    const char* name;
    DirectedFn directed;
    MaxApplyFn max_apply;
    ScaleFn scale;
};

const KernelTable& scalar();
/// The AVX2 table, or nullptr when it was not built or the CPU lacks AVX2.
const KernelTable* avx2();
/// The table used by the library: AVX2 when available, else scalar.
/// Setting IDEMFS_KERNELS=scalar in the environment forces the scalar path.
const KernelTable& active();

}  // namespace idemfs::kernels
