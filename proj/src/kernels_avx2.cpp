// Compiled with -mavx2 only; dispatched after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "idemfs/kernels.hpp"

namespace idemfs::kernels {

namespace {

inline __m256d apply4(const TNorm& t, __m256d a, __m256d b) {
    switch (t.family) {
        case TNorm::Family::minimum:
            return _mm256_min_pd(a, b);
        case TNorm::Family::product:
            return _mm256_mul_pd(a, b);
        case TNorm::Family::lukasiewicz: {
            __m256d s = _mm256_sub_pd(_mm256_add_pd(a, b), _mm256_set1_pd(1.0));
            return _mm256_max_pd(s, _mm256_setzero_pd());
        }
        case TNorm::Family::hamacher: {
            __m256d p = _mm256_set1_pd(t.parameter);
            __m256d ab = _mm256_mul_pd(a, b);
            __m256d sum = _mm256_sub_pd(_mm256_add_pd(a, b), ab);
            __m256d den =
                _mm256_add_pd(p, _mm256_mul_pd(_mm256_set1_pd(1.0 - t.parameter), sum));
            __m256d q = _mm256_div_pd(ab, den);
            __m256d zero_den = _mm256_cmp_pd(den, _mm256_setzero_pd(), _CMP_EQ_OQ);
            return _mm256_blendv_pd(q, _mm256_setzero_pd(), zero_den);
        }
    }
    return _mm256_setzero_pd();
}

inline double hmax(__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    double m = lanes[0];
    for (int k = 1; k < 4; ++k) m = lanes[k] > m ? lanes[k] : m;
    return m;
}

inline double hmin(__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    double m = lanes[0];
    for (int k = 1; k < 4; ++k) m = lanes[k] < m ? lanes[k] : m;
    return m;
}

inline double tail_distance(const PointBlock& a, std::size_t i, const PointBlock& b,
                            std::size_t j, LevelMetric metric) {
    double d;
    double dx = a.x[i] - b.x[j];
    if (a.y) {
        double dy = a.y[i] - b.y[j];
        d = std::sqrt(dx * dx + dy * dy);
    } else {
        d = std::fabs(dx);
    }
    if (metric == LevelMetric::absolute) {
        double dl = std::fabs(a.level[i] - b.level[j]);
        d = d > dl ? d : dl;
    } else if (metric == LevelMetric::excess) {
        double dl = a.level[i] - b.level[j];
        dl = dl > 0.0 ? dl : 0.0;
        d = d > dl ? d : dl;
    }
    return d;
}

template <bool TwoD, LevelMetric Metric>
double directed_impl(const PointBlock& from, const PointBlock& to) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d zero = _mm256_setzero_pd();
    const std::size_t vec_end = to.n & ~std::size_t{3};
    double sup = 0.0;
    for (std::size_t i = 0; i < from.n; ++i) {
        const __m256d px = _mm256_set1_pd(from.x[i]);
        const __m256d py = TwoD ? _mm256_set1_pd(from.y[i]) : zero;
        const __m256d pl = Metric != LevelMetric::none ? _mm256_set1_pd(from.level[i]) : zero;
        __m256d inf4 = _mm256_set1_pd(INFINITY);
        for (std::size_t j = 0; j < vec_end; j += 4) {
            __m256d dx = _mm256_sub_pd(px, _mm256_loadu_pd(to.x + j));
            __m256d d;
            if constexpr (TwoD) {
                __m256d dy = _mm256_sub_pd(py, _mm256_loadu_pd(to.y + j));
                d = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
            } else {
                d = _mm256_andnot_pd(sign_mask, dx);
            }
            if constexpr (Metric == LevelMetric::absolute) {
                __m256d dl = _mm256_andnot_pd(sign_mask,
                                              _mm256_sub_pd(pl, _mm256_loadu_pd(to.level + j)));
                d = _mm256_max_pd(d, dl);
            } else if constexpr (Metric == LevelMetric::excess) {
                __m256d dl = _mm256_sub_pd(pl, _mm256_loadu_pd(to.level + j));
                dl = _mm256_max_pd(dl, zero);
                d = _mm256_max_pd(d, dl);
            }
            inf4 = _mm256_min_pd(d, inf4);
        }
        double inf = hmin(inf4);
        for (std::size_t j = vec_end; j < to.n; ++j) {
            double d = tail_distance(from, i, to, j, Metric);
            inf = d < inf ? d : inf;
        }
        sup = inf > sup ? inf : sup;
    }
    return sup;
}

double directed_avx2(const PointBlock& from, const PointBlock& to, LevelMetric metric) {
    const bool two_d = from.y != nullptr;
    switch (metric) {
        case LevelMetric::none:
            return two_d ? directed_impl<true, LevelMetric::none>(from, to)
                         : directed_impl<false, LevelMetric::none>(from, to);
        case LevelMetric::absolute:
            return two_d ? directed_impl<true, LevelMetric::absolute>(from, to)
                         : directed_impl<false, LevelMetric::absolute>(from, to);
        case LevelMetric::excess:
            return two_d ? directed_impl<true, LevelMetric::excess>(from, to)
                         : directed_impl<false, LevelMetric::excess>(from, to);
    }
    return 0.0;
}

double max_apply_avx2(const TNorm& t, const double* a, const double* b, std::size_t n) {
    const std::size_t vec_end = n & ~std::size_t{3};
    __m256d best4 = _mm256_setzero_pd();
    for (std::size_t i = 0; i < vec_end; i += 4) {
        __m256d v = apply4(t, _mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        best4 = _mm256_max_pd(v, best4);
    }
    double best = hmax(best4);
    for (std::size_t i = vec_end; i < n; ++i) {
        double v = apply_unchecked(t, a[i], b[i]);
        best = v > best ? v : best;
    }
    return best;
}

void scale_avx2(const TNorm& t, double r, const double* in, double* out, std::size_t n) {
    const std::size_t vec_end = n & ~std::size_t{3};
    const __m256d r4 = _mm256_set1_pd(r);
    for (std::size_t i = 0; i < vec_end; i += 4) {
        _mm256_storeu_pd(out + i, apply4(t, r4, _mm256_loadu_pd(in + i)));
    }
    for (std::size_t i = vec_end; i < n; ++i) out[i] = apply_unchecked(t, r, in[i]);
}

}  // namespace

const KernelTable* avx2_table_impl() {
    static const KernelTable table{"avx2", directed_avx2, max_apply_avx2, scale_avx2};
    return &table;
}

}  // namespace idemfs::kernels
