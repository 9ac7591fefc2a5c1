#include <cmath>

#include "idemfs/kernels.hpp"

namespace idemfs::kernels {

namespace {

inline double pair_distance(const PointBlock& a, std::size_t i, const PointBlock& b, std::size_t j,
                            LevelMetric metric) {
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

double directed_scalar(const PointBlock& from, const PointBlock& to, LevelMetric metric) {
    double sup = 0.0;
    for (std::size_t i = 0; i < from.n; ++i) {
        double inf = INFINITY;
        for (std::size_t j = 0; j < to.n; ++j) {
            double d = pair_distance(from, i, to, j, metric);
            inf = d < inf ? d : inf;
        }
        sup = inf > sup ? inf : sup;
    }
    return sup;
}

double max_apply_scalar(const TNorm& t, const double* a, const double* b, std::size_t n) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = apply_unchecked(t, a[i], b[i]);
        best = v > best ? v : best;
    }
    return best;
}

void scale_scalar(const TNorm& t, double r, const double* in, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = apply_unchecked(t, r, in[i]);
}

}  // namespace

const KernelTable& scalar() {
    static const KernelTable table{"scalar", directed_scalar, max_apply_scalar, scale_scalar};
    return table;
}

}  // namespace idemfs::kernels
