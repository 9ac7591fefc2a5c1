#pragma once

#include <vector>

#include "idemfs/ifs.hpp"

namespace fixtures {

using namespace idemfs;

inline AffineSpec affine1(double a, double b) { return {{a}, {b}}; }

inline AffineSpec affine2(double s, double tx, double ty) { return {{s, 0, 0, s}, {tx, ty}}; }

/// x/3 and x/3 + 2/3 on an n-point grid of [0,1].
inline IFSSystem cantor(std::size_t n, std::vector<double> weights, TNorm t) {
    return IFSSystem::validate(grid_1d(n, 0, 1), {affine1(1.0 / 3, 0), affine1(1.0 / 3, 2.0 / 3)},
                               std::move(weights), t);
}

/// The single map x/2 on an n-point grid of [0,1].
inline IFSSystem halving(std::size_t n, TNorm t) {
    return IFSSystem::validate(grid_1d(n, 0, 1), {affine1(0.5, 0)}, {1.0}, t);
}

/// Three half-scale maps towards (0,0), (1,0), (0,1) on a 64 x 64 lattice
/// with spacing 1/64, so that halving a lattice coordinate is a tie that
/// snaps down, and the snapped maps act as binary digit shifts.
inline IFSSystem sierpinski(std::vector<double> weights, TNorm t) {
    const double top = 63.0 / 64.0;
    return IFSSystem::validate(grid_2d(64, 64, {0, top, 0, top}),
                               {affine2(0.5, 0, 0), affine2(0.5, 0.5, 0), affine2(0.5, 0, 0.5)},
                               std::move(weights), t);
}

}  // namespace fixtures
