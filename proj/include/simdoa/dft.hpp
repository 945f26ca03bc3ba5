// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simdoa/geometry.hpp"

namespace simdoa {

/// Target linear operator: the unnormalized 2D DFT over an n_x-by-n_y grid,
/// N = n_x*n_y rows/columns ordered x-major (x varies fastest).
struct TargetOperator {
    cxmat f;
    int n_x = 0;
    int n_y = 0;
    int n() const { return n_x * n_y; }
};

/// Entry (r, c) = exp(-j*2*pi*rx*cx/n_x) * exp(-j*2*pi*ry*cy/n_y) with 0-based
/// per-axis indices rx = r % n_x, ry = r / n_x (same for c).
TargetOperator dft_matrix(int n_x, int n_y);

}  // namespace simdoa
