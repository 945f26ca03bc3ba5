// SPDX-License-Identifier: Apache-2.0
#include "simdoa/dft.hpp"

#include <cmath>
#include <stdexcept>

namespace simdoa {

TargetOperator dft_matrix(int n_x, int n_y) {
    if (n_x < 1 || n_y < 1) throw std::invalid_argument("dft_matrix: grid counts must be >= 1");
    TargetOperator target;
    target.n_x = n_x;
    target.n_y = n_y;
    const int n = n_x * n_y;
    target.f.resize(n, n);
    for (int r = 0; r < n; ++r) {
        const int ry = r / n_x, rx = r % n_x;
        for (int c = 0; c < n; ++c) {
            const int cy = c / n_x, cx = c % n_x;
            const double ang_x = -two_pi * static_cast<double>(rx * cx) / static_cast<double>(n_x);
            const double ang_y = -two_pi * static_cast<double>(ry * cy) / static_cast<double>(n_y);
            target.f(r, c) = std::polar(1.0, ang_y) * std::polar(1.0, ang_x);
        }
    }
    return target;
}

}  // namespace simdoa
