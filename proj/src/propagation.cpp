// SPDX-License-Identifier: Apache-2.0
#include "simdoa/propagation.hpp"

#include <cmath>
#include <stdexcept>

namespace simdoa {

cxd diffraction_coefficient(const SimGeometry& geom, double distance) {
    if (!(distance > 0.0))
        throw std::invalid_argument("diffraction_coefficient: distance must be > 0");
    const double kappa = geom.wavenumber();
    const double amp = geom.atom_area * geom.layer_spacing / (two_pi * distance * distance * distance);
    const cxd tilt(1.0, -kappa * distance);
    return amp * tilt * std::polar(1.0, kappa * distance);
}

DiffractionStack build_stack(const SimGeometry& geom) {
    const int m = geom.m();
    const int n = geom.n();
    DiffractionStack stack;
    stack.num_layers = geom.num_layers;

    // Inner hops: same-pitch grids, distance from index differences (Eq.-level identity
    // with the coordinate form since the pitch matches).
    if (geom.num_layers >= 2) {
        stack.w_mid.resize(m, m);
        for (int row = 0; row < m; ++row) {
            const int ry = row / geom.m_x, rx = row % geom.m_x;
            for (int col = 0; col < m; ++col) {
                const int cy = col / geom.m_x, cx = col % geom.m_x;
                const double dx = (rx - cx) * geom.s_x;
                const double dy = (ry - cy) * geom.s_y;
                const double d =
                    std::sqrt(dx * dx + dy * dy + geom.layer_spacing * geom.layer_spacing);
                stack.w_mid(row, col) = diffraction_coefficient(geom, d);
            }
        }
    }

    // Input plane -> layer 1: grids differ in pitch, use exact centered coordinates.
    stack.w_in.resize(m, n);
    for (int row = 0; row < m; ++row) {
        const Eigen::Vector3d pm = atom_position(geom, 1, row);
        for (int col = 0; col < n; ++col) {
            const Eigen::Vector3d pn = atom_position(geom, 0, col);
            stack.w_in(row, col) = diffraction_coefficient(geom, (pm - pn).norm());
        }
    }

    stack.w_out = stack.w_in.transpose();
    return stack;
}

}  // namespace simdoa
