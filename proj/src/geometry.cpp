// SPDX-License-Identifier: Apache-2.0
#include "simdoa/geometry.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace simdoa {

double wrap_two_pi(double x) {
    double y = x - two_pi * std::floor(x / two_pi);
    if (y >= two_pi) y -= two_pi;
    if (y < 0.0) y = 0.0;
    return y;
}

double wrap_principal(double x) { return wrap_two_pi(x + pi) - pi; }

double wrap_unit(double v) {
    double m = std::fmod(v + 1.0, 2.0);
    if (m < 0.0) m += 2.0;
    if (m >= 2.0) m = 0.0;
    return m - 1.0;
}

SimGeometry SimGeometry::make(double wavelength, int n_x, int n_y, double d_x, double d_y,
                              int m_x, int m_y, double s_x, double s_y, int num_layers,
                              double layer_spacing, double atom_area) {
    if (!(wavelength > 0.0)) throw std::invalid_argument("geometry: wavelength must be > 0");
    if (n_x < 1 || n_y < 1 || m_x < 1 || m_y < 1)
        throw std::invalid_argument("geometry: element counts must be >= 1");
    if (!(d_x > 0.0) || !(d_y > 0.0) || !(s_x > 0.0) || !(s_y > 0.0))
        throw std::invalid_argument("geometry: element spacings must be > 0");
    if (num_layers < 1) throw std::invalid_argument("geometry: num_layers must be >= 1");
    if (!(layer_spacing > 0.0)) throw std::invalid_argument("geometry: layer_spacing must be > 0");
    SimGeometry g;
    g.wavelength = wavelength;
    g.n_x = n_x;
    g.n_y = n_y;
    g.d_x = d_x;
    g.d_y = d_y;
    g.m_x = m_x;
    g.m_y = m_y;
    g.s_x = s_x;
    g.s_y = s_y;
    g.num_layers = num_layers;
    g.layer_spacing = layer_spacing;
    g.atom_area = atom_area > 0.0 ? atom_area : s_x * s_y;
    return g;
}

SimGeometry SimGeometry::reference_setup() {
    const double lambda = speed_of_light / 60.0e9;
    return make(lambda, 4, 4, lambda / 2.0, lambda / 2.0, 12, 12, lambda / 2.0, lambda / 2.0, 9,
                lambda);
}

std::uint64_t SimGeometry::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffULL;
            h *= 0x100000001b3ULL;
        }
    };
    auto feed_d = [&](double d) {
        std::uint64_t bits;
        std::memcpy(&bits, &d, sizeof bits);
        feed(bits);
    };
    feed_d(wavelength);
    feed(static_cast<std::uint64_t>(n_x));
    feed(static_cast<std::uint64_t>(n_y));
    feed_d(d_x);
    feed_d(d_y);
    feed(static_cast<std::uint64_t>(m_x));
    feed(static_cast<std::uint64_t>(m_y));
    feed_d(s_x);
    feed_d(s_y);
    feed(static_cast<std::uint64_t>(num_layers));
    feed_d(layer_spacing);
    feed_d(atom_area);
    return h;
}

ElectricalAngles electrical_from_physical(const SimGeometry& geom, const PhysicalAngles& angles) {
    if (!(angles.elevation >= 0.0 && angles.elevation <= pi / 2.0))
        throw std::invalid_argument("electrical_from_physical: elevation outside [0, pi/2]");
    if (!std::isfinite(angles.azimuth))
        throw std::invalid_argument("electrical_from_physical: azimuth not finite");
    const double kappa = geom.wavenumber();
    const double se = std::sin(angles.elevation);
    ElectricalAngles psi;
    psi.psi_x = wrap_principal(kappa * geom.d_x * se * std::cos(angles.azimuth));
    psi.psi_y = wrap_principal(kappa * geom.d_y * se * std::sin(angles.azimuth));
    return psi;
}

cxvec steering_vector(const SimGeometry& geom, const ElectricalAngles& psi) {
    cxvec ax(geom.n_x), ay(geom.n_y);
    for (int ix = 0; ix < geom.n_x; ++ix) ax[ix] = std::polar(1.0, psi.psi_x * ix);
    for (int iy = 0; iy < geom.n_y; ++iy) ay[iy] = std::polar(1.0, psi.psi_y * iy);
    cxvec a(geom.n());
    for (int iy = 0; iy < geom.n_y; ++iy)
        for (int ix = 0; ix < geom.n_x; ++ix) a[iy * geom.n_x + ix] = ay[iy] * ax[ix];
    return a;
}

Eigen::Vector3d atom_position(const SimGeometry& geom, int layer, int atom) {
    if (layer < 0 || layer > geom.num_layers + 1)
        throw std::out_of_range("atom_position: layer index out of range");
    const bool io_plane = (layer == 0 || layer == geom.num_layers + 1);
    const int kx = io_plane ? geom.n_x : geom.m_x;
    const int ky = io_plane ? geom.n_y : geom.m_y;
    const double sx = io_plane ? geom.d_x : geom.s_x;
    const double sy = io_plane ? geom.d_y : geom.s_y;
    if (atom < 0 || atom >= kx * ky) throw std::out_of_range("atom_position: atom index out of range");
    const int iy = atom / kx;
    const int ix = atom % kx;
    const double x = (ix - 0.5 * (kx - 1)) * sx;
    const double y = (iy - 0.5 * (ky - 1)) * sy;
    const double z = -static_cast<double>(layer) * geom.layer_spacing;
    return {x, y, z};
}

}  // namespace simdoa
