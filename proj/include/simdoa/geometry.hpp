// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace simdoa {

using cxd = std::complex<double>;
using cxvec = Eigen::VectorXcd;
using cxmat = Eigen::MatrixXcd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double speed_of_light = 299792458.0;

/// Wrap an angle in radians into [0, 2*pi).
double wrap_two_pi(double x);

/// Wrap an angle in radians into the principal interval [-pi, pi).
double wrap_principal(double x);

/// Wrap a value expressed in units of pi into [-1, 1).
double wrap_unit(double v);

/// Physical layout of the device: a square-grid input layer, `num_layers` identical
/// intermediate layers, and a receiving array arranged like the input layer, all
/// centered on a common vertical axis and evenly spaced by `layer_spacing`.
struct SimGeometry {
    double wavelength = 0.0;  // meters
    int n_x = 0, n_y = 0;     // input/receiver elements per axis, N = n_x*n_y
    double d_x = 0.0, d_y = 0.0;
    int m_x = 0, m_y = 0;     // intermediate meta-atoms per axis, M = m_x*m_y
    double s_x = 0.0, s_y = 0.0;
    int num_layers = 0;       // L, trainable layers
    double layer_spacing = 0.0;
    double atom_area = 0.0;   // square meters

    int n() const { return n_x * n_y; }
    int m() const { return m_x * m_y; }
    double wavenumber() const { return two_pi / wavelength; }

    /// Validating constructor; atom_area <= 0 defaults to s_x*s_y.
    static SimGeometry make(double wavelength, int n_x, int n_y, double d_x, double d_y,
                            int m_x, int m_y, double s_x, double s_y, int num_layers,
                            double layer_spacing, double atom_area = 0.0);

    /// 60 GHz carrier, 4x4 input/receiver at half-wavelength pitch, 12x12 intermediate
    /// layers at half-wavelength pitch, 9 trainable layers spaced one wavelength apart.
    static SimGeometry reference_setup();

    /// FNV-1a over the canonical field encoding; used as the model-file integrity key.
    std::uint64_t hash() const;
};

/// Per-axis inter-element phase progressions, radians in [-pi, pi).
struct ElectricalAngles {
    double psi_x = 0.0;
    double psi_y = 0.0;
};

/// Azimuth in [0, 2*pi), elevation in [0, pi/2], radians.
struct PhysicalAngles {
    double azimuth = 0.0;
    double elevation = 0.0;
};

/// psi_x = kappa*d_x*sin(el)*cos(az), psi_y = kappa*d_y*sin(el)*sin(az),
/// wrapped to the principal interval.
ElectricalAngles electrical_from_physical(const SimGeometry& geom, const PhysicalAngles& angles);

/// Array response a_y(psi_y) kron a_x(psi_x); element i = iy*n_x + ix carries
/// exp(j*(psi_x*ix + psi_y*iy)). Indices are 0-based, x varies fastest.
cxvec steering_vector(const SimGeometry& geom, const ElectricalAngles& psi);

/// Position of one element. layer 0 is the input plane at z = 0, layers 1..L the
/// intermediate planes, layer L+1 the receiver plane; z drops by layer_spacing per
/// layer and every grid is centered on the z-axis.
Eigen::Vector3d atom_position(const SimGeometry& geom, int layer, int atom);

}  // namespace simdoa
