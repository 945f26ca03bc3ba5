// SPDX-License-Identifier: Apache-2.0
#include "simdoa/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace simdoa {

std::pair<int, int> peak_search(const SnapshotGrid& grid) {
    if (grid.r.size() == 0) throw std::invalid_argument("peak_search: empty grid");
    int best_n = 0, best_t = 0;
    double best = -1.0;
    for (Eigen::Index t = 0; t < grid.r.cols(); ++t)
        for (Eigen::Index n = 0; n < grid.r.rows(); ++n) {
            const double e = std::norm(grid.r(n, t));
            if (e > best) {
                best = e;
                best_n = static_cast<int>(n);
                best_t = static_cast<int>(t);
            }
        }
    return {best_n, best_t};
}

ElectricalAngles electrical_from_peak(const SimGeometry& geom, const ProtocolConfig& cfg,
                                      int n_hat, int t_hat) {
    if (n_hat < 0 || n_hat >= geom.n())
        throw std::out_of_range("electrical_from_peak: element index out of range");
    if (t_hat < 0 || t_hat >= cfg.snapshots())
        throw std::out_of_range("electrical_from_peak: snapshot index out of range");
    const int iy = n_hat / geom.n_x, ix = n_hat % geom.n_x;
    const int ty = t_hat / cfg.t_x, tx = t_hat % cfg.t_x;
    const double vx = 2.0 * (static_cast<double>(ix) / geom.n_x +
                             static_cast<double>(tx) / (static_cast<double>(geom.n_x) * cfg.t_x));
    const double vy = 2.0 * (static_cast<double>(iy) / geom.n_y +
                             static_cast<double>(ty) / (static_cast<double>(geom.n_y) * cfg.t_y));
    ElectricalAngles psi;
    psi.psi_x = pi * wrap_unit(vx);
    psi.psi_y = pi * wrap_unit(vy);
    return psi;
}

PhysicalAngles physical_from_electrical(const SimGeometry& geom, const ElectricalAngles& psi) {
    const double kappa = geom.wavenumber();
    const double ux = psi.psi_x / (kappa * geom.d_x);
    const double uy = psi.psi_y / (kappa * geom.d_y);
    const double rr = ux * ux + uy * uy;
    if (rr > 1.0 + 1e-12)
        throw std::domain_error("physical_from_electrical: non-physical direction");
    PhysicalAngles out;
    out.elevation = std::asin(std::min(1.0, std::sqrt(rr)));
    if (psi.psi_x == 0.0 && psi.psi_y == 0.0) {
        out.azimuth = 0.0;  // zenith: azimuth undefined, pick 0
    } else {
        double az = std::atan2(psi.psi_y * geom.d_x, psi.psi_x * geom.d_y);
        if (az < 0.0) az += two_pi;
        out.azimuth = az;
    }
    return out;
}

double mse(const ElectricalAngles& truth, const ElectricalAngles& estimate) {
    const double dx = wrap_unit((estimate.psi_x - truth.psi_x) / pi);
    const double dy = wrap_unit((estimate.psi_y - truth.psi_y) / pi);
    return 0.5 * (dx * dx + dy * dy);
}

std::pair<int, int> nearest_combined_bin(const SimGeometry& geom, const ProtocolConfig& cfg,
                                         const ElectricalAngles& psi) {
    // per axis the grid holds k*step for k = ix*t_x + tx, step = 2/(n_axis*t_axis)
    auto nearest_axis = [](double value_pi, int n_axis, int t_axis) {
        const int bins = n_axis * t_axis;
        const double step = 2.0 / bins;
        double u = value_pi;
        if (u < 0.0) u += 2.0;  // unwrap into [0, 2)
        const long long k = std::llround(u / step) % bins;
        return static_cast<int>(k);
    };
    const int kx = nearest_axis(psi.psi_x / pi, geom.n_x, cfg.t_x);
    const int ky = nearest_axis(psi.psi_y / pi, geom.n_y, cfg.t_y);
    const int ix = kx / cfg.t_x, tx = kx % cfg.t_x;
    const int iy = ky / cfg.t_y, ty = ky % cfg.t_y;
    return {iy * geom.n_x + ix, ty * cfg.t_x + tx};
}

DoaEstimate estimate_doa(const SimGeometry& geom, const ProtocolConfig& cfg,
                         const SnapshotGrid& grid) {
    DoaEstimate est;
    std::tie(est.n_hat, est.t_hat) = peak_search(grid);
    est.psi_hat = electrical_from_peak(geom, cfg, est.n_hat, est.t_hat);
    const double kappa = geom.wavenumber();
    const double ux = est.psi_hat.psi_x / (kappa * geom.d_x);
    const double uy = est.psi_hat.psi_y / (kappa * geom.d_y);
    if (ux * ux + uy * uy <= 1.0)
        est.physical_hat = physical_from_electrical(geom, est.psi_hat);
    return est;
}

}  // namespace simdoa
