// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>

#include "simdoa/protocol.hpp"

namespace simdoa {

struct DoaEstimate {
    int n_hat = 0;  // winning element (row), 0-based
    int t_hat = 0;  // winning snapshot (column), 0-based
    ElectricalAngles psi_hat;
    std::optional<PhysicalAngles> physical_hat;  // set when the angles invert to a real direction
};

/// Argmax of |r_{n,t}|^2; ties resolved toward the smallest linear index with t major
/// (earlier snapshot, then lower element).
std::pair<int, int> peak_search(const SnapshotGrid& grid);

/// Electrical angles implied by a peak cell: per axis, wrap of
/// 2*(ix/n_x + tx/(n_x*t_x)) in units of pi (returned in radians).
ElectricalAngles electrical_from_peak(const SimGeometry& geom, const ProtocolConfig& cfg,
                                      int n_hat, int t_hat);

/// Invert the electrical angles to azimuth/elevation. Throws std::domain_error when
/// (psi_x/(kappa*d_x))^2 + (psi_y/(kappa*d_y))^2 > 1 (no real direction); the zenith
/// psi = (0,0) maps to azimuth 0 by convention.
PhysicalAngles physical_from_electrical(const SimGeometry& geom, const ElectricalAngles& psi);

/// Mean squared wrap-around error in units of pi, averaged over the two axes.
double mse(const ElectricalAngles& truth, const ElectricalAngles& estimate);

/// Cell (n, t) of the combined N*T frequency grid closest to psi on the torus,
/// per axis independently.
std::pair<int, int> nearest_combined_bin(const SimGeometry& geom, const ProtocolConfig& cfg,
                                         const ElectricalAngles& psi);

/// Full chain over a snapshot grid: peak search, angle recovery, optional physical
/// inversion (left empty when the peak decodes to a non-physical direction).
DoaEstimate estimate_doa(const SimGeometry& geom, const ProtocolConfig& cfg,
                         const SnapshotGrid& grid);

}  // namespace simdoa
