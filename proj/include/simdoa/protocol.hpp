// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "simdoa/sim_model.hpp"

namespace simdoa {

/// Observation schedule: T = t_x * t_y snapshots, t_y blocks of t_x slots each.
/// snr_db is the per-element SNR in dB (-inf gives a pure-noise grid). In noiseless
/// mode the source symbol is pinned to 1 and no noise is drawn, so the grid is the
/// deterministic device response (the infinite-SNR limit used by the spectrum runs).
struct ProtocolConfig {
    int t_x = 100;
    int t_y = 100;
    double snr_db = 10.0;
    std::uint64_t seed = 1;
    bool noiseless = false;

    int snapshots() const { return t_x * t_y; }
};

/// Received samples, element n in row n, snapshot t in column t.
struct SnapshotGrid {
    cxmat r;  // N x T
    ProtocolConfig config;
};

/// Input-plane phases for snapshot t (0-based):
/// xi_{0,n,t} = -2*pi*ix*tx/(n_x*t_x) - 2*pi*iy*ty/(n_y*t_y), wrapped to [0, 2*pi),
/// with tx = t % t_x, ty = t / t_x. Sweeping t steps the effective spatial-frequency
/// bins by 2*pi/(n_x*t_x) and 2*pi/(n_y*t_y) per axis.
InputLayerPhases input_phase_schedule(const SimGeometry& geom, const ProtocolConfig& cfg, int t);

/// Column t = sqrt(rho) * response * diag(exp(j*xi_{0,t})) * a(psi) * s + u_t with
/// rho = 10^(snr_db/10). The source symbol s ~ CSCG(0,1) is drawn once per
/// observation and held across all T snapshots; the probe noise u_t ~ CSCG(0, I) is
/// redrawn per snapshot (s first, then the noise column by column). The draw order
/// depends only on (seed, shape), so two simulations with equal seeds see identical
/// source and noise realizations.
SnapshotGrid simulate_response_grid(const cxmat& response, const SimGeometry& geom,
                                    const ElectricalAngles& psi, const ProtocolConfig& cfg);

/// Device simulation; `scale` premultiplies the transfer matrix (pass the trained
/// least-squares beta to put the device at the same effective SNR as the digital
/// reference).
SnapshotGrid simulate_snapshots(const SimGeometry& geom, const SimState& state,
                                const ElectricalAngles& psi, const ProtocolConfig& cfg,
                                cxd scale = cxd{1.0, 0.0});

/// Same protocol with the exact DFT operator in place of the device response.
SnapshotGrid digital_baseline_grid(const SimGeometry& geom, const ElectricalAngles& psi,
                                   const ProtocolConfig& cfg);

/// CSV with columns n,t,re,im (0-based indices).
void write_grid_csv(const SnapshotGrid& grid, const std::string& path);

}  // namespace simdoa
