// SPDX-License-Identifier: Apache-2.0
#include "simdoa/protocol.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "simdoa/dft.hpp"
#include "simdoa/rng.hpp"

namespace simdoa {

InputLayerPhases input_phase_schedule(const SimGeometry& geom, const ProtocolConfig& cfg, int t) {
    if (cfg.t_x < 1 || cfg.t_y < 1)
        throw std::invalid_argument("input_phase_schedule: snapshot counts must be >= 1");
    if (t < 0 || t >= cfg.snapshots())
        throw std::out_of_range("input_phase_schedule: snapshot index out of range");
    const int ty = t / cfg.t_x;
    const int tx = t % cfg.t_x;
    InputLayerPhases phases;
    phases.xi0.resize(geom.n());
    for (int n = 0; n < geom.n(); ++n) {
        const int iy = n / geom.n_x;
        const int ix = n % geom.n_x;
        const double xi =
            -two_pi * static_cast<double>(ix) * tx / (static_cast<double>(geom.n_x) * cfg.t_x) -
            two_pi * static_cast<double>(iy) * ty / (static_cast<double>(geom.n_y) * cfg.t_y);
        phases.xi0[n] = wrap_two_pi(xi);
    }
    return phases;
}

SnapshotGrid simulate_response_grid(const cxmat& response, const SimGeometry& geom,
                                    const ElectricalAngles& psi, const ProtocolConfig& cfg) {
    const int n = geom.n();
    if (response.rows() != n || response.cols() != n)
        throw std::invalid_argument("simulate_response_grid: response must be N x N");
    const int t_total = cfg.snapshots();
    const double rho = std::pow(10.0, cfg.snr_db / 10.0);
    const double amp = std::sqrt(rho);
    const cxvec a = steering_vector(geom, psi);

    // Draw everything first so the realization depends only on (seed, shape). The
    // source emits one symbol per observation, held over all T snapshots; only the
    // probe noise is redrawn per snapshot.
    Rng rng(cfg.seed);
    cxd source{1.0, 0.0};
    cxmat noise;
    if (!cfg.noiseless) {
        source = rng.cscg();
        noise.resize(n, t_total);
        for (int t = 0; t < t_total; ++t)
            for (int i = 0; i < n; ++i) noise(i, t) = rng.cscg();
    }

    cxmat excitation(n, t_total);
    for (int t = 0; t < t_total; ++t) {
        const InputLayerPhases xi0 = input_phase_schedule(geom, cfg, t);
        for (int i = 0; i < n; ++i) excitation(i, t) = std::polar(1.0, xi0.xi0[i]) * a[i];
    }

    SnapshotGrid grid;
    grid.config = cfg;
    grid.r = response * excitation;
    grid.r *= amp * source;
    if (!cfg.noiseless) grid.r += noise;
    return grid;
}

SnapshotGrid simulate_snapshots(const SimGeometry& geom, const SimState& state,
                                const ElectricalAngles& psi, const ProtocolConfig& cfg,
                                cxd scale) {
    cxmat response = transfer_matrix(state);
    if (scale != cxd{1.0, 0.0}) response *= scale;
    return simulate_response_grid(response, geom, psi, cfg);
}

SnapshotGrid digital_baseline_grid(const SimGeometry& geom, const ElectricalAngles& psi,
                                   const ProtocolConfig& cfg) {
    return simulate_response_grid(dft_matrix(geom.n_x, geom.n_y).f, geom, psi, cfg);
}

void write_grid_csv(const SnapshotGrid& grid, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_grid_csv: cannot open '" + path + "'");
    out << "n,t,re,im\n";
    char buf[96];
    for (Eigen::Index t = 0; t < grid.r.cols(); ++t)
        for (Eigen::Index n = 0; n < grid.r.rows(); ++n) {
            std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g,%.17g\n",
                          static_cast<long long>(n), static_cast<long long>(t),
                          grid.r(n, t).real(), grid.r(n, t).imag());
            out << buf;
        }
    if (!out) throw std::runtime_error("write_grid_csv: write failed for '" + path + "'");
}

}  // namespace simdoa
