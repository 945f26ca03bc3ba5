// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "simdoa/dft.hpp"
#include "simdoa/estimator.hpp"
#include "simdoa/protocol.hpp"

using namespace simdoa;

namespace {

SimGeometry grid_geometry(int n_x, int n_y) {
    const double lambda = 0.005;
    return SimGeometry::make(lambda, n_x, n_y, lambda / 2, lambda / 2, 4, 4, lambda / 2,
                             lambda / 2, 1, lambda);
}

}  // namespace

TEST_CASE("input-layer phase schedule") {
    const SimGeometry geom = grid_geometry(4, 4);
    ProtocolConfig cfg;
    cfg.t_x = 25;
    cfg.t_y = 25;

    SUBCASE("first snapshot applies no phase") {
        const InputLayerPhases phases = input_phase_schedule(geom, cfg, 0);
        for (int n = 0; n < geom.n(); ++n) CHECK(phases.xi0[n] == 0.0);
    }

    SUBCASE("first element never shifted") {
        for (int t : {0, 1, 24, 25, 311, cfg.snapshots() - 1})
            CHECK(input_phase_schedule(geom, cfg, t).xi0[0] == 0.0);
    }

    SUBCASE("hand value: second element, second slot") {
        // -2*pi*1*1/(4*25) = -pi/50, wrapped into [0, 2*pi)
        const InputLayerPhases phases = input_phase_schedule(geom, cfg, 1);
        CHECK(phases.xi0[1] == doctest::Approx(two_pi - pi / 50).epsilon(1e-12));
    }

    SUBCASE("snapshot index validation") {
        CHECK_THROWS_AS(input_phase_schedule(geom, cfg, -1), std::out_of_range);
        CHECK_THROWS_AS(input_phase_schedule(geom, cfg, cfg.snapshots()), std::out_of_range);
    }
}

TEST_CASE("combined frequency bins are distinct and uniformly spaced") {
    const SimGeometry geom = grid_geometry(4, 4);
    ProtocolConfig cfg;
    cfg.t_x = 5;
    cfg.t_y = 3;

    std::set<long long> seen;
    std::vector<double> xs, ys;
    for (int t = 0; t < cfg.snapshots(); ++t)
        for (int n = 0; n < geom.n(); ++n) {
            const ElectricalAngles psi = electrical_from_peak(geom, cfg, n, t);
            const long long key =
                std::llround(psi.psi_x * 1e12) * 1000003LL + std::llround(psi.psi_y * 1e12);
            seen.insert(key);
            xs.push_back(psi.psi_x);
            ys.push_back(psi.psi_y);
        }
    CHECK(seen.size() == static_cast<std::size_t>(geom.n() * cfg.snapshots()));

    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(), [](double a, double b) {
                 return std::abs(a - b) < 1e-12;
             }),
             xs.end());
    REQUIRE(xs.size() == static_cast<std::size_t>(geom.n_x * cfg.t_x));
    const double gap_x = two_pi / (geom.n_x * cfg.t_x);
    for (std::size_t i = 1; i < xs.size(); ++i)
        CHECK(xs[i] - xs[i - 1] == doctest::Approx(gap_x).epsilon(1e-9));
}

TEST_CASE("noiseless on-grid snapshot through the exact DFT") {
    const SimGeometry geom = grid_geometry(4, 4);
    ProtocolConfig cfg;
    cfg.t_x = 4;
    cfg.t_y = 4;
    cfg.snr_db = 10.0;
    cfg.noiseless = true;

    // pick the combined bin (n = 6, t = 9) and aim exactly at it
    const int n_true = 6, t_true = 9;
    const ElectricalAngles psi = electrical_from_peak(geom, cfg, n_true, t_true);
    const SnapshotGrid grid = digital_baseline_grid(geom, psi, cfg);

    const double rho = std::pow(10.0, cfg.snr_db / 10.0);
    const double expected_peak = rho * static_cast<double>(geom.n()) * geom.n();

    CHECK(std::norm(grid.r(n_true, t_true)) ==
          doctest::Approx(expected_peak).epsilon(1e-10));
    // within the aligned snapshot column every other element is dark
    for (int n = 0; n < geom.n(); ++n)
        if (n != n_true) CHECK(std::norm(grid.r(n, t_true)) < 1e-20 * expected_peak);
}

TEST_CASE("pure-noise grid has unit mean cell energy") {
    const SimGeometry geom = grid_geometry(4, 4);
    ProtocolConfig cfg;
    cfg.t_x = 25;
    cfg.t_y = 25;  // 16 * 625 = 10^4 cells
    cfg.snr_db = -std::numeric_limits<double>::infinity();
    cfg.seed = 5150;

    const SnapshotGrid grid = digital_baseline_grid(geom, {0.3, -0.2}, cfg);
    const double mean_energy = grid.r.cwiseAbs2().mean();
    CHECK(mean_energy == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("seeded simulations are identical across reruns and systems") {
    const SimGeometry geom = grid_geometry(4, 4);
    auto stack = std::make_shared<const DiffractionStack>(build_stack(geom));
    const SimState state = random_state(stack, geom, 2);
    ProtocolConfig cfg;
    cfg.t_x = 6;
    cfg.t_y = 6;
    cfg.snr_db = 0.0;
    cfg.seed = 99;

    const ElectricalAngles psi{0.4, -1.1};
    const SnapshotGrid a = simulate_snapshots(geom, state, psi, cfg);
    const SnapshotGrid b = simulate_snapshots(geom, state, psi, cfg);
    CHECK((a.r - b.r).norm() == 0.0);

    // same seed, zero signal: device grid and digital grid share the noise bits
    ProtocolConfig silent = cfg;
    silent.snr_db = -std::numeric_limits<double>::infinity();
    const SnapshotGrid noise_sim = simulate_snapshots(geom, state, psi, silent);
    const SnapshotGrid noise_dig = digital_baseline_grid(geom, psi, silent);
    CHECK((noise_sim.r - noise_dig.r).norm() == 0.0);
}

TEST_CASE("diagonal incidence gives an x/y-symmetric energy map") {
    // square grids, psi_x = psi_y: swapping the axis roles of (n, t) relabels the map
    const SimGeometry geom = grid_geometry(4, 4);
    ProtocolConfig cfg;
    cfg.t_x = cfg.t_y = 5;
    cfg.snr_db = 0.0;
    cfg.noiseless = true;
    const ElectricalAngles psi{0.37 * pi, 0.37 * pi};
    const SnapshotGrid grid = digital_baseline_grid(geom, psi, cfg);
    for (int t = 0; t < cfg.snapshots(); ++t)
        for (int n = 0; n < geom.n(); ++n) {
            const int swapped_n = (n % geom.n_x) * geom.n_x + (n / geom.n_x);
            const int swapped_t = (t % cfg.t_x) * cfg.t_x + (t / cfg.t_x);
            CHECK(std::norm(grid.r(n, t)) ==
                  doctest::Approx(std::norm(grid.r(swapped_n, swapped_t))).epsilon(1e-12));
        }
}

TEST_CASE("grid csv export") {
    const SimGeometry geom = grid_geometry(2, 1);
    ProtocolConfig cfg;
    cfg.t_x = 2;
    cfg.t_y = 1;
    cfg.noiseless = true;
    const SnapshotGrid grid = digital_baseline_grid(geom, {0.1, 0.0}, cfg);

    const auto dir = std::filesystem::temp_directory_path() / "simdoa_grid_csv";
    std::filesystem::create_directories(dir);
    const auto path = dir / "grid.csv";
    write_grid_csv(grid, path.string());

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,t,re,im");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == grid.r.size());
    std::filesystem::remove_all(dir);
}

TEST_CASE("noiseless column energy bookkeeping") {
    const SimGeometry geom = grid_geometry(4, 4);
    auto stack = std::make_shared<const DiffractionStack>(build_stack(geom));
    const SimState state = random_state(stack, geom, 31);
    ProtocolConfig cfg;
    cfg.t_x = 3;
    cfg.t_y = 2;
    cfg.snr_db = 7.0;
    cfg.noiseless = true;

    const ElectricalAngles psi{0.9, 0.1};
    const cxmat g = transfer_matrix(state);
    const SnapshotGrid grid = simulate_snapshots(geom, state, psi, cfg);
    const cxvec a = steering_vector(geom, psi);
    const double rho = std::pow(10.0, cfg.snr_db / 10.0);
    for (int t = 0; t < cfg.snapshots(); ++t) {
        const InputLayerPhases xi0 = input_phase_schedule(geom, cfg, t);
        cxvec x(geom.n());
        for (int i = 0; i < geom.n(); ++i) x[i] = std::polar(1.0, xi0.xi0[i]) * a[i];
        const double expected = rho * (g * x).squaredNorm();
        CHECK(grid.r.col(t).squaredNorm() == doctest::Approx(expected).epsilon(1e-12));
    }
}
