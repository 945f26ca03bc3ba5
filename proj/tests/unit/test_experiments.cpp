// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "simdoa/experiments.hpp"

using namespace simdoa;

namespace {

// small device so the experiment loops stay fast
ExperimentSpec tiny_spec() {
    const double lambda = 0.005;
    ExperimentSpec spec;
    spec.geometry = SimGeometry::make(lambda, 2, 2, lambda / 2, lambda / 2, 4, 4, lambda / 2,
                                      lambda / 2, 2, lambda);
    spec.train.max_iters = 40;
    spec.train.seed = 5;
    spec.master_seed = 5;
    return spec;
}

std::string first_line(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

}  // namespace

TEST_CASE("experiment kind names round trip") {
    for (ExperimentKind kind : {ExperimentKind::convergence, ExperimentKind::layer_sweep,
                                ExperimentKind::mse_vs_snr, ExperimentKind::spectrum})
        CHECK(experiment_kind_from_string(to_string(kind)) == kind);
    CHECK_THROWS_AS(experiment_kind_from_string("fft"), std::invalid_argument);
}

TEST_CASE("convergence runs share the initial state") {
    ExperimentSpec spec = tiny_spec();
    spec.zetas = {0.9, 0.95};
    const ConvergenceResult result = run_convergence(spec);
    REQUIRE(result.reports.size() == 2);
    CHECK(result.reports[0].loss_history[0] == result.reports[1].loss_history[0]);
    CHECK(result.reports[0].loss_history.back() < result.reports[0].loss_history[0]);
}

TEST_CASE("layer sweep covers the grid in order") {
    ExperimentSpec spec = tiny_spec();
    spec.atoms_per_axis = {3, 4};
    spec.layer_counts = {1, 2};
    const LayerSweepResult result = run_layer_sweep(spec);
    REQUIRE(result.cells.size() == 4);
    CHECK(result.cells[0].atoms_per_axis == 3);
    CHECK(result.cells[0].num_layers == 1);
    CHECK(result.cells[3].atoms_per_axis == 4);
    CHECK(result.cells[3].num_layers == 2);
    for (const auto& c : result.cells) CHECK(c.normalized_loss > 0.0);
}

TEST_CASE("mse sweep produces ordered points and is reproducible") {
    ExperimentSpec spec = tiny_spec();
    spec.trials = 4;
    spec.snr_db_values = {0.0, 20.0};
    spec.snapshots_per_axis = {4};
    const MseVsSnrResult a = run_mse_vs_snr(spec);
    const MseVsSnrResult b = run_mse_vs_snr(spec);
    REQUIRE(a.points.size() == 2);
    CHECK(a.points[0].snr_db == 0.0);
    CHECK(a.points[1].snr_db == 20.0);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].mse_device == b.points[i].mse_device);
        CHECK(a.points[i].mse_digital == b.points[i].mse_digital);
    }
}

TEST_CASE("spectrum cases carry peaks and nearest bins") {
    ExperimentSpec spec = tiny_spec();
    spec.spectrum_snapshots_per_axis = 6;
    spec.spectrum_cases = {{0.3 * pi, -0.4 * pi}};
    const SpectrumResult result = run_spectrum(spec);
    REQUIRE(result.cases.size() == 1);
    const SpectrumCase& c = result.cases[0];
    CHECK(c.grid.rows() == spec.geometry.n());
    CHECK(c.grid.cols() == 36);
    CHECK(c.peak_n >= 0);
    CHECK(c.peak_n < spec.geometry.n());
    CHECK(c.nearest_t >= 0);
    CHECK(c.nearest_t < 36);
}

TEST_CASE("csv emitters write the documented headers") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "simdoa_experiments_test";
    fs::create_directories(dir);

    ExperimentSpec spec = tiny_spec();
    spec.zetas = {0.9};
    spec.trials = 2;
    spec.snr_db_values = {10.0};
    spec.snapshots_per_axis = {4};
    spec.spectrum_snapshots_per_axis = 4;
    spec.spectrum_cases = {{0.0, 0.0}};
    spec.atoms_per_axis = {3};
    spec.layer_counts = {1};

    write_convergence_csv(run_convergence(spec), (dir / "c.csv").string());
    CHECK(first_line(dir / "c.csv") == "zeta,iteration,loss,normalized_loss");

    write_layer_sweep_csv(run_layer_sweep(spec), (dir / "l.csv").string());
    CHECK(first_line(dir / "l.csv") ==
          "atoms_per_axis,atoms_total,num_layers,normalized_loss,converged");

    const MseVsSnrResult mse_result = run_mse_vs_snr(spec);
    write_mse_vs_snr_csv(mse_result, spec.trials, (dir / "m.csv").string());
    CHECK(first_line(dir / "m.csv") == "snapshots_per_axis,snr_db,mse_device,mse_digital,trials");

    const SpectrumResult spectrum = run_spectrum(spec);
    write_spectrum_case_csv(spectrum.cases[0], (dir / "s.csv").string());
    CHECK(first_line(dir / "s.csv") == "n,t,re,im,energy");

    fs::remove_all(dir);
}

TEST_CASE("trained device agrees with the ideal operator on most on-grid points") {
    // the 200-iteration fit flips a few near-threshold cells by one fine step;
    // agreement on the rest and bounded displacement are the stable properties
    const SimGeometry geom = SimGeometry::reference_setup();
    const TargetOperator target = dft_matrix(geom.n_x, geom.n_y);
    TrainConfig tcfg;
    tcfg.seed = 1;
    const auto [state, report] = train(geom, target, tcfg);
    const cxmat device = report.final_beta * transfer_matrix(state);

    ProtocolConfig cfg;
    cfg.t_x = cfg.t_y = 4;
    cfg.snr_db = 0.0;
    cfg.noiseless = true;
    int match = 0, total = 0;
    for (int t = 0; t < cfg.snapshots(); ++t)
        for (int n = 0; n < geom.n(); ++n, ++total) {
            const ElectricalAngles truth = electrical_from_peak(geom, cfg, n, t);
            const auto [pn, pt] = peak_search(simulate_response_grid(device, geom, truth, cfg));
            if (pn == n && pt == t) {
                ++match;
            } else {
                // displaced peaks stay within one fine step per axis
                const int kx_p = (pn % geom.n_x) * cfg.t_x + (pt % cfg.t_x);
                const int kx_t = (n % geom.n_x) * cfg.t_x + (t % cfg.t_x);
                const int ky_p = (pn / geom.n_x) * cfg.t_y + (pt / cfg.t_x);
                const int ky_t = (n / geom.n_x) * cfg.t_y + (t / cfg.t_x);
                const int bins = geom.n_x * cfg.t_x;
                const int dx = std::min(std::abs(kx_p - kx_t), bins - std::abs(kx_p - kx_t));
                const int dy = std::min(std::abs(ky_p - ky_t), bins - std::abs(ky_p - ky_t));
                CHECK(dx <= 1);
                CHECK(dy <= 1);
            }
        }
    CHECK(match >= (total * 9) / 10);
}

TEST_CASE("thread override is read from the environment") {
    CHECK(experiment_threads() >= 1);
}
