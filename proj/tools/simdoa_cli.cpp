// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: train a device, estimate a direction with a trained
// model, or run one of the canned experiments. Outputs are deterministic for a
// fixed config and seed.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>

#include "simdoa/config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace simdoa;

namespace {

RunConfig config_from_option(const std::string& config_path) {
    if (config_path.empty()) return default_run_config();
    return load_run_config(config_path);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

int cmd_train(const std::string& config_path, const std::string& out_dir) {
    const RunConfig config = config_from_option(config_path);
    fs::create_directories(out_dir);
    const TargetOperator target = dft_matrix(config.geometry.n_x, config.geometry.n_y);
    const auto [state, report] = train(config.geometry, target, config.train);
    save_state(config.geometry, state, (fs::path(out_dir) / "model.txt").string());
    write_train_report_csv(report, (fs::path(out_dir) / "train_report.csv").string());
    write_text(fs::path(out_dir) / "config.json", run_config_to_json(config));
    json summary;
    summary["iterations_run"] = report.iterations_run;
    summary["converged"] = report.converged;
    summary["normalized_loss"] = report.normalized_loss_history.back();
    summary["beta_re"] = report.final_beta.real();
    summary["beta_im"] = report.final_beta.imag();
    summary["model"] = (fs::path(out_dir) / "model.txt").string();
    std::cout << summary.dump() << "\n";
    return 0;
}

int cmd_estimate(const std::string& model_path, double psi_x_pi, double psi_y_pi, double snr_db,
                 int t_x, int t_y, std::uint64_t seed, bool noiseless) {
    SimGeometry geom;
    SimState state;
    try {
        std::tie(geom, state) = load_state(model_path);
    } catch (const std::runtime_error& e) {
        throw ConfigError(e.what());
    }
    ProtocolConfig cfg;
    cfg.t_x = t_x;
    cfg.t_y = t_y;
    cfg.snr_db = snr_db;
    cfg.seed = seed;
    cfg.noiseless = noiseless;
    if (cfg.t_x < 1 || cfg.t_y < 1) throw ConfigError("estimate: t_x and t_y must be >= 1");
    if (psi_x_pi < -1.0 || psi_x_pi >= 1.0 || psi_y_pi < -1.0 || psi_y_pi >= 1.0)
        throw ConfigError("estimate: --psi-x/--psi-y must lie in [-1, 1) (units of pi)");

    const ElectricalAngles truth{pi * psi_x_pi, pi * psi_y_pi};
    const TargetOperator target = dft_matrix(geom.n_x, geom.n_y);
    const cxmat response = transfer_matrix(state);
    const cxd beta = ls_beta(response, target.f);
    const SnapshotGrid grid = simulate_response_grid(beta * response, geom, truth, cfg);
    const DoaEstimate est = estimate_doa(geom, cfg, grid);

    json line;
    line["n_hat"] = est.n_hat;
    line["t_hat"] = est.t_hat;
    line["psi_x_pi"] = est.psi_hat.psi_x / pi;
    line["psi_y_pi"] = est.psi_hat.psi_y / pi;
    if (est.physical_hat) {
        line["azimuth_rad"] = est.physical_hat->azimuth;
        line["elevation_rad"] = est.physical_hat->elevation;
    } else {
        line["azimuth_rad"] = nullptr;
        line["elevation_rad"] = nullptr;
    }
    line["mse"] = mse(truth, est.psi_hat);
    std::cout << line.dump() << "\n";
    return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& kind_name,
                   const std::string& out_dir) {
    RunConfig config = config_from_option(config_path);
    if (!kind_name.empty()) {
        try {
            config.kind = experiment_kind_from_string(kind_name);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    json summary;
    summary["kind"] = to_string(config.kind);

    switch (config.kind) {
        case ExperimentKind::convergence: {
            const ConvergenceResult result = run_convergence(config.experiment);
            write_convergence_csv(result, (dir / "convergence.csv").string());
            json finals = json::array();
            for (std::size_t i = 0; i < result.zetas.size(); ++i)
                finals.push_back({{"zeta", result.zetas[i]},
                                  {"normalized_loss",
                                   result.reports[i].normalized_loss_history.back()}});
            summary["final_losses"] = finals;
            summary["files"] = {"convergence.csv"};
            break;
        }
        case ExperimentKind::layer_sweep: {
            const LayerSweepResult result = run_layer_sweep(config.experiment);
            write_layer_sweep_csv(result, (dir / "layer_sweep.csv").string());
            summary["cells"] = result.cells.size();
            summary["files"] = {"layer_sweep.csv"};
            break;
        }
        case ExperimentKind::mse_vs_snr: {
            const MseVsSnrResult result = run_mse_vs_snr(config.experiment);
            write_mse_vs_snr_csv(result, result.trials, (dir / "mse_vs_snr.csv").string());
            summary["trained_normalized_loss"] =
                result.train_report.normalized_loss_history.back();
            summary["files"] = {"mse_vs_snr.csv"};
            break;
        }
        case ExperimentKind::spectrum: {
            const SpectrumResult result = run_spectrum(config.experiment);
            json cases = json::array();
            json files = json::array();
            for (std::size_t i = 0; i < result.cases.size(); ++i) {
                const SpectrumCase& c = result.cases[i];
                const std::string name = "spectrum_case" + std::to_string(i + 1) + ".csv";
                write_spectrum_case_csv(c, (dir / name).string());
                files.push_back(name);
                cases.push_back({{"psi_x_pi", c.truth.psi_x / pi},
                                 {"psi_y_pi", c.truth.psi_y / pi},
                                 {"peak_n", c.peak_n},
                                 {"peak_t", c.peak_t},
                                 {"nearest_n", c.nearest_n},
                                 {"nearest_t", c.nearest_t},
                                 {"peak_at_nearest_bin", c.peak_at_nearest_bin}});
            }
            summary["cases"] = cases;
            summary["files"] = files;
            break;
        }
    }
    write_text(dir / "sidecar.json", run_config_to_json(config));
    std::cout << summary.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wave-domain DFT device: training, DOA estimation, experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", model_path, kind_name;
    double psi_x_pi = 0.0, psi_y_pi = 0.0, snr_db = 10.0;
    int t_x = 100, t_y = 100;
    std::uint64_t seed = 1;
    bool noiseless = false;

    CLI::App* train_cmd = app.add_subcommand("train", "Fit the device phases to the 2D DFT");
    train_cmd->add_option("--config", config_path, "JSON config (defaults when omitted)");
    train_cmd->add_option("--out-dir", out_dir, "Output directory");

    CLI::App* est_cmd = app.add_subcommand("estimate", "Estimate a direction with a trained model");
    est_cmd->add_option("--model", model_path, "Trained model file")->required();
    est_cmd->add_option("--psi-x", psi_x_pi, "True electrical angle x, units of pi")->required();
    est_cmd->add_option("--psi-y", psi_y_pi, "True electrical angle y, units of pi")->required();
    est_cmd->add_option("--snr-db", snr_db, "SNR in dB");
    est_cmd->add_option("--tx", t_x, "Snapshots per block");
    est_cmd->add_option("--ty", t_y, "Number of blocks");
    est_cmd->add_option("--seed", seed, "Noise/source seed");
    est_cmd->add_flag("--noiseless", noiseless, "Deterministic response, no source/noise draws");

    CLI::App* exp_cmd = app.add_subcommand("experiment", "Run a canned experiment");
    exp_cmd->add_option("--kind", kind_name,
                        "convergence | layer_sweep | mse_vs_snr | spectrum (overrides config)");
    exp_cmd->add_option("--config", config_path, "JSON config (defaults when omitted)");
    exp_cmd->add_option("--out-dir", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
        if (train_cmd->parsed()) return cmd_train(config_path, out_dir);
        if (est_cmd->parsed())
            return cmd_estimate(model_path, psi_x_pi, psi_y_pi, snr_db, t_x, t_y, seed,
                                noiseless);
        if (exp_cmd->parsed()) return cmd_experiment(config_path, kind_name, out_dir);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
