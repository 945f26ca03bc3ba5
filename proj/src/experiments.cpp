// SPDX-License-Identifier: Apache-2.0
#include "simdoa/experiments.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "simdoa/rng.hpp"

namespace simdoa {

const char* to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::convergence: return "convergence";
        case ExperimentKind::layer_sweep: return "layer_sweep";
        case ExperimentKind::mse_vs_snr: return "mse_vs_snr";
        case ExperimentKind::spectrum: return "spectrum";
    }
    return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
    if (name == "convergence") return ExperimentKind::convergence;
    if (name == "layer_sweep") return ExperimentKind::layer_sweep;
    if (name == "mse_vs_snr") return ExperimentKind::mse_vs_snr;
    if (name == "spectrum") return ExperimentKind::spectrum;
    throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

int experiment_threads() {
    if (const char* env = std::getenv("SIMDOA_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

ConvergenceResult run_convergence(const ExperimentSpec& spec) {
    if (spec.zetas.empty()) throw std::invalid_argument("run_convergence: empty decay list");
    const TargetOperator target = dft_matrix(spec.geometry.n_x, spec.geometry.n_y);
    auto stack = std::make_shared<const DiffractionStack>(build_stack(spec.geometry));
    ConvergenceResult result;
    result.zetas = spec.zetas;
    result.reports.resize(spec.zetas.size());
    const int nt = experiment_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
    for (int i = 0; i < static_cast<int>(spec.zetas.size()); ++i) {
        TrainConfig cfg = spec.train;
        cfg.decay = spec.zetas[i];
        result.reports[i] = train_with_stack(stack, spec.geometry, target, cfg).second;
    }
    return result;
}

LayerSweepResult run_layer_sweep(const ExperimentSpec& spec) {
    if (spec.atoms_per_axis.empty() || spec.layer_counts.empty())
        throw std::invalid_argument("run_layer_sweep: empty sweep lists");
    const TargetOperator target = dft_matrix(spec.geometry.n_x, spec.geometry.n_y);
    std::vector<LayerSweepCell> cells;
    for (int a : spec.atoms_per_axis)
        for (int l : spec.layer_counts) cells.push_back({a, l, 0.0, false});
    const int nt = experiment_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
        const SimGeometry base = spec.geometry;
        const SimGeometry geom = SimGeometry::make(
            base.wavelength, base.n_x, base.n_y, base.d_x, base.d_y, cells[i].atoms_per_axis,
            cells[i].atoms_per_axis, base.s_x, base.s_y, cells[i].num_layers,
            base.layer_spacing);
        const TrainReport report = train(geom, target, spec.train).second;
        cells[i].normalized_loss = report.normalized_loss_history.back();
        cells[i].converged = report.converged;
    }
    return {std::move(cells)};
}

MseVsSnrResult run_mse_vs_snr(const ExperimentSpec& spec) {
    if (spec.snr_db_values.empty() || spec.snapshots_per_axis.empty() || spec.trials < 1)
        throw std::invalid_argument("run_mse_vs_snr: empty sweep lists");
    const TargetOperator target = dft_matrix(spec.geometry.n_x, spec.geometry.n_y);
    auto [state, report] = train(spec.geometry, target, spec.train);
    const cxmat device = report.final_beta * transfer_matrix(state);

    MseVsSnrResult result;
    result.train_report = report;
    result.trials = spec.trials;
    const int n_snr = static_cast<int>(spec.snr_db_values.size());
    const int nt = experiment_threads();
    for (int t_axis : spec.snapshots_per_axis) {
        // slot per (trial, snr, system); reduced sequentially afterwards
        std::vector<double> dev(spec.trials * n_snr), dig(spec.trials * n_snr);
#pragma omp parallel for schedule(static) num_threads(nt)
        for (int trial = 0; trial < spec.trials; ++trial) {
            Rng direction_rng(mix_seed(spec.master_seed, 2 * trial));
            const ElectricalAngles truth{pi * (2.0 * direction_rng.uniform() - 1.0),
                                         pi * (2.0 * direction_rng.uniform() - 1.0)};
            ProtocolConfig cfg;
            cfg.t_x = cfg.t_y = t_axis;
            cfg.seed = mix_seed(spec.master_seed, 2 * trial + 1);
            for (int si = 0; si < n_snr; ++si) {
                cfg.snr_db = spec.snr_db_values[si];
                const SnapshotGrid g_dev = simulate_response_grid(device, spec.geometry, truth, cfg);
                const SnapshotGrid g_dig = digital_baseline_grid(spec.geometry, truth, cfg);
                dev[trial * n_snr + si] =
                    mse(truth, estimate_doa(spec.geometry, cfg, g_dev).psi_hat);
                dig[trial * n_snr + si] =
                    mse(truth, estimate_doa(spec.geometry, cfg, g_dig).psi_hat);
            }
        }
        for (int si = 0; si < n_snr; ++si) {
            MsePoint point;
            point.snapshots_per_axis = t_axis;
            point.snr_db = spec.snr_db_values[si];
            double acc_dev = 0.0, acc_dig = 0.0;
            for (int trial = 0; trial < spec.trials; ++trial) {
                acc_dev += dev[trial * n_snr + si];
                acc_dig += dig[trial * n_snr + si];
            }
            point.mse_device = acc_dev / spec.trials;
            point.mse_digital = acc_dig / spec.trials;
            result.points.push_back(point);
        }
    }
    return result;
}

SpectrumResult run_spectrum(const ExperimentSpec& spec) {
    if (spec.spectrum_cases.empty())
        throw std::invalid_argument("run_spectrum: empty case list");
    const TargetOperator target = dft_matrix(spec.geometry.n_x, spec.geometry.n_y);
    auto [state, report] = train(spec.geometry, target, spec.train);
    const cxmat device = report.final_beta * transfer_matrix(state);

    SpectrumResult result;
    result.train_report = report;
    ProtocolConfig cfg;
    cfg.t_x = cfg.t_y = spec.spectrum_snapshots_per_axis;
    cfg.snr_db = 0.0;
    cfg.seed = spec.master_seed;
    cfg.noiseless = true;
    result.protocol = cfg;

    for (const ElectricalAngles& truth : spec.spectrum_cases) {
        SpectrumCase c;
        c.truth = truth;
        const SnapshotGrid grid = simulate_response_grid(device, spec.geometry, truth, cfg);
        c.grid = grid.r;
        std::tie(c.peak_n, c.peak_t) = peak_search(grid);
        c.psi_hat = electrical_from_peak(spec.geometry, cfg, c.peak_n, c.peak_t);
        std::tie(c.nearest_n, c.nearest_t) = nearest_combined_bin(spec.geometry, cfg, truth);
        c.peak_at_nearest_bin = (c.peak_n == c.nearest_n && c.peak_t == c.nearest_t);
        result.cases.push_back(std::move(c));
    }
    return result;
}

namespace {

std::ofstream open_out(const std::string& path, const char* what) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(std::string(what) + ": cannot open '" + path + "'");
    return out;
}

}  // namespace

void write_convergence_csv(const ConvergenceResult& result, const std::string& path) {
    auto out = open_out(path, "write_convergence_csv");
    out << "zeta,iteration,loss,normalized_loss\n";
    char buf[128];
    for (std::size_t zi = 0; zi < result.zetas.size(); ++zi) {
        const TrainReport& r = result.reports[zi];
        for (std::size_t k = 0; k < r.loss_history.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g,%zu,%.17g,%.17g\n", result.zetas[zi], k,
                          r.loss_history[k], r.normalized_loss_history[k]);
            out << buf;
        }
    }
}

void write_layer_sweep_csv(const LayerSweepResult& result, const std::string& path) {
    auto out = open_out(path, "write_layer_sweep_csv");
    out << "atoms_per_axis,atoms_total,num_layers,normalized_loss,converged\n";
    char buf[128];
    for (const LayerSweepCell& c : result.cells) {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g,%d\n", c.atoms_per_axis,
                      c.atoms_per_axis * c.atoms_per_axis, c.num_layers, c.normalized_loss,
                      c.converged ? 1 : 0);
        out << buf;
    }
}

void write_mse_vs_snr_csv(const MseVsSnrResult& result, int trials, const std::string& path) {
    auto out = open_out(path, "write_mse_vs_snr_csv");
    out << "snapshots_per_axis,snr_db,mse_device,mse_digital,trials\n";
    char buf[160];
    for (const MsePoint& p : result.points) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%d\n", p.snapshots_per_axis,
                      p.snr_db, p.mse_device, p.mse_digital, trials);
        out << buf;
    }
}

void write_spectrum_case_csv(const SpectrumCase& c, const std::string& path) {
    auto out = open_out(path, "write_spectrum_case_csv");
    out << "n,t,re,im,energy\n";
    char buf[160];
    for (Eigen::Index t = 0; t < c.grid.cols(); ++t)
        for (Eigen::Index n = 0; n < c.grid.rows(); ++n) {
            const cxd v = c.grid(n, t);
            std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g,%.17g,%.17g\n",
                          static_cast<long long>(n), static_cast<long long>(t), v.real(),
                          v.imag(), std::norm(v));
            out << buf;
        }
}

}  // namespace simdoa
