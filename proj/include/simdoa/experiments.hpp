// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "simdoa/estimator.hpp"
#include "simdoa/trainer.hpp"

namespace simdoa {

enum class ExperimentKind { convergence, layer_sweep, mse_vs_snr, spectrum };

const char* to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

/// Sweep lists and counts for the four canned experiments: decay sweep
/// {0.9, 0.95, 0.99}, layer counts 1..10, per-layer sizes {64, 100, 144, 196},
/// SNR -10..20 dB, snapshot blocks {25, 100}, and four spectrum directions on a
/// 32x32 snapshot grid.
struct ExperimentSpec {
    SimGeometry geometry = SimGeometry::reference_setup();
    TrainConfig train;
    std::vector<double> zetas{0.9, 0.95, 0.99};
    std::vector<int> layer_counts{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<int> atoms_per_axis{8, 10, 12, 14};
    std::vector<double> snr_db_values{-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0};
    std::vector<int> snapshots_per_axis{25, 100};
    std::vector<ElectricalAngles> spectrum_cases{{-0.67 * pi, -0.48 * pi},
                                                 {0.53 * pi, -0.34 * pi},
                                                 {-0.52 * pi, 0.41 * pi},
                                                 {0.44 * pi, 0.33 * pi}};
    int spectrum_snapshots_per_axis = 32;
    int trials = 100;
    std::uint64_t master_seed = 1;
};

/// One gradient-descent run per decay value, all starting from the same seeded
/// initial phases.
struct ConvergenceResult {
    std::vector<double> zetas;
    std::vector<TrainReport> reports;
};
ConvergenceResult run_convergence(const ExperimentSpec& spec);

struct LayerSweepCell {
    int atoms_per_axis = 0;
    int num_layers = 0;
    double normalized_loss = 0.0;
    bool converged = false;
};
struct LayerSweepResult {
    std::vector<LayerSweepCell> cells;  // ordered by (atoms_per_axis, num_layers)
};
LayerSweepResult run_layer_sweep(const ExperimentSpec& spec);

/// Monte Carlo MSE curves for the trained device (beta-scaled response) and the
/// exact-DFT reference, with common random numbers across SNR points and systems.
struct MsePoint {
    int snapshots_per_axis = 0;
    double snr_db = 0.0;
    double mse_device = 0.0;
    double mse_digital = 0.0;
};
struct MseVsSnrResult {
    std::vector<MsePoint> points;  // ordered by (snapshots_per_axis, snr_db)
    TrainReport train_report;
    int trials = 0;
};
MseVsSnrResult run_mse_vs_snr(const ExperimentSpec& spec);

/// Noiseless energy maps of the trained device for a list of incident directions.
struct SpectrumCase {
    ElectricalAngles truth;
    cxmat grid;  // N x T received samples
    int peak_n = 0, peak_t = 0;
    ElectricalAngles psi_hat;
    int nearest_n = 0, nearest_t = 0;  // combined bin closest to the true direction
    bool peak_at_nearest_bin = false;
};
struct SpectrumResult {
    std::vector<SpectrumCase> cases;
    TrainReport train_report;
    ProtocolConfig protocol;
};
SpectrumResult run_spectrum(const ExperimentSpec& spec);

// Plot-ready CSV emitters.
void write_convergence_csv(const ConvergenceResult& result, const std::string& path);
void write_layer_sweep_csv(const LayerSweepResult& result, const std::string& path);
void write_mse_vs_snr_csv(const MseVsSnrResult& result, int trials, const std::string& path);
void write_spectrum_case_csv(const SpectrumCase& c, const std::string& path);

/// Worker count for the trial/sweep loops: SIMDOA_THREADS when set, otherwise the
/// hardware concurrency. Results are identical for any value (indexed result slots,
/// sequential reduction).
int experiment_threads();

}  // namespace simdoa
