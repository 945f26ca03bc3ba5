// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

#include "simdoa/experiments.hpp"

namespace simdoa {

/// Config or input-file problem; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything a run needs: resolved geometry, training and protocol settings, and
/// experiment sweep lists. Loaded from JSON; every field defaults to the builtin
/// 60 GHz / 4x4 / 12x12 / 9-layer setup, so an empty object is a valid config.
struct RunConfig {
    std::uint64_t seed = 1;
    SimGeometry geometry = SimGeometry::reference_setup();
    TrainConfig train;
    ProtocolConfig protocol;
    ExperimentKind kind = ExperimentKind::convergence;
    ExperimentSpec experiment;  // geometry/train/master_seed mirrored from above
};

RunConfig default_run_config();

/// Parse and validate. Unknown keys are rejected; geometry accepts either explicit
/// meters (wavelength, d_x, ...) or the wavelength-relative convenience keys
/// (frequency_ghz, element_spacing_wavelengths, atom_spacing_wavelengths,
/// layer_spacing_wavelengths).
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

/// Canonical JSON (explicit meters, sorted keys). Parsing it again reproduces the
/// config; the experiment runners write it as the sidecar of every output set.
std::string run_config_to_json(const RunConfig& config);

}  // namespace simdoa
