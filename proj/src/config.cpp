// SPDX-License-Identifier: Apache-2.0
#include "simdoa/config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace simdoa {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const char* where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected a JSON object");
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            throw ConfigError(std::string(where) + ": unknown key '" + item.key() + "'");
}

double get_number(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return obj[key].get<double>();
}

int get_int(const json& obj, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer())
        throw ConfigError(std::string("'") + key + "' must be an integer");
    return obj[key].get<int>();
}

std::uint64_t get_seed(const json& obj, const char* key, std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_unsigned() && !obj[key].is_number_integer())
        throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
    return obj[key].get<std::uint64_t>();
}

bool get_bool(const json& obj, const char* key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_boolean()) throw ConfigError(std::string("'") + key + "' must be a boolean");
    return obj[key].get<bool>();
}

SimGeometry parse_geometry(const json& obj) {
    require_keys(obj, "geometry",
                 {"wavelength", "frequency_ghz", "n_x", "n_y", "d_x", "d_y",
                  "element_spacing_wavelengths", "m_x", "m_y", "s_x", "s_y",
                  "atom_spacing_wavelengths", "num_layers", "layer_spacing",
                  "layer_spacing_wavelengths", "atom_area"});
    if (obj.contains("wavelength") && obj.contains("frequency_ghz"))
        throw ConfigError("geometry: give wavelength or frequency_ghz, not both");
    double lambda = speed_of_light / 60.0e9;
    if (obj.contains("frequency_ghz")) {
        const double f = get_number(obj, "frequency_ghz", 60.0);
        if (!(f > 0.0)) throw ConfigError("geometry: frequency_ghz must be > 0");
        lambda = speed_of_light / (f * 1e9);
    }
    lambda = get_number(obj, "wavelength", lambda);

    auto spacing_pair = [&](const char* x_key, const char* y_key, const char* lambda_key) {
        if (obj.contains(lambda_key) && (obj.contains(x_key) || obj.contains(y_key)))
            throw ConfigError(std::string("geometry: give ") + lambda_key + " or explicit " +
                              x_key + "/" + y_key + ", not both");
        if (obj.contains(lambda_key)) {
            const double v = get_number(obj, lambda_key, 0.0) * lambda;
            return std::pair{v, v};
        }
        return std::pair{get_number(obj, x_key, lambda / 2.0),
                         get_number(obj, y_key, lambda / 2.0)};
    };
    const auto [d_x, d_y] = spacing_pair("d_x", "d_y", "element_spacing_wavelengths");
    const auto [s_x, s_y] = spacing_pair("s_x", "s_y", "atom_spacing_wavelengths");
    if (obj.contains("layer_spacing") && obj.contains("layer_spacing_wavelengths"))
        throw ConfigError("geometry: give layer_spacing or layer_spacing_wavelengths, not both");
    const double layer_spacing =
        obj.contains("layer_spacing_wavelengths")
            ? get_number(obj, "layer_spacing_wavelengths", 0.0) * lambda
            : get_number(obj, "layer_spacing", lambda);

    try {
        return SimGeometry::make(lambda, get_int(obj, "n_x", 4), get_int(obj, "n_y", 4), d_x,
                                 d_y, get_int(obj, "m_x", 12), get_int(obj, "m_y", 12), s_x,
                                 s_y, get_int(obj, "num_layers", 9), layer_spacing,
                                 get_number(obj, "atom_area", 0.0));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

TrainConfig parse_train(const json& obj, std::uint64_t master_seed) {
    require_keys(obj, "train", {"max_iters", "decay", "seed", "convergence_tol"});
    TrainConfig cfg;
    cfg.max_iters = get_int(obj, "max_iters", cfg.max_iters);
    cfg.decay = get_number(obj, "decay", cfg.decay);
    cfg.seed = get_seed(obj, "seed", master_seed);
    cfg.convergence_tol = get_number(obj, "convergence_tol", cfg.convergence_tol);
    if (cfg.max_iters < 1) throw ConfigError("train: max_iters must be >= 1");
    if (!(cfg.decay > 0.0 && cfg.decay < 1.0))
        throw ConfigError("train: decay must lie in (0, 1)");
    if (!(cfg.convergence_tol > 0.0))
        throw ConfigError("train: convergence_tol must be > 0");
    return cfg;
}

ProtocolConfig parse_protocol(const json& obj, std::uint64_t master_seed) {
    require_keys(obj, "protocol", {"t_x", "t_y", "snr_db", "seed", "noiseless"});
    ProtocolConfig cfg;
    cfg.t_x = get_int(obj, "t_x", cfg.t_x);
    cfg.t_y = get_int(obj, "t_y", cfg.t_y);
    cfg.snr_db = get_number(obj, "snr_db", cfg.snr_db);
    cfg.seed = get_seed(obj, "seed", master_seed);
    cfg.noiseless = get_bool(obj, "noiseless", cfg.noiseless);
    if (cfg.t_x < 1 || cfg.t_y < 1) throw ConfigError("protocol: t_x and t_y must be >= 1");
    return cfg;
}

template <typename T>
std::vector<T> get_list(const json& obj, const char* key, std::vector<T> fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_array() || obj[key].empty())
        throw ConfigError(std::string("'") + key + "' must be a non-empty array");
    std::vector<T> out;
    for (const auto& v : obj[key]) {
        if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must hold numbers");
        out.push_back(v.get<T>());
    }
    return out;
}

void parse_experiment(const json& obj, RunConfig& config) {
    require_keys(obj, "experiment",
                 {"kind", "zetas", "layer_counts", "atoms_per_axis", "snr_db_values",
                  "snapshots_per_axis", "spectrum_cases", "spectrum_snapshots_per_axis",
                  "trials"});
    if (obj.contains("kind")) {
        if (!obj["kind"].is_string()) throw ConfigError("experiment: 'kind' must be a string");
        try {
            config.kind = experiment_kind_from_string(obj["kind"].get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    ExperimentSpec& spec = config.experiment;
    spec.zetas = get_list<double>(obj, "zetas", spec.zetas);
    spec.layer_counts = get_list<int>(obj, "layer_counts", spec.layer_counts);
    spec.atoms_per_axis = get_list<int>(obj, "atoms_per_axis", spec.atoms_per_axis);
    spec.snr_db_values = get_list<double>(obj, "snr_db_values", spec.snr_db_values);
    spec.snapshots_per_axis = get_list<int>(obj, "snapshots_per_axis", spec.snapshots_per_axis);
    spec.spectrum_snapshots_per_axis =
        get_int(obj, "spectrum_snapshots_per_axis", spec.spectrum_snapshots_per_axis);
    spec.trials = get_int(obj, "trials", spec.trials);
    if (spec.trials < 1) throw ConfigError("experiment: trials must be >= 1");
    if (spec.spectrum_snapshots_per_axis < 1)
        throw ConfigError("experiment: spectrum_snapshots_per_axis must be >= 1");
    for (double z : spec.zetas)
        if (!(z > 0.0 && z < 1.0)) throw ConfigError("experiment: zetas must lie in (0, 1)");
    for (int v : spec.layer_counts)
        if (v < 1) throw ConfigError("experiment: layer_counts must be >= 1");
    for (int v : spec.atoms_per_axis)
        if (v < 1) throw ConfigError("experiment: atoms_per_axis must be >= 1");
    for (int v : spec.snapshots_per_axis)
        if (v < 1) throw ConfigError("experiment: snapshots_per_axis must be >= 1");
    if (obj.contains("spectrum_cases")) {
        const json& cases = obj["spectrum_cases"];
        if (!cases.is_array() || cases.empty())
            throw ConfigError("experiment: 'spectrum_cases' must be a non-empty array");
        spec.spectrum_cases.clear();
        for (const auto& pair : cases) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
                !pair[1].is_number())
                throw ConfigError(
                    "experiment: spectrum_cases entries must be [psi_x, psi_y] in units of pi");
            const double vx = pair[0].get<double>(), vy = pair[1].get<double>();
            if (vx < -1.0 || vx >= 1.0 || vy < -1.0 || vy >= 1.0)
                throw ConfigError("experiment: spectrum case angles must lie in [-1, 1)");
            spec.spectrum_cases.push_back({pi * vx, pi * vy});
        }
    }
}

}  // namespace

RunConfig default_run_config() { return RunConfig{}; }

RunConfig parse_run_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    require_keys(root, "config", {"seed", "geometry", "train", "protocol", "experiment"});
    RunConfig config;
    config.seed = get_seed(root, "seed", config.seed);
    if (root.contains("geometry")) config.geometry = parse_geometry(root["geometry"]);
    config.train = parse_train(root.contains("train") ? root["train"] : json::object(),
                               config.seed);
    config.protocol =
        parse_protocol(root.contains("protocol") ? root["protocol"] : json::object(),
                       config.seed);
    if (root.contains("experiment")) parse_experiment(root["experiment"], config);
    config.experiment.geometry = config.geometry;
    config.experiment.train = config.train;
    config.experiment.master_seed = config.seed;
    return config;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_run_config(text.str());
}

std::string run_config_to_json(const RunConfig& config) {
    json root;
    root["seed"] = config.seed;
    json& g = root["geometry"];
    g["wavelength"] = config.geometry.wavelength;
    g["n_x"] = config.geometry.n_x;
    g["n_y"] = config.geometry.n_y;
    g["d_x"] = config.geometry.d_x;
    g["d_y"] = config.geometry.d_y;
    g["m_x"] = config.geometry.m_x;
    g["m_y"] = config.geometry.m_y;
    g["s_x"] = config.geometry.s_x;
    g["s_y"] = config.geometry.s_y;
    g["num_layers"] = config.geometry.num_layers;
    g["layer_spacing"] = config.geometry.layer_spacing;
    g["atom_area"] = config.geometry.atom_area;
    json& t = root["train"];
    t["max_iters"] = config.train.max_iters;
    t["decay"] = config.train.decay;
    t["seed"] = config.train.seed;
    t["convergence_tol"] = config.train.convergence_tol;
    json& p = root["protocol"];
    p["t_x"] = config.protocol.t_x;
    p["t_y"] = config.protocol.t_y;
    p["snr_db"] = config.protocol.snr_db;
    p["seed"] = config.protocol.seed;
    p["noiseless"] = config.protocol.noiseless;
    json& e = root["experiment"];
    e["kind"] = to_string(config.kind);
    e["zetas"] = config.experiment.zetas;
    e["layer_counts"] = config.experiment.layer_counts;
    e["atoms_per_axis"] = config.experiment.atoms_per_axis;
    e["snr_db_values"] = config.experiment.snr_db_values;
    e["snapshots_per_axis"] = config.experiment.snapshots_per_axis;
    json cases = json::array();
    for (const ElectricalAngles& c : config.experiment.spectrum_cases)
        cases.push_back({c.psi_x / pi, c.psi_y / pi});
    e["spectrum_cases"] = cases;
    e["spectrum_snapshots_per_axis"] = config.experiment.spectrum_snapshots_per_axis;
    e["trials"] = config.experiment.trials;
    return root.dump(2) + "\n";
}

}  // namespace simdoa
