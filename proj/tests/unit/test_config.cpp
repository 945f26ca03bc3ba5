// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "simdoa/config.hpp"

using namespace simdoa;

TEST_CASE("defaults reproduce the reference setup") {
    const RunConfig config = parse_run_config("{}");
    CHECK(config.geometry.hash() == SimGeometry::reference_setup().hash());
    CHECK(config.train.max_iters == 200);
    CHECK(config.train.decay == 0.95);
    CHECK(config.protocol.t_x == 100);
    CHECK(config.kind == ExperimentKind::convergence);
    CHECK(config.experiment.zetas == std::vector<double>{0.9, 0.95, 0.99});
    CHECK(config.experiment.atoms_per_axis == std::vector<int>{8, 10, 12, 14});
    CHECK(config.experiment.trials == 100);
    CHECK(config.experiment.spectrum_cases.size() == 4);
}

TEST_CASE("wavelength-relative geometry keys") {
    const RunConfig config = parse_run_config(R"({
        "geometry": {
            "frequency_ghz": 30.0,
            "element_spacing_wavelengths": 0.5,
            "atom_spacing_wavelengths": 0.25,
            "layer_spacing_wavelengths": 2.0,
            "n_x": 2, "n_y": 3, "m_x": 5, "m_y": 6, "num_layers": 4
        }
    })");
    const double lambda = speed_of_light / 30.0e9;
    CHECK(config.geometry.wavelength == doctest::Approx(lambda));
    CHECK(config.geometry.d_x == doctest::Approx(lambda / 2));
    CHECK(config.geometry.d_y == doctest::Approx(lambda / 2));
    CHECK(config.geometry.s_x == doctest::Approx(lambda / 4));
    CHECK(config.geometry.layer_spacing == doctest::Approx(2 * lambda));
    CHECK(config.geometry.n() == 6);
    CHECK(config.geometry.m() == 30);
    CHECK(config.geometry.num_layers == 4);
}

TEST_CASE("rejections") {
    CHECK_THROWS_AS(parse_run_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"unknown_top": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"geometry": {"weird": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"geometry": {"wavelength": 0.005,
                                                      "frequency_ghz": 60}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"geometry": {"d_x": 0.001,
                                                      "element_spacing_wavelengths": 0.5}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"train": {"decay": 1.5}})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"train": {"max_iters": 0}})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"protocol": {"t_x": 0}})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"experiment": {"kind": "nope"}})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"experiment": {"zetas": []}})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"experiment": {"spectrum_cases": [[2.0, 0.0]]}})"),
                    ConfigError);
    CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("seeds default to the master seed") {
    const RunConfig config = parse_run_config(R"({"seed": 99})");
    CHECK(config.seed == 99);
    CHECK(config.train.seed == 99);
    CHECK(config.protocol.seed == 99);
    CHECK(config.experiment.master_seed == 99);

    const RunConfig split = parse_run_config(R"({"seed": 99, "train": {"seed": 3}})");
    CHECK(split.train.seed == 3);
    CHECK(split.protocol.seed == 99);
}

TEST_CASE("canonical serialization round trip") {
    const RunConfig config = parse_run_config(R"({
        "seed": 5,
        "geometry": {"n_x": 2, "n_y": 2, "m_x": 4, "m_y": 4, "num_layers": 3},
        "train": {"max_iters": 77, "decay": 0.9},
        "protocol": {"t_x": 8, "t_y": 4, "snr_db": -2.5, "noiseless": true},
        "experiment": {"kind": "spectrum", "trials": 9,
                       "spectrum_cases": [[0.25, -0.75]]}
    })");
    const std::string canonical = run_config_to_json(config);
    const RunConfig reloaded = parse_run_config(canonical);
    CHECK(run_config_to_json(reloaded) == canonical);
    CHECK(reloaded.geometry.hash() == config.geometry.hash());
    CHECK(reloaded.train.max_iters == 77);
    CHECK(reloaded.protocol.noiseless == true);
    CHECK(reloaded.kind == ExperimentKind::spectrum);
    CHECK(reloaded.experiment.trials == 9);
    REQUIRE(reloaded.experiment.spectrum_cases.size() == 1);
    CHECK(reloaded.experiment.spectrum_cases[0].psi_x == doctest::Approx(0.25 * pi));
}
