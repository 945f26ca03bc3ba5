// SPDX-License-Identifier: Apache-2.0
#include "simdoa/sim_model.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "simdoa/rng.hpp"

namespace simdoa {

namespace {

void check_state(const SimState& state) {
    if (!state.stack) throw std::invalid_argument("sim state: missing diffraction stack");
    const int l = state.layers();
    if (l != state.stack->num_layers)
        throw std::invalid_argument("sim state: layer count does not match stack");
    const auto m = state.stack->w_in.rows();
    for (const auto& xi : state.xi)
        if (xi.size() != m) throw std::invalid_argument("sim state: phase vector length mismatch");
}

}  // namespace

SimState make_state(std::shared_ptr<const DiffractionStack> stack,
                    std::vector<Eigen::VectorXd> phases) {
    SimState state{std::move(phases), std::move(stack)};
    check_state(state);
    for (auto& xi : state.xi)
        for (Eigen::Index i = 0; i < xi.size(); ++i) xi[i] = wrap_two_pi(xi[i]);
    return state;
}

SimState random_state(std::shared_ptr<const DiffractionStack> stack, const SimGeometry& geom,
                      std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Eigen::VectorXd> phases(geom.num_layers);
    for (auto& xi : phases) {
        xi.resize(geom.m());
        for (int i = 0; i < geom.m(); ++i) xi[i] = rng.uniform_phase();
    }
    return make_state(std::move(stack), std::move(phases));
}

cxvec layer_coefficients(const SimState& state, int layer) {
    if (layer < 0 || layer >= state.layers())
        throw std::out_of_range("layer_coefficients: layer index out of range");
    const Eigen::VectorXd& xi = state.xi[layer];
    cxvec v(xi.size());
    for (Eigen::Index i = 0; i < xi.size(); ++i) v[i] = std::polar(1.0, xi[i]);
    return v;
}

cxmat transfer_matrix(const SimState& state) {
    check_state(state);
    const DiffractionStack& stack = *state.stack;
    cxmat acc = layer_coefficients(state, 0).asDiagonal() * stack.w_in;
    for (int l = 1; l < state.layers(); ++l)
        acc = layer_coefficients(state, l).asDiagonal() * (stack.w_mid * acc).eval();
    return stack.w_out * acc;
}

std::vector<cxmat> forward_partials(const SimState& state) {
    check_state(state);
    const DiffractionStack& stack = *state.stack;
    std::vector<cxmat> q(state.layers());
    q[0] = stack.w_in;
    for (int l = 1; l < state.layers(); ++l)
        q[l] = stack.w_mid * (layer_coefficients(state, l - 1).asDiagonal() * q[l - 1]).eval();
    return q;
}

std::vector<cxmat> backward_partials(const SimState& state) {
    check_state(state);
    const DiffractionStack& stack = *state.stack;
    const int layers = state.layers();
    std::vector<cxmat> b(layers);
    b[layers - 1] = stack.w_out;
    for (int l = layers - 2; l >= 0; --l)
        b[l] = (b[l + 1] * layer_coefficients(state, l + 1).asDiagonal()).eval() * stack.w_mid;
    return b;
}

PartialCascades partial_cascades(const SimState& state, int n) {
    check_state(state);
    if (n < 0 || n >= state.stack->w_in.cols())
        throw std::out_of_range("partial_cascades: input element index out of range");
    const auto q_all = forward_partials(state);
    const auto b_all = backward_partials(state);
    PartialCascades out;
    out.q.reserve(q_all.size());
    out.p.reserve(q_all.size());
    for (std::size_t l = 0; l < q_all.size(); ++l) {
        cxvec q = q_all[l].col(n);
        out.p.push_back(b_all[l] * q.asDiagonal());
        out.q.push_back(std::move(q));
    }
    return out;
}

namespace {

std::string hex_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

double parse_double(const std::string& s, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::runtime_error(std::string("model file: bad ") + what + " value '" + s + "'");
    return v;
}

std::string expect_field(std::istream& in, const std::string& key) {
    std::string k, v;
    if (!(in >> k >> v) || k != key)
        throw std::runtime_error("model file: expected field '" + key + "'");
    return v;
}

}  // namespace

void save_state(const SimGeometry& geom, const SimState& state, const std::string& path) {
    check_state(state);
    if (state.layers() != geom.num_layers || state.xi[0].size() != geom.m())
        throw std::invalid_argument("save_state: state does not match geometry");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_state: cannot open '" + path + "' for writing");
    out << "simdoa-model 1\n";
    out << "wavelength " << hex_double(geom.wavelength) << "\n";
    out << "n_x " << geom.n_x << "\nn_y " << geom.n_y << "\n";
    out << "d_x " << hex_double(geom.d_x) << "\nd_y " << hex_double(geom.d_y) << "\n";
    out << "m_x " << geom.m_x << "\nm_y " << geom.m_y << "\n";
    out << "s_x " << hex_double(geom.s_x) << "\ns_y " << hex_double(geom.s_y) << "\n";
    out << "layers " << geom.num_layers << "\n";
    out << "layer_spacing " << hex_double(geom.layer_spacing) << "\n";
    out << "atom_area " << hex_double(geom.atom_area) << "\n";
    char hbuf[24];
    std::snprintf(hbuf, sizeof hbuf, "%016" PRIx64, geom.hash());
    out << "geometry_hash " << hbuf << "\n";
    out << "phases " << static_cast<long long>(geom.num_layers) * geom.m() << "\n";
    for (const auto& xi : state.xi)
        for (Eigen::Index i = 0; i < xi.size(); ++i) out << hex_double(xi[i]) << "\n";
    if (!out) throw std::runtime_error("save_state: write to '" + path + "' failed");
}

std::pair<SimGeometry, SimState> load_state(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_state: cannot open '" + path + "'");
    std::string magic, version;
    if (!(in >> magic >> version) || magic != "simdoa-model" || version != "1")
        throw std::runtime_error("load_state: '" + path + "' is not a simdoa model file");
    const double wavelength = parse_double(expect_field(in, "wavelength"), "wavelength");
    const int n_x = static_cast<int>(parse_double(expect_field(in, "n_x"), "n_x"));
    const int n_y = static_cast<int>(parse_double(expect_field(in, "n_y"), "n_y"));
    const double d_x = parse_double(expect_field(in, "d_x"), "d_x");
    const double d_y = parse_double(expect_field(in, "d_y"), "d_y");
    const int m_x = static_cast<int>(parse_double(expect_field(in, "m_x"), "m_x"));
    const int m_y = static_cast<int>(parse_double(expect_field(in, "m_y"), "m_y"));
    const double s_x = parse_double(expect_field(in, "s_x"), "s_x");
    const double s_y = parse_double(expect_field(in, "s_y"), "s_y");
    const int layers = static_cast<int>(parse_double(expect_field(in, "layers"), "layers"));
    const double layer_spacing = parse_double(expect_field(in, "layer_spacing"), "layer_spacing");
    const double atom_area = parse_double(expect_field(in, "atom_area"), "atom_area");
    SimGeometry geom =
        SimGeometry::make(wavelength, n_x, n_y, d_x, d_y, m_x, m_y, s_x, s_y, layers,
                          layer_spacing, atom_area);
    const std::string hash_hex = expect_field(in, "geometry_hash");
    char expect_hex[24];
    std::snprintf(expect_hex, sizeof expect_hex, "%016" PRIx64, geom.hash());
    if (hash_hex != expect_hex)
        throw std::runtime_error("load_state: geometry hash mismatch in '" + path + "'");
    const long long count = static_cast<long long>(parse_double(expect_field(in, "phases"), "phases"));
    if (count != static_cast<long long>(layers) * geom.m())
        throw std::runtime_error("load_state: phase count does not match geometry");
    std::vector<Eigen::VectorXd> phases(layers, Eigen::VectorXd(geom.m()));
    std::string tok;
    for (int l = 0; l < layers; ++l)
        for (int i = 0; i < geom.m(); ++i) {
            if (!(in >> tok)) throw std::runtime_error("load_state: truncated phase table");
            phases[l][i] = parse_double(tok, "phase");
        }
    auto stack = std::make_shared<const DiffractionStack>(build_stack(geom));
    return {geom, make_state(std::move(stack), std::move(phases))};
}

}  // namespace simdoa
