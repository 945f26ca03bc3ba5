// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "simdoa/propagation.hpp"

namespace simdoa {

/// Trainable device state: one phase vector per intermediate layer, entries in
/// [0, 2*pi), plus the shared read-only diffraction stack.
struct SimState {
    std::vector<Eigen::VectorXd> xi;  // L vectors of length M
    std::shared_ptr<const DiffractionStack> stack;

    int layers() const { return static_cast<int>(xi.size()); }
};

/// Input-plane phase vector, length N, entries in [0, 2*pi).
struct InputLayerPhases {
    Eigen::VectorXd xi0;
};

/// Validating constructor; wraps every phase into [0, 2*pi).
SimState make_state(std::shared_ptr<const DiffractionStack> stack,
                    std::vector<Eigen::VectorXd> phases);

/// Phases i.i.d. uniform on [0, 2*pi) from the given seed.
SimState random_state(std::shared_ptr<const DiffractionStack> stack, const SimGeometry& geom,
                      std::uint64_t seed);

/// Unit-modulus transmission coefficients exp(j*xi_l) of layer l (0-based).
cxvec layer_coefficients(const SimState& state, int layer);

/// End-to-end response G = W_out * Y_L * W_mid * ... * W_mid * Y_1 * W_in, evaluated
/// right to left.
cxmat transfer_matrix(const SimState& state);

/// Forward partial products Q_l (M x N), l = 0..L-1: Q_0 = W_in and
/// Q_l = W_mid * diag(exp(j*xi_{l-1})) * Q_{l-1}; column n of Q_l is the field from
/// input element n illuminating layer l+1 (per-element illumination, batched over n).
std::vector<cxmat> forward_partials(const SimState& state);

/// Backward partial products B_l (N x M), l = 0..L-1: B_{L-1} = W_out and
/// B_l = B_{l+1} * diag(exp(j*xi_{l+1})) * W_mid. For every l,
/// G = B_l * diag(exp(j*xi_l)) * Q_l.
std::vector<cxmat> backward_partials(const SimState& state);

/// Per-input-element cascade quantities for one n: q[l] is the illumination of layer
/// l+1 and p[l] = B_l * diag(q[l]) satisfies p[l] * exp(j*xi_l) = column n of G.
struct PartialCascades {
    std::vector<cxvec> q;  // L vectors, length M
    std::vector<cxmat> p;  // L matrices, N x M
};

PartialCascades partial_cascades(const SimState& state, int n);

/// Plain-text model file: geometry fields and hash, then L*M phases as C99 hex-floats
/// (exact round trip). Throws std::runtime_error on malformed input.
void save_state(const SimGeometry& geom, const SimState& state, const std::string& path);
std::pair<SimGeometry, SimState> load_state(const std::string& path);

}  // namespace simdoa
