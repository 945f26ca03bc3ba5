// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "simdoa/dft.hpp"
#include "simdoa/sim_model.hpp"

namespace simdoa {

struct TrainConfig {
    int max_iters = 200;
    double decay = 0.95;          // step-size decay, in (0, 1)
    std::uint64_t seed = 1;       // phase initialization
    double convergence_tol = 1e-6;  // relative loss change over a 10-iteration window
};

struct TrainReport {
    std::vector<double> loss_history;             // entry k: loss after k updates, LS beta refreshed
    std::vector<double> normalized_loss_history;  // loss / N^2
    std::vector<double> eta_history;              // step size used at each update (one fewer entry)
    std::vector<cxd> beta_history;
    cxd final_beta{0.0, 0.0};
    int iterations_run = 0;
    bool converged = false;
};

/// Frobenius fitting error ||beta*G - F||_F^2.
double loss(const cxmat& g, const cxmat& f, cxd beta);

/// Least-squares optimal scaling: beta = <vec(G), vec(F)> / ||vec(G)||^2. Throws
/// std::invalid_argument when G is identically zero.
cxd ls_beta(const cxmat& g, const cxmat& f);

/// Analytic gradient of the loss w.r.t. each layer's phase vector, beta held fixed:
/// entry (l, m) = 2 * sum_n Im{ conj(beta) * conj(v_{l,m}) * conj(q_{l,n,m}) * [B_l^H (beta*G - F)]_{m,n} }.
std::vector<Eigen::VectorXd> gradient(const SimState& state, const cxmat& f, cxd beta);

/// Gradient descent on the phase vectors. Per iteration: evaluate G, refresh beta by
/// least squares, compute the gradient at that beta, step with eta_k = pi * decay^k /
/// max_{l,m}|grad|, wrap phases. Stops when the relative loss change over 10
/// iterations falls below convergence_tol or after max_iters updates.
std::pair<SimState, TrainReport> train(const SimGeometry& geom, const TargetOperator& target,
                                       const TrainConfig& cfg);

/// Same loop, reusing an already-built stack (the layer sweep shares stacks).
std::pair<SimState, TrainReport> train_with_stack(std::shared_ptr<const DiffractionStack> stack,
                                                  const SimGeometry& geom,
                                                  const TargetOperator& target,
                                                  const TrainConfig& cfg);

/// CSV with columns iteration,loss,normalized_loss,eta,beta_re,beta_im; eta is 0 on
/// the final row (no step follows it).
void write_train_report_csv(const TrainReport& report, const std::string& path);

}  // namespace simdoa
