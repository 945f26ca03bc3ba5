// SPDX-License-Identifier: Apache-2.0
#include "simdoa/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace simdoa {

double loss(const cxmat& g, const cxmat& f, cxd beta) {
    if (g.rows() != f.rows() || g.cols() != f.cols())
        throw std::invalid_argument("loss: shape mismatch between response and target");
    return (beta * g - f).squaredNorm();
}

cxd ls_beta(const cxmat& g, const cxmat& f) {
    if (g.rows() != f.rows() || g.cols() != f.cols())
        throw std::invalid_argument("ls_beta: shape mismatch between response and target");
    const double denom = g.squaredNorm();
    if (denom == 0.0) throw std::invalid_argument("ls_beta: response matrix is identically zero");
    const cxd num = (g.conjugate().cwiseProduct(f)).sum();
    return num / denom;
}

namespace {

/// Gradient from precomputed partials; shared by the public entry point and the
/// training loop so the loop pays one forward/backward sweep per iteration.
std::vector<Eigen::VectorXd> gradient_from_partials(const SimState& state,
                                                    const std::vector<cxmat>& q_all,
                                                    const std::vector<cxmat>& b_all,
                                                    const cxmat& g, const cxmat& f, cxd beta) {
    const cxmat residual = beta * g - f;
    const cxd beta_conj = std::conj(beta);
    std::vector<Eigen::VectorXd> grads(state.layers());
    for (int l = 0; l < state.layers(); ++l) {
        const cxmat back_proj = b_all[l].adjoint() * residual;  // M x N
        const cxvec row_sums = q_all[l].conjugate().cwiseProduct(back_proj).rowwise().sum();
        const cxvec scaled = beta_conj * layer_coefficients(state, l).conjugate().cwiseProduct(row_sums);
        grads[l] = 2.0 * scaled.imag();
    }
    return grads;
}

cxmat response_from_partials(const SimState& state, const std::vector<cxmat>& q_all,
                             const std::vector<cxmat>& b_all) {
    return b_all[0] * (layer_coefficients(state, 0).asDiagonal() * q_all[0]).eval();
}

}  // namespace

std::vector<Eigen::VectorXd> gradient(const SimState& state, const cxmat& f, cxd beta) {
    const auto q_all = forward_partials(state);
    const auto b_all = backward_partials(state);
    const cxmat g = response_from_partials(state, q_all, b_all);
    return gradient_from_partials(state, q_all, b_all, g, f, beta);
}

std::pair<SimState, TrainReport> train_with_stack(std::shared_ptr<const DiffractionStack> stack,
                                                  const SimGeometry& geom,
                                                  const TargetOperator& target,
                                                  const TrainConfig& cfg) {
    if (cfg.max_iters < 1) throw std::invalid_argument("train: max_iters must be >= 1");
    if (!(cfg.decay > 0.0 && cfg.decay < 1.0))
        throw std::invalid_argument("train: decay must lie in (0, 1)");
    if (target.n() != geom.n())
        throw std::invalid_argument("train: target size does not match geometry");

    SimState state = random_state(std::move(stack), geom, cfg.seed);
    const cxmat& f = target.f;
    const double target_energy = f.squaredNorm();  // N^2 for unit-modulus entries

    TrainReport report;
    report.loss_history.reserve(cfg.max_iters + 1);

    for (int k = 0;; ++k) {
        const auto q_all = forward_partials(state);
        const auto b_all = backward_partials(state);
        const cxmat g = response_from_partials(state, q_all, b_all);
        const cxd beta = ls_beta(g, f);
        const double l_now = loss(g, f, beta);
        report.loss_history.push_back(l_now);
        report.normalized_loss_history.push_back(l_now / target_energy);
        report.beta_history.push_back(beta);

        if (k >= 10) {
            const double l_ref = report.loss_history[k - 10];
            if (l_ref > 0.0 && std::abs(l_now - l_ref) / l_ref < cfg.convergence_tol) {
                report.converged = true;
                break;
            }
        }
        if (k == cfg.max_iters) break;

        auto grads = gradient_from_partials(state, q_all, b_all, g, f, beta);
        double grad_max = 0.0;
        for (const auto& gl : grads) grad_max = std::max(grad_max, gl.cwiseAbs().maxCoeff());
        if (grad_max == 0.0) {  // exact stationary point
            report.converged = true;
            break;
        }
        const double eta = pi * std::pow(cfg.decay, k) / grad_max;
        report.eta_history.push_back(eta);
        for (int l = 0; l < state.layers(); ++l) {
            state.xi[l] -= eta * grads[l];
            for (Eigen::Index i = 0; i < state.xi[l].size(); ++i)
                state.xi[l][i] = wrap_two_pi(state.xi[l][i]);
        }
    }

    report.iterations_run = static_cast<int>(report.loss_history.size()) - 1;
    report.final_beta = report.beta_history.back();
    return {std::move(state), std::move(report)};
}

std::pair<SimState, TrainReport> train(const SimGeometry& geom, const TargetOperator& target,
                                       const TrainConfig& cfg) {
    auto stack = std::make_shared<const DiffractionStack>(build_stack(geom));
    return train_with_stack(std::move(stack), geom, target, cfg);
}

void write_train_report_csv(const TrainReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_train_report_csv: cannot open '" + path + "'");
    out << "iteration,loss,normalized_loss,eta,beta_re,beta_im\n";
    char buf[160];
    for (std::size_t k = 0; k < report.loss_history.size(); ++k) {
        const double eta = k < report.eta_history.size() ? report.eta_history[k] : 0.0;
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", k,
                      report.loss_history[k], report.normalized_loss_history[k], eta,
                      report.beta_history[k].real(), report.beta_history[k].imag());
        out << buf;
    }
    if (!out) throw std::runtime_error("write_train_report_csv: write failed for '" + path + "'");
}

}  // namespace simdoa
