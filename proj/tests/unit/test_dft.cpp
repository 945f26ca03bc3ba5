// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "simdoa/dft.hpp"
#include "simdoa/geometry.hpp"

using namespace simdoa;

namespace {

// Independent construction: 1D DFT factors combined with an explicit Kronecker
// product, kron(F_y, F_x) entry (r, c) = F_y(r/nx, c/nx) * F_x(r%nx, c%nx).
cxmat kronecker_oracle(int n_x, int n_y) {
    cxmat fx(n_x, n_x), fy(n_y, n_y);
    for (int r = 0; r < n_x; ++r)
        for (int c = 0; c < n_x; ++c)
            fx(r, c) = std::polar(1.0, -two_pi * static_cast<double>(r * c) /
                                           static_cast<double>(n_x));
    for (int r = 0; r < n_y; ++r)
        for (int c = 0; c < n_y; ++c)
            fy(r, c) = std::polar(1.0, -two_pi * static_cast<double>(r * c) /
                                           static_cast<double>(n_y));
    const int n = n_x * n_y;
    cxmat k(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) k(r, c) = fy(r / n_x, c / n_x) * fx(r % n_x, c % n_x);
    return k;
}

}  // namespace

TEST_CASE("dft entries") {
    const TargetOperator t = dft_matrix(4, 4);

    SUBCASE("first row and column are ones") {
        for (int i = 0; i < t.n(); ++i) {
            CHECK(t.f(0, i) == cxd{1.0, 0.0});
            CHECK(t.f(i, 0) == cxd{1.0, 0.0});
        }
    }

    SUBCASE("single-axis entry") {
        const TargetOperator line = dft_matrix(4, 1);
        CHECK(std::abs(line.f(1, 1) - cxd{0.0, -1.0}) < 1e-15);  // e^{-j*pi/2}
    }

    SUBCASE("2x2 case equals the two-point Kronecker product") {
        const TargetOperator small = dft_matrix(2, 2);
        const cxmat expected = kronecker_oracle(2, 2);
        CHECK((small.f - expected).cwiseAbs().maxCoeff() == 0.0);
        // which is [[1,1],[1,-1]] kron [[1,1],[1,-1]] up to rounding in polar()
        CHECK(std::abs(small.f(1, 1) - cxd{-1.0, 0.0}) < 1e-15);
        CHECK(std::abs(small.f(3, 3) - cxd{1.0, 0.0}) < 1e-13);
    }
}

TEST_CASE("dft invariants") {
    for (auto [nx, ny] : {std::pair{4, 4}, std::pair{3, 5}, std::pair{1, 6}}) {
        const TargetOperator t = dft_matrix(nx, ny);
        const int n = t.n();

        // unit modulus
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) CHECK(std::abs(std::abs(t.f(r, c)) - 1.0) < 1e-15);

        // scaled unitarity
        const cxmat gram = t.f * t.f.adjoint();
        const cxmat expected = static_cast<double>(n) * cxmat::Identity(n, n);
        CHECK((gram - expected).cwiseAbs().maxCoeff() < 1e-10);

        // exact agreement with the Kronecker oracle
        CHECK((t.f - kronecker_oracle(nx, ny)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("on-grid steering vectors concentrate on one bin") {
    const int nx = 4, ny = 4;
    const TargetOperator t = dft_matrix(nx, ny);
    const double lambda = 0.005;
    const SimGeometry geom = SimGeometry::make(lambda, nx, ny, lambda / 2, lambda / 2, 4, 4,
                                               lambda / 2, lambda / 2, 1, lambda);
    for (int k = 0; k < nx; ++k)
        for (int l = 0; l < ny; ++l) {
            const ElectricalAngles psi{wrap_principal(two_pi * k / nx),
                                       wrap_principal(two_pi * l / ny)};
            const cxvec spectrum = t.f * steering_vector(geom, psi);
            int peak = 0;
            double best = 0.0;
            int big_count = 0;
            for (int i = 0; i < spectrum.size(); ++i) {
                const double mag = std::abs(spectrum[i]);
                if (mag > best) {
                    best = mag;
                    peak = i;
                }
                if (mag > 1e-9) ++big_count;
            }
            CHECK(big_count == 1);
            CHECK(best == doctest::Approx(static_cast<double>(t.n())).epsilon(1e-12));
            // positive on-grid angles land on the matching bin index
            CHECK(peak == l * nx + k);
        }
}

TEST_CASE("dft argument validation") {
    CHECK_THROWS_AS(dft_matrix(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(dft_matrix(4, -1), std::invalid_argument);
}
