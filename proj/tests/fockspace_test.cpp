// Copyright 2026 The fcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fcsim/fcf.hpp"
#include "fcsim/fockspace.hpp"

namespace fcsim {
namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double subspace_unitarity_error(const Eigen::MatrixXcd& u, Eigen::Index block) {
    const Eigen::MatrixXcd g = u.adjoint() * u;
    return (g.topLeftCorner(block, block) - Eigen::MatrixXcd::Identity(block, block))
        .cwiseAbs()
        .maxCoeff();
}

TEST(Annihilation, Entries) {
    const FockOperator a2 = annihilation(2);
    EXPECT_EQ(a2.matrix(0, 1), cplx(1.0));
    EXPECT_EQ(a2.matrix(0, 0), cplx(0.0));
    EXPECT_EQ(a2.matrix(1, 0), cplx(0.0));
    EXPECT_EQ(a2.matrix(1, 1), cplx(0.0));
    const FockOperator a4 = annihilation(4);
    EXPECT_DOUBLE_EQ(a4.matrix(2, 3).real(), std::sqrt(3.0));
    const Eigen::MatrixXcd number = a4.matrix.adjoint() * a4.matrix;
    for (int n = 0; n < 4; ++n)
        for (int m = 0; m < 4; ++m) EXPECT_NEAR(std::abs(number(n, m) - double(n == m ? n : 0)), 0.0, 1e-15);
    EXPECT_THROW(annihilation(1), std::invalid_argument);
}

TEST(Displacement, ZeroIsIdentity) {
    EXPECT_LT((displacement(0.0, 12).matrix - Eigen::MatrixXcd::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Displacement, VacuumColumnIsPoisson) {
    const FockOperator d = displacement(1.0, 40);
    for (int l = 0; l <= 10; ++l)
        EXPECT_NEAR(std::norm(d.matrix(l, 0)), std::exp(-1.0) / factorial(l), 1e-10) << l;
}

TEST(Displacement, WaterAlphaColumnNorm) {
    EXPECT_GE(displacement(-1.0162, 40).matrix.col(0).squaredNorm(), 1.0 - 1e-10);
}

TEST(Displacement, WarnsWhenLarge) {
    int warnings = 0;
    auto saved = warning_handler();
    warning_handler() = [&](std::string_view) { ++warnings; };
    displacement(3.0, 20);
    warning_handler() = saved;
    EXPECT_EQ(warnings, 1);
}

TEST(Squeezing, ZeroIsIdentity) {
    EXPECT_LT((squeezing(0.0, 12).matrix - Eigen::MatrixXcd::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Squeezing, VacuumColumnFollowsEvenLaw) {
    const double r = 0.3;
    const FockOperator s = squeezing(r, 40);
    for (int l = 0; l < 20; ++l) {
        const double p = std::norm(s.matrix(l, 0));
        if (l % 2) {
            EXPECT_LT(p, 1e-30) << l;
            continue;
        }
        const int k = l / 2;
        const double expected = factorial(2 * k) / (std::pow(4.0, k) * factorial(k) * factorial(k)) *
                                std::pow(std::tanh(r), 2 * k) / std::cosh(r);
        EXPECT_NEAR(p, expected, 1e-8) << l;
    }
}

TEST(Squeezing, WaterZetaUnitaryOnLowerHalf) {
    const Eigen::MatrixXcd s = detail::squeezing_raw(0.262, 40);
    const Eigen::MatrixXcd ssd = s * s.adjoint();
    EXPECT_LT((ssd.topLeftCorner(20, 20) - Eigen::MatrixXcd::Identity(20, 20)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Beamsplitter, ZeroIsIdentity) {
    EXPECT_LT((beamsplitter(0.0, 5, 6).matrix - Eigen::MatrixXcd::Identity(30, 30)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Beamsplitter, HalfOscillationSwaps) {
    const FockOperator bs = beamsplitter(std::numbers::pi / 2, 4, 4);
    const StateVector out = apply(bs, StateVector::fock(4, 4, 1, 0));
    EXPECT_NEAR(std::abs(out(0, 1)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(out(1, 0)), 0.0, 1e-12);
}

TEST(Beamsplitter, SingleExcitationBlockIsRotation) {
    // R|1,0⟩ = cos θ|1,0⟩ + sin θ|0,1⟩, so R†aR = U(θ)a.
    for (double theta : {-2.4, -0.16598, 0.0, 0.3, 1.1, std::numbers::pi / 3}) {
        const FockOperator bs = beamsplitter(theta, 3, 3);
        const StateVector out = apply(bs, StateVector::fock(3, 3, 1, 0));
        EXPECT_NEAR(out(1, 0).real(), std::cos(theta), 1e-14);
        EXPECT_NEAR(out(0, 1).real(), std::sin(theta), 1e-14);
        const double stay = std::norm(out(1, 0));
        EXPECT_NEAR(stay, 0.5 * (1.0 + std::cos(2.0 * theta)), 1e-14);
    }
}

TEST(Beamsplitter, ConservesTotalNumberExactly) {
    const FockOperator bs = beamsplitter(0.7, 6, 6);
    const Eigen::MatrixXcd g = bs.matrix.adjoint() * bs.matrix;
    // columns with n_A + n_B ≤ 5 stay inside the box
    for (int a = 0; a < 6; ++a)
        for (int b = 0; a + b <= 5; ++b) {
            const Eigen::Index c = a * 6 + b;
            EXPECT_NEAR(g(c, c).real(), 1.0, 1e-13);
        }
}

TEST(ExpmContract, InverseProductIsIdentityAtCutoff64) {
    const auto id = Eigen::MatrixXcd::Identity(64, 64);
    for (double alpha : {-2.8977, -1.4278, 1.7713, 0.0546}) {
        const Eigen::MatrixXcd prod = detail::displacement_raw(alpha, 64) * detail::displacement_raw(-alpha, 64);
        EXPECT_LT((prod - id).cwiseAbs().maxCoeff(), 1e-12) << alpha;
    }
    for (double zeta : {0.262, -0.217, 0.389, -0.285}) {
        const Eigen::MatrixXcd prod = detail::squeezing_raw(zeta, 64) * detail::squeezing_raw(-zeta, 64);
        EXPECT_LT((prod - id).cwiseAbs().maxCoeff(), 1e-12) << zeta;
    }
}

TEST(SubspaceUnitarity, SingleModeFactorsOverParameterTable) {
    // as generated at the working cutoff d of a cutoff-40 request
    const int d = working_cutoff(40);
    for (double alpha : {-1.0162, -2.8977, -1.4278, -0.5311, 0.0546, -2.2207, -0.1140, 1.7713})
        EXPECT_LT(subspace_unitarity_error(detail::displacement_raw(alpha, d), d / 2), 1e-8) << alpha;
    for (double zeta : {0.262, -0.160, 0.072, -0.174, 0.104, -0.181, 0.157, -0.080, 0.035, -0.217, 0.389,
                        -0.208, 0.242, -0.162, 0.206, -0.285})
        EXPECT_LT(subspace_unitarity_error(detail::squeezing_raw(zeta, d), d / 2), 1e-8) << zeta;
}

TEST(SubspaceUnitarity, CroppedDisplacementKeepsLowColumns) {
    // columns well inside the cutoff survive cropping intact
    const FockOperator d = displacement(-2.8977, 40);
    EXPECT_LT(subspace_unitarity_error(d.matrix, 4), 1e-8);
}

TEST(SubspaceUnitarity, DoktorovOnLowBox) {
    for (const auto& name : preset_names()) {
        const DoktorovParams p = doktorov_params(preset(name));
        const int cutoff = 40;
        const DoktorovCircuit circuit(p, cutoff);
        // inputs |n,m⟩ with n, m < 3 keep their image inside the cutoff box
        Eigen::MatrixXcd cols(cutoff * cutoff, 9);
        for (int n = 0; n < 3; ++n)
            for (int m = 0; m < 3; ++m) cols.col(n * 3 + m) = circuit.column(n, m).transpose().reshaped();
        const Eigen::MatrixXcd g = cols.adjoint() * cols;
        EXPECT_LT((g - Eigen::MatrixXcd::Identity(9, 9)).cwiseAbs().maxCoeff(), 1e-8) << name;
    }
}

TEST(Doktorov, ZeroParametersGiveIdentity) {
    const FockOperator u = doktorov_unitary(DoktorovParams::identity(2), 6);
    EXPECT_LT((u.matrix - Eigen::MatrixXcd::Identity(36, 36)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Doktorov, WaterVacuumOverlap) {
    const StateVector s = doktorov_state(doktorov_params(preset("h2o")), 0, 0, 40);
    EXPECT_NEAR(std::norm(s(0, 0)), 7.92e-5, 0.02 * 7.92e-5);
}

TEST(Doktorov, MatchesExplicitFactorProduct) {
    // D·S†·R·S built from Kronecker products at the working cutoff, then cropped.
    const DoktorovParams p = DoktorovParams::two_mode(0.21, -0.13, 0.4, 0.05, -0.22, -0.6, 0.45);
    const int cutoff = 6;
    const int w = working_cutoff(cutoff);
    const Eigen::MatrixXcd s = kron(detail::squeezing_raw(p.zeta[0], w), detail::squeezing_raw(p.zeta[1], w));
    const Eigen::MatrixXcd sp = kron(detail::squeezing_raw(p.zeta_prime[0], w).adjoint(),
                                     detail::squeezing_raw(p.zeta_prime[1], w).adjoint());
    const Eigen::MatrixXcd d = kron(detail::displacement_raw(p.alpha[0], w), detail::displacement_raw(p.alpha[1], w));
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(w * w, w * w);
    const detail::BeamsplitterBlocks blocks(p.theta(), w, w);
    for (int c = 0; c < w * w; ++c) {
        Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(w, w);
        psi(c / w, c % w) = 1.0;
        blocks.apply(psi);
        r.col(c) = psi.transpose().reshaped();
    }
    const Eigen::MatrixXcd full = d * sp * r * s;
    const FockOperator u = doktorov_unitary(p, cutoff);
    for (int i = 0; i < cutoff * cutoff; ++i)
        for (int j = 0; j < cutoff * cutoff; ++j) {
            const int fi = (i / cutoff) * w + i % cutoff;
            const int fj = (j / cutoff) * w + j % cutoff;
            ASSERT_LT(std::abs(u.matrix(i, j) - full(fi, fj)), 1e-12) << i << "," << j;
        }
}

TEST(Doktorov, RejectsWrongModeCount) {
    EXPECT_THROW(DoktorovCircuit(DoktorovParams::identity(3), 8), std::invalid_argument);
    const DoktorovCircuit c(DoktorovParams::identity(2), 8);
    EXPECT_THROW(c.column(8, 0), std::invalid_argument);
}

TEST(Apply, IdentityOnFockState) {
    const FockOperator id{Eigen::MatrixXcd::Identity(6, 6), {6}};
    const StateVector out = apply(id, StateVector::fock(6, 3));
    EXPECT_EQ(out.amplitudes[3], cplx(1.0));
    EXPECT_EQ(out.leakage, 0.0);
}

TEST(Apply, OzoneNormAtCutoff40) {
    const FockOperator u = doktorov_unitary(doktorov_params(preset("o3")), 40);
    const StateVector out = apply(u, StateVector::fock(40, 40, 0, 0));
    EXPECT_GE(out.norm_squared(), 0.999);
    EXPECT_NEAR(out.leakage + out.norm_squared(), 1.0, 1e-15);
}

TEST(Apply, DimensionMismatchThrows) {
    EXPECT_THROW(apply(annihilation(4), StateVector::fock(5, 1)), std::invalid_argument);
}

TEST(TruncationLeakage, FockAndCoherentStates) {
    EXPECT_EQ(truncation_leakage(StateVector::fock(20, 20, 0, 0), 15), 0.0);
    StateVector coherent{displacement(1.0, 40).matrix.col(0), {40}, 0.0};
    EXPECT_LT(truncation_leakage(coherent, 15), 1e-12);
    EXPECT_THROW(truncation_leakage(coherent, 40), std::invalid_argument);
}

TEST(TruncationLeakage, WaterTransformedVacuum) {
    // mass outside [0,15]^2 is 1 - 0.98920 for the exact distribution
    const DoktorovParams p = doktorov_params(preset("h2o"));
    const StateVector s = doktorov_state(p, 0, 0, 40);
    const double leak = truncation_leakage(s, 15);
    EXPECT_NEAR(leak, 1.0 - fcf_distribution_exact(p, 0, 0, 15).total(), 1e-9);
    EXPECT_NEAR(leak, 0.0108, 1e-4);
}

}  // namespace
}  // namespace fcsim
