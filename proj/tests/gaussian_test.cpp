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
#include <random>

#include <gtest/gtest.h>

#include "fcsim/fockspace.hpp"
#include "fcsim/gaussian.hpp"
#include "oracles.hpp"

namespace fcsim {
namespace {

using testing::displaced_fock_probability;

TEST(Bogoliubov, FactorMapsCompose) {
    const DoktorovParams p = DoktorovParams::two_mode(0.3, -0.2, 0.0, 0.0, 0.0, 0.7, -0.4);
    const BogoliubovMap m = doktorov_bogoliubov(p);
    // D(α)S(ζ): D†S†aSD = S†(a + α)S → A = cosh ζ, B = −sinh ζ, c = α
    EXPECT_NEAR(m.a(0, 0).real(), std::cosh(0.3), 1e-15);
    EXPECT_NEAR(m.b(1, 1).real(), -std::sinh(-0.2), 1e-15);
    EXPECT_NEAR(m.c(0).real(), 0.7, 1e-15);
    EXPECT_NEAR(m.c(1).real(), -0.4, 1e-15);
    // symplectic condition A A† − B B† = I
    const Eigen::MatrixXcd s = m.a * m.a.adjoint() - m.b * m.b.adjoint();
    EXPECT_LT((s - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(GaussianTransition, DisplacedFockMatchesClosedForm) {
    DoktorovParams p = DoktorovParams::identity(1);
    p.alpha[0] = -1.3;
    const GaussianTransition g(p);
    for (int n = 0; n < 6; ++n) {
        const Eigen::VectorXcd col = g.column({n}, 25);
        for (int m = 0; m < 25; ++m)
            EXPECT_NEAR(std::norm(col[m]), displaced_fock_probability(1.3, m, n), 1e-12) << m << "," << n;
    }
}

TEST(GaussianTransition, ThreeModeRotationSingleExcitation) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal;
    Eigen::Matrix3d raw;
    for (int i = 0; i < 9; ++i) raw(i) = normal(rng);
    Eigen::Matrix3d u = Eigen::HouseholderQR<Eigen::Matrix3d>(raw).householderQ();
    if (u.determinant() < 0) u.col(0) *= -1.0;
    DoktorovParams p = DoktorovParams::identity(3);
    p.rotation = givens_compose(givens_decompose(u), 3);
    const GaussianTransition g(p);
    for (int j = 0; j < 3; ++j) {
        std::vector<int> in(3, 0);
        in[static_cast<std::size_t>(j)] = 1;
        const Eigen::VectorXcd col = g.column(in, 2);
        for (int i = 0; i < 3; ++i) {
            const int idx = i == 0 ? 4 : i == 1 ? 2 : 1;  // one photon in mode i
            EXPECT_NEAR(std::norm(col[idx]), u(i, j) * u(i, j), 1e-13);
        }
    }
}

TEST(GaussianTransition, AgreesWithTruncatedPipeline) {
    for (const auto& name : preset_names()) {
        const DoktorovParams p = doktorov_params(preset(name));
        const GaussianTransition g(p);
        for (auto [n, m] : {std::pair{0, 0}, std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 2}}) {
            const Eigen::VectorXcd exact = g.column({n, m}, 32);
            const StateVector trunc = doktorov_state(p, n, m, 32);
            EXPECT_LT((exact.cwiseAbs2() - trunc.amplitudes.cwiseAbs2()).cwiseAbs().maxCoeff(), 1e-12)
                << name << " (" << n << "," << m << ")";
        }
    }
}

TEST(GaussianTransition, EtaInvariance) {
    for (const auto& name : preset_names()) {
        const DoktorovParams p = doktorov_params(preset(name));
        const GaussianTransition opt(p), unit(p.rescaled(1.0));
        for (int n = 0; n < 4; ++n)
            for (int m = 0; m < 4; ++m) {
                const Eigen::VectorXd a = opt.column({n, m}, 12).cwiseAbs2();
                const Eigen::VectorXd b = unit.column({n, m}, 12).cwiseAbs2();
                EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-9) << name;
            }
    }
}

TEST(GaussianTransition, ColumnsNormalize) {
    for (const auto& name : preset_names()) {
        const GaussianTransition g(doktorov_params(preset(name)));
        EXPECT_NEAR(g.column({1, 1}, 48).squaredNorm(), 1.0, 1e-9) << name;
    }
}

TEST(GaussianTransition, InputValidation) {
    const GaussianTransition g(DoktorovParams::identity(2));
    EXPECT_THROW(g.column({0}, 4), std::invalid_argument);
    EXPECT_THROW(g.column({0, -1}, 4), std::invalid_argument);
    EXPECT_THROW(g.column({0, 0}, 0), std::invalid_argument);
}

}  // namespace
}  // namespace fcsim
