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
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fcsim/fcf.hpp"
#include "oracles.hpp"

namespace fcsim {
namespace {

TEST(FcfDistribution, WaterEntry) {
    const auto d = fcf_distribution(doktorov_params(preset("h2o")), 0, 0, 15);
    EXPECT_NEAR(d(1, 8), 5.92e-2, 0.02 * 5.92e-2);
}

TEST(FcfDistribution, OzoneFromExcitedState) {
    const auto d = fcf_distribution(doktorov_params(preset("o3")), 1, 2, 9);
    EXPECT_NEAR(d(0, 1), 1.21e-1, 0.02 * 1.21e-1);
}

TEST(FcfDistribution, IdentityIsPointMass) {
    const auto d = fcf_distribution(DoktorovParams::identity(2), 3, 1, 6, 12);
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= 6; ++b) EXPECT_NEAR(d(a, b), (a == 3 && b == 1) ? 1.0 : 0.0, 1e-14);
}

TEST(FcfDistribution, InputValidation) {
    const auto p = DoktorovParams::identity(2);
    EXPECT_THROW(fcf_distribution(p, 0, 0, 20, 20), std::invalid_argument);
    EXPECT_THROW(fcf_distribution(p, 20, 0, 10, 20), std::invalid_argument);
}

TEST(FcfDistribution, NormalizationWithLeakage) {
    for (const auto& name : preset_names()) {
        const auto p = doktorov_params(preset(name));
        for (int n_max : {8, 12, 16}) {
            const int cutoff = static_cast<int>(std::ceil(2.5 * n_max));
            const auto d = fcf_distribution(p, 0, 0, n_max, std::max(cutoff, 32));
            EXPECT_NEAR(d.total() + d.leakage, 1.0, 1e-9) << name << " n_max=" << n_max;
            EXPECT_GE(d.probs.minCoeff(), 0.0);
        }
    }
}

TEST(FcfDistribution, ExactRouteLeakageIsComplement) {
    const auto d = fcf_distribution_exact(doktorov_params(preset("so2")), 0, 1, 10);
    EXPECT_NEAR(d.total() + d.leakage, 1.0, 1e-15);
}

TEST(FcfDistribution, PureDisplacementFactorizes) {
    const double a1 = 0.8, a2 = -1.4;
    const auto p = DoktorovParams::two_mode(0.0, 0.0, 0.0, 0.0, 0.0, a1, a2);
    for (auto [n, m] : {std::pair{0, 0}, std::pair{2, 1}, std::pair{3, 4}}) {
        const auto d = fcf_distribution(p, n, m, 10, 24);
        for (int a = 0; a <= 10; ++a)
            for (int b = 0; b <= 10; ++b)
                EXPECT_NEAR(d(a, b),
                            testing::displaced_fock_probability(a1, a, n) *
                                testing::displaced_fock_probability(a2, b, m),
                            1e-12);
    }
}

TEST(FcfDistribution, ReferenceTables) {
    const auto tables = testing::load_reference_tables(FCSIM_TEST_DATA "/fcf_reference.csv");
    ASSERT_EQ(tables.size(), 8u);
    for (const auto& [key, rows] : tables) {
        const auto& [mol, n, m] = key;
        int n_max = 0;
        for (const auto& r : rows) n_max = std::max({n_max, r.n_prime, r.m_prime});
        const auto d = fcf_distribution(doktorov_params(preset(mol)), n, m, n_max, 40);
        for (const auto& r : rows) {
            const double got = d(r.n_prime, r.m_prime);
            EXPECT_LT(std::abs(got - r.probability), 5e-4)
                << mol << " (" << n << "," << m << ") -> (" << r.n_prime << "," << r.m_prime << ")";
            if (r.probability >= 1e-4) {
                EXPECT_LT(std::abs(got - r.probability) / r.probability, 0.02)
                    << mol << " (" << n << "," << m << ") -> (" << r.n_prime << "," << r.m_prime << ")";
            }
        }
    }
}

TEST(Distance, Basics) {
    const auto p = JointDistribution::point_mass(3, 0, 0);
    const auto q = JointDistribution::point_mass(3, 1, 1);
    EXPECT_EQ(distance(p, p), 0.0);
    EXPECT_DOUBLE_EQ(distance(p, q), 1.0);
    EXPECT_THROW(distance(p, JointDistribution::point_mass(4, 0, 0)), std::invalid_argument);
}

TEST(Distance, MetricProperties) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u;
    auto random_dist = [&] {
        JointDistribution d(5);
        for (Eigen::Index i = 0; i < d.probs.size(); ++i) d.probs(i) = u(rng);
        d.probs /= d.probs.sum();
        return d;
    };
    for (int trial = 0; trial < 500; ++trial) {
        const auto a = random_dist(), b = random_dist(), c = random_dist();
        EXPECT_DOUBLE_EQ(distance(a, b), distance(b, a));
        EXPECT_LE(distance(a, c), distance(a, b) + distance(b, c) + 1e-15);
        EXPECT_GE(distance(a, b), 0.0);
        EXPECT_LE(distance(a, b), 1.0);
    }
}

TEST(Spectrum, SingleStickPeak) {
    const auto s = spectrum(JointDistribution::point_mass(2, 0, 0), 1000.0, 500.0, 10.0);
    ASSERT_FALSE(s.grid.empty());
    EXPECT_EQ(s.grid.front(), 0.0);
    EXPECT_NEAR(s.intensity.front(), 2.0 / (std::numbers::pi * 10.0), 1e-15);
    ASSERT_EQ(s.sticks.size(), 1u);
}

TEST(Spectrum, WaterBendStickPosition) {
    const auto t = preset("h2o");
    const auto d = fcf_distribution(doktorov_params(t), 0, 0, 4);
    const auto s = spectrum(d, t.nu_post[0], t.nu_post[1]);
    bool found = false;
    for (const auto& st : s.sticks)
        if (st.n_prime == 0 && st.m_prime == 1) {
            EXPECT_DOUBLE_EQ(st.term_value, 1602.85);
            found = true;
        }
    EXPECT_TRUE(found);
}

TEST(Spectrum, CoincidentSticksAddLinearly) {
    JointDistribution d(1);
    d(1, 0) = 0.3;
    d(0, 1) = 0.3;
    const auto s = spectrum(d, 100.0, 100.0, 8.0, {100.0});
    EXPECT_NEAR(s.intensity[0], 2 * 0.3 * 2.0 / (std::numbers::pi * 8.0), 1e-15);
}

TEST(Spectrum, DefaultGridAndErrors) {
    const auto d = JointDistribution::point_mass(3, 0, 0);
    const auto s = spectrum(d, 1000.0, 500.0);
    EXPECT_EQ(s.grid.size(), 4001u);
    EXPECT_EQ(s.grid.back(), 4000.0);
    for (double v : s.intensity) EXPECT_GE(v, 0.0);
    EXPECT_THROW(spectrum(d, 1000.0, 500.0, 10.0, {}), std::invalid_argument);
    EXPECT_THROW(spectrum(d, 1000.0, 500.0, 0.0), std::invalid_argument);
    EXPECT_THROW(spectrum(d, -1.0, 500.0), std::invalid_argument);
}

TEST(AnalyticLaws, ClosedForms) {
    EXPECT_NEAR(displaced_vacuum_pmf(1.0, 0), std::exp(-1.0), 1e-16);
    EXPECT_NEAR(displaced_vacuum_pmf(2.0, 3), std::pow(4.0, 3) / 6.0 * std::exp(-4.0), 1e-15);
    EXPECT_EQ(displaced_vacuum_pmf(0.0, 0), 1.0);
    EXPECT_EQ(squeezed_vacuum_pmf(0.3, 1), 0.0);
    EXPECT_EQ(squeezed_vacuum_pmf(0.3, 7), 0.0);
    EXPECT_NEAR(squeezed_vacuum_pmf(0.3, 2), 0.5 * std::pow(std::tanh(0.3), 2) / std::cosh(0.3), 1e-16);
    EXPECT_NEAR(squeezed_vacuum_pmf(0.3, 2), 0.0405912, 1e-7);
    EXPECT_NEAR(bs_single_photon(0.4), std::cos(0.4) * std::cos(0.4), 1e-15);
    EXPECT_THROW(displaced_vacuum_pmf(1.0, -1), std::invalid_argument);
    EXPECT_THROW(squeezed_vacuum_pmf(0.2, -2), std::invalid_argument);
}

TEST(AnalyticLaws, SumToOne) {
    double dv = 0.0, sv = 0.0;
    for (int l = 0; l < 200; ++l) {
        dv += displaced_vacuum_pmf(1.7, l);
        sv += squeezed_vacuum_pmf(0.5, l);
    }
    EXPECT_NEAR(dv, 1.0, 1e-12);
    EXPECT_NEAR(sv, 1.0, 1e-12);
}

TEST(FcfCsv, RoundTrip) {
    const auto d = fcf_distribution(doktorov_params(preset("no2")), 1, 0, 6);
    std::stringstream ss;
    write_fcf_csv(ss, d);
    EXPECT_EQ(ss.str().rfind("# schema: fcsim.fcf/1\n", 0), 0u);
    const auto back = read_fcf_csv(ss);
    EXPECT_EQ(back.n_max, 6);
    EXPECT_EQ(back.leakage, d.leakage);
    EXPECT_EQ((back.probs - d.probs).cwiseAbs().maxCoeff(), 0.0);
}

TEST(FcfCsv, RejectsWrongSchemaAndBadCells) {
    std::stringstream wrong("# schema: other/1\n# n_max: 1\n# leakage: 0\nn_prime,m_prime,probability\n");
    EXPECT_THROW(read_fcf_csv(wrong), ConfigError);
    std::stringstream outside("# schema: fcsim.fcf/1\n# n_max: 1\n# leakage: 0\nn_prime,m_prime,probability\n2,0,0.5\n");
    EXPECT_THROW(read_fcf_csv(outside), ConfigError);
    std::stringstream garbage("# schema: fcsim.fcf/1\n# n_max: 1\n# leakage: 0\nn_prime,m_prime,probability\n0,0,abc\n");
    EXPECT_THROW(read_fcf_csv(garbage), ConfigError);
}

}  // namespace
}  // namespace fcsim
