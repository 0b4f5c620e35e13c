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

#pragma once

// Franck-Condon distributions over the [0, n_max]² box, the half-ℓ₁ distance
// between them, Lorentzian-broadened stick spectra, and closed-form
// photon-number laws of the elementary Gaussian operations.

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fcsim/error.hpp"
#include "fcsim/fockspace.hpp"
#include "fcsim/gaussian.hpp"
#include "fcsim/io.hpp"
#include "fcsim/molparams.hpp"

namespace fcsim {

inline constexpr int kDefaultCutoff = 40;
inline constexpr std::string_view kFcfSchema = "fcsim.fcf/1";
inline constexpr std::string_view kSpectrumSchema = "fcsim.spectrum/1";

struct JointDistribution {
    int n_max = 0;
    Eigen::MatrixXd probs;  // probs(n′, m′)
    // Mass outside the box. For truncated computations this is the mass that
    // stayed inside the Fock cutoff, so probs.sum() + leakage checks the
    // truncation rather than being 1 by construction.
    double leakage = 0.0;

    JointDistribution() = default;
    explicit JointDistribution(int n_max_)
        : n_max(n_max_), probs(Eigen::MatrixXd::Zero(n_max_ + 1, n_max_ + 1)) {
        if (n_max_ < 0) throw std::invalid_argument("JointDistribution: negative n_max");
    }

    int size() const { return n_max + 1; }
    double operator()(int n, int m) const { return probs(n, m); }
    double& operator()(int n, int m) { return probs(n, m); }
    double total() const { return probs.sum(); }

    static JointDistribution point_mass(int n_max, int n, int m) {
        JointDistribution d(n_max);
        d(n, m) = 1.0;
        return d;
    }
};

namespace detail {

inline void require_initial(int n, int m, int n_max, int cutoff) {
    if (n_max < 0) throw std::invalid_argument("fcf: n_max must be nonnegative");
    if (n_max >= cutoff)
        throw std::invalid_argument("fcf: n_max " + std::to_string(n_max) +
                                    " must be below cutoff " + std::to_string(cutoff));
    if (n < 0 || m < 0 || n >= cutoff || m >= cutoff)
        throw std::invalid_argument("fcf: initial state (" + std::to_string(n) + "," +
                                    std::to_string(m) + ") outside cutoff " +
                                    std::to_string(cutoff));
}

}  // namespace detail

/// |⟨n′,m′|U_Dok|n,m⟩|² through the truncated operator pipeline.
inline JointDistribution fcf_distribution(const DoktorovParams& p, int n, int m, int n_max,
                                          int cutoff = kDefaultCutoff) {
    detail::require_initial(n, m, n_max, cutoff);
    const DoktorovCircuit circuit(p, cutoff);
    const Eigen::MatrixXd full = circuit.column(n, m).cwiseAbs2();
    JointDistribution d(n_max);
    d.probs = full.topLeftCorner(n_max + 1, n_max + 1);
    d.leakage = full.sum() - d.probs.sum();
    return d;
}

/// Same quantity from the cutoff-free recurrence; leakage is exact.
inline JointDistribution fcf_distribution_exact(const DoktorovParams& p, int n, int m,
                                                int n_max) {
    if (p.modes() != 2) throw std::invalid_argument("fcf: two-mode parameters required");
    if (n_max < 0) throw std::invalid_argument("fcf: n_max must be nonnegative");
    if (n < 0 || m < 0) throw std::invalid_argument("fcf: negative initial occupation");
    const Eigen::VectorXcd col = GaussianTransition(p).column({n, m}, n_max + 1);
    JointDistribution d(n_max);
    for (int a = 0; a <= n_max; ++a)
        for (int b = 0; b <= n_max; ++b) d(a, b) = std::norm(col[a * (n_max + 1) + b]);
    d.leakage = std::max(0.0, 1.0 - d.total());
    return d;
}

/// Half the ℓ₁ distance over the box.
inline double distance(const JointDistribution& p, const JointDistribution& q) {
    if (p.n_max != q.n_max)
        throw std::invalid_argument("distance: n_max differs (" + std::to_string(p.n_max) +
                                    " vs " + std::to_string(q.n_max) + ")");
    return 0.5 * (p.probs - q.probs).cwiseAbs().sum();
}

struct Stick {
    int n_prime = 0;
    int m_prime = 0;
    double term_value = 0.0;  // cm⁻¹
    double weight = 0.0;
};

struct SpectrumSeries {
    std::vector<double> grid;       // cm⁻¹
    std::vector<double> intensity;  // per cm⁻¹
    std::vector<Stick> sticks;
};

/// Unit-area Lorentzian; peak value 2/(π·fwhm).
inline double lorentzian(double x, double fwhm) {
    const double hw = 0.5 * fwhm;
    return hw / (std::numbers::pi * (x * x + hw * hw));
}

/// 0 to (n_max + 1)·ν̃′_stretch in 1 cm⁻¹ steps.
inline std::vector<double> default_spectrum_grid(int n_max, double nu_stretch_post) {
    if (n_max < 0 || !(nu_stretch_post > 0.0) || !(nu_stretch_post < 1e6))
        throw std::invalid_argument("default_spectrum_grid: need n_max >= 0 and 0 < nu < 1e6 cm^-1");
    const auto points = static_cast<std::size_t>(std::floor((n_max + 1) * nu_stretch_post)) + 1;
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) grid[i] = static_cast<double>(i);
    return grid;
}

inline SpectrumSeries spectrum(const JointDistribution& dist, double nu_stretch_post,
                               double nu_bend_post, double fwhm, std::vector<double> grid) {
    if (!(nu_stretch_post > 0.0) || !(nu_bend_post > 0.0))
        throw std::invalid_argument("spectrum: frequencies must be positive");
    if (!(fwhm > 0.0)) throw std::invalid_argument("spectrum: fwhm must be positive");
    if (grid.empty()) throw std::invalid_argument("spectrum: empty grid");
    SpectrumSeries s;
    for (int a = 0; a < dist.size(); ++a)
        for (int b = 0; b < dist.size(); ++b)
            if (dist(a, b) > 0.0)
                s.sticks.push_back({a, b, a * nu_stretch_post + b * nu_bend_post, dist(a, b)});
    s.intensity.assign(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (const auto& st : s.sticks)
            s.intensity[i] += st.weight * lorentzian(grid[i] - st.term_value, fwhm);
    s.grid = std::move(grid);
    return s;
}

inline SpectrumSeries spectrum(const JointDistribution& dist, double nu_stretch_post,
                               double nu_bend_post, double fwhm = 10.0) {
    return spectrum(dist, nu_stretch_post, nu_bend_post, fwhm,
                    default_spectrum_grid(dist.n_max, nu_stretch_post));
}

/// Poisson law of a displaced vacuum: |α|^{2l} e^{−|α|²} / l!.
inline double displaced_vacuum_pmf(double alpha, int l) {
    if (l < 0) throw std::invalid_argument("displaced_vacuum_pmf: negative photon number");
    const double mean = alpha * alpha;
    if (mean == 0.0) return l == 0 ? 1.0 : 0.0;
    return std::exp(l * std::log(mean) - mean - std::lgamma(l + 1.0));
}

/// Squeezed vacuum: (2k)!/(2^{2k} (k!)²)·tanh^{2k}(r)/cosh(r) at l = 2k, 0 at odd l.
inline double squeezed_vacuum_pmf(double r, int l) {
    if (l < 0) throw std::invalid_argument("squeezed_vacuum_pmf: negative photon number");
    if (l % 2 == 1) return 0.0;
    const int k = l / 2;
    const double t = std::tanh(std::abs(r));
    if (t == 0.0) return k == 0 ? 1.0 : 0.0;
    const double log_binom = std::lgamma(2.0 * k + 1.0) - 2.0 * std::lgamma(k + 1.0);
    return std::exp(log_binom - 2.0 * k * std::log(2.0) + 2.0 * k * std::log(t)) /
           std::cosh(r);
}

/// Probability that a single photon stays in its mode: ½(1 + cos 2θ) = cos²θ.
inline double bs_single_photon(double theta) { return 0.5 * (1.0 + std::cos(2.0 * theta)); }

inline void write_fcf_csv(std::ostream& os, const JointDistribution& d) {
    write_csv_preamble(os, kFcfSchema,
                       {{"n_max", std::to_string(d.n_max)}, {"leakage", format_double(d.leakage)}},
                       {"n_prime", "m_prime", "probability"});
    for (int a = 0; a < d.size(); ++a)
        for (int b = 0; b < d.size(); ++b)
            os << a << ',' << b << ',' << format_double(d(a, b)) << '\n';
}

inline JointDistribution read_fcf_csv(std::istream& is) {
    const CsvTable t = read_csv(is);
    if (t.schema() != kFcfSchema)
        throw ConfigError("fcf csv: schema '" + t.schema() + "', expected '" +
                          std::string(kFcfSchema) + "'");
    const auto n_max = parse_integer(t.meta_value("n_max"), "n_max");
    if (n_max < 0 || n_max > 4096) throw ConfigError("fcf csv: n_max out of range");
    JointDistribution d(static_cast<int>(n_max));
    d.leakage = parse_double(t.meta_value("leakage"), "leakage");
    const auto cn = t.column("n_prime"), cm = t.column("m_prime"), cp = t.column("probability");
    for (const auto& row : t.rows) {
        const auto a = parse_integer(row[cn], "n_prime");
        const auto b = parse_integer(row[cm], "m_prime");
        if (a < 0 || b < 0 || a > n_max || b > n_max)
            throw ConfigError("fcf csv: cell (" + row[cn] + "," + row[cm] + ") outside n_max");
        const double v = parse_double(row[cp], "probability");
        if (!(v >= 0.0)) throw ConfigError("fcf csv: negative probability at (" + row[cn] + "," +
                                           row[cm] + ")");
        d(static_cast<int>(a), static_cast<int>(b)) = v;
    }
    return d;
}

inline void write_spectrum_csv(std::ostream& os, const SpectrumSeries& s, double fwhm) {
    write_csv_preamble(os, kSpectrumSchema, {{"fwhm", format_double(fwhm)}},
                       {"wavenumber", "intensity"});
    for (std::size_t i = 0; i < s.grid.size(); ++i)
        os << format_double(s.grid[i]) << ',' << format_double(s.intensity[i]) << '\n';
}

}  // namespace fcsim
