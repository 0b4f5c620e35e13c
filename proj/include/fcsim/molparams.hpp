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

// Molecular transition data and the dimensionless Doktorov parameters derived
// from it: squeezings ζ, ζ′, the Duschinsky rotation U, displacements α and the
// common frequency scale η.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "fcsim/error.hpp"

namespace fcsim {

/// 1 cm⁻¹ expressed in Hartree (atomic units of angular frequency, ħ = 1).
inline constexpr double kHartreePerWavenumber = 4.556335e-6;

struct MolecularTransition {
    std::string label;
    Eigen::VectorXd nu_pre;   // cm⁻¹
    Eigen::VectorXd nu_post;  // cm⁻¹
    // Duschinsky matrix J of Q′ = J Q″ + K. For two modes J = U(θ)ᵀ.
    Eigen::MatrixXd duschinsky;
    Eigen::VectorXd shift_K;  // a₀√mₑ

    std::size_t modes() const { return static_cast<std::size_t>(nu_pre.size()); }

    /// Throws std::invalid_argument when an invariant is broken.
    void validate() const;

    static MolecularTransition two_mode(std::string label, double nu_pre_stretch,
                                        double nu_pre_bend, double nu_post_stretch,
                                        double nu_post_bend, double theta, double k1,
                                        double k2);
};

struct DoktorovParams {
    Eigen::VectorXd zeta;
    Eigen::VectorXd zeta_prime;
    Eigen::MatrixXd rotation;  // U
    Eigen::VectorXd alpha;
    double eta = 1.0;

    std::size_t modes() const { return static_cast<std::size_t>(zeta.size()); }
    // Two-mode rotation angle.
    double theta() const { return std::atan2(rotation(1, 0), rotation(0, 0)); }

    /// Same transformation expressed with a different common scale: ζ and ζ′
    /// both shift by ln(eta / new_eta).
    DoktorovParams rescaled(double new_eta) const;

    static DoktorovParams two_mode(double zeta1, double zeta2, double theta,
                                   double zeta_prime1, double zeta_prime2, double alpha1,
                                   double alpha2, double eta = 1.0);
    static DoktorovParams identity(std::size_t n_modes);
};

struct GivensRotation {
    int i = 0;
    int j = 1;
    double theta = 0.0;
};

using GivensSequence = std::vector<GivensRotation>;

struct CircuitSize {
    int squeezers = 0;
    int displacers = 0;
    int beamsplitters = 0;
};

struct ResourceEstimate {
    int qubits = 0;
    // N²·n_max²·ln³(1/ε) without the hidden constant; order of magnitude only.
    double gate_scale = 0.0;
};

namespace detail {

inline double orthogonality_error(const Eigen::MatrixXd& m) {
    const auto n = m.rows();
    return (m.transpose() * m - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace detail

/// U = [[cos θ, −sin θ], [sin θ, cos θ]].
inline Eigen::Matrix2d duschinsky_matrix(double theta) {
    Eigen::Matrix2d u;
    u << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return u;
}

/// d = −U·K, with U = Jᵀ the pre→post rotation.
inline Eigen::VectorXd shift_vector(const Eigen::MatrixXd& rotation, const Eigen::VectorXd& shift_K) {
    if (rotation.rows() != rotation.cols() || rotation.cols() != shift_K.size())
        throw std::invalid_argument("shift_vector: rotation is " + std::to_string(rotation.rows()) +
                                    "x" + std::to_string(rotation.cols()) + " but K has " +
                                    std::to_string(shift_K.size()) + " entries");
    return -(rotation * shift_K);
}

/// Minimiser of Σ ln²(√ν/η) over all pre and post frequencies: the geometric
/// mean of the square-rooted frequencies.
inline double optimize_eta(const Eigen::VectorXd& nu_pre, const Eigen::VectorXd& nu_post) {
    if (nu_pre.size() == 0 && nu_post.size() == 0)
        throw std::invalid_argument("optimize_eta: no frequencies");
    double acc = 0.0;
    for (const auto& v : {nu_pre, nu_post}) {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (!(v[i] > 0.0))
                throw std::invalid_argument("optimize_eta: frequency " + std::to_string(v[i]) +
                                            " is not positive");
            acc += 0.5 * std::log(v[i]);
        }
    }
    return std::exp(acc / static_cast<double>(nu_pre.size() + nu_post.size()));
}

inline void MolecularTransition::validate() const {
    const auto n = nu_pre.size();
    if (n < 1) throw std::invalid_argument(label + ": at least one mode is required");
    if (nu_post.size() != n || shift_K.size() != n || duschinsky.rows() != n ||
        duschinsky.cols() != n)
        throw std::invalid_argument(label + ": inconsistent mode counts");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(nu_pre[i] > 0.0)) throw std::invalid_argument(label + ": nu_pre must be positive");
        if (!(nu_post[i] > 0.0)) throw std::invalid_argument(label + ": nu_post must be positive");
    }
    if (!duschinsky.allFinite() || !shift_K.allFinite())
        throw std::invalid_argument(label + ": non-finite Duschinsky data");
    if (detail::orthogonality_error(duschinsky) > 1e-10)
        throw std::invalid_argument(label + ": duschinsky_matrix is not orthogonal");
}

inline MolecularTransition MolecularTransition::two_mode(std::string label, double nu_pre_stretch,
                                                         double nu_pre_bend,
                                                         double nu_post_stretch,
                                                         double nu_post_bend, double theta,
                                                         double k1, double k2) {
    MolecularTransition t;
    t.label = std::move(label);
    t.nu_pre = Eigen::Vector2d(nu_pre_stretch, nu_pre_bend);
    t.nu_post = Eigen::Vector2d(nu_post_stretch, nu_post_bend);
    t.duschinsky = duschinsky_matrix(theta).transpose();
    t.shift_K = Eigen::Vector2d(k1, k2);
    return t;
}

inline DoktorovParams DoktorovParams::rescaled(double new_eta) const {
    if (!(new_eta > 0.0)) throw std::invalid_argument("rescaled: eta must be positive");
    DoktorovParams out = *this;
    const double shift = std::log(eta / new_eta);
    out.zeta.array() += shift;
    out.zeta_prime.array() += shift;
    out.eta = new_eta;
    return out;
}

inline DoktorovParams DoktorovParams::two_mode(double zeta1, double zeta2, double theta,
                                               double zeta_prime1, double zeta_prime2,
                                               double alpha1, double alpha2, double eta) {
    DoktorovParams p;
    p.zeta = Eigen::Vector2d(zeta1, zeta2);
    p.zeta_prime = Eigen::Vector2d(zeta_prime1, zeta_prime2);
    p.rotation = duschinsky_matrix(theta);
    p.alpha = Eigen::Vector2d(alpha1, alpha2);
    p.eta = eta;
    return p;
}

inline DoktorovParams DoktorovParams::identity(std::size_t n_modes) {
    const auto n = static_cast<Eigen::Index>(n_modes);
    DoktorovParams p;
    p.zeta = Eigen::VectorXd::Zero(n);
    p.zeta_prime = Eigen::VectorXd::Zero(n);
    p.rotation = Eigen::MatrixXd::Identity(n, n);
    p.alpha = Eigen::VectorXd::Zero(n);
    return p;
}

/// ζᵢ = ln(√νᵢ/η), ζ′ᵢ = ln(√ν′ᵢ/η), U = Jᵀ, αᵢ = √(ω′ᵢ/2)·dᵢ in atomic units.
inline DoktorovParams doktorov_params(const MolecularTransition& t) {
    t.validate();
    DoktorovParams p;
    p.eta = optimize_eta(t.nu_pre, t.nu_post);
    p.zeta = (t.nu_pre.array().sqrt() / p.eta).log().matrix();
    p.zeta_prime = (t.nu_post.array().sqrt() / p.eta).log().matrix();
    p.rotation = t.duschinsky.transpose();
    const Eigen::VectorXd d = shift_vector(p.rotation, t.shift_K);
    const Eigen::ArrayXd omega_post = t.nu_post.array() * kHartreePerWavenumber;
    p.alpha = ((omega_post / 2.0).sqrt() * d.array()).matrix();
    return p;
}

/// Identity except for the (i, j) plane, which holds [[cos θ, −sin θ], [sin θ, cos θ]].
inline Eigen::MatrixXd plane_rotation(Eigen::Index n, int i, int j, double theta) {
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
    r(i, i) = std::cos(theta);
    r(i, j) = -std::sin(theta);
    r(j, i) = std::sin(theta);
    r(j, j) = std::cos(theta);
    return r;
}

/// Left-to-right product of the sequence's plane rotations.
inline Eigen::MatrixXd givens_compose(const GivensSequence& seq, Eigen::Index n) {
    Eigen::MatrixXd u = Eigen::MatrixXd::Identity(n, n);
    for (const auto& g : seq) u = u * plane_rotation(n, g.i, g.j, g.theta);
    return u;
}

/// Nearest-neighbour decomposition U = G₁G₂⋯G_K of a special orthogonal matrix.
///
/// Subdiagonal entries are eliminated column by column, bottom to top, with
/// rotations in planes (i−1, i). Each pivot is kept non-negative, so for
/// det U = +1 the eliminated matrix is exactly the identity and the rotations
/// applied in reverse reconstruct U. K = N(N−1)/2; angles lie in (−π, π].
inline GivensSequence givens_decompose(const Eigen::MatrixXd& u) {
    const auto n = u.rows();
    if (u.cols() != n) throw std::invalid_argument("givens_decompose: matrix is not square");
    if (detail::orthogonality_error(u) > 1e-10)
        throw std::invalid_argument("givens_decompose: matrix is not orthogonal");
    if (u.determinant() < 0.0)
        throw std::invalid_argument("givens_decompose: determinant is -1 (reflection)");

    Eigen::MatrixXd m = u;
    GivensSequence seq;
    seq.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (Eigen::Index col = 0; col + 1 < n; ++col) {
        for (Eigen::Index row = n - 1; row > col; --row) {
            const double x = m(row - 1, col);
            const double y = m(row, col);
            const double theta = (x == 0.0 && y == 0.0) ? 0.0 : std::atan2(y, x);
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            // m ← Gᵀ m restricted to rows (row−1, row)
            for (Eigen::Index k = 0; k < n; ++k) {
                const double a = m(row - 1, k);
                const double b = m(row, k);
                m(row - 1, k) = c * a + s * b;
                m(row, k) = -s * a + c * b;
            }
            seq.push_back({static_cast<int>(row - 1), static_cast<int>(row), theta});
        }
    }
    return seq;
}

/// (2N squeezers, N displacers, N(N−1)/2 nearest-neighbour beamsplitters).
inline CircuitSize circuit_size(int n_modes) {
    if (n_modes < 1) throw std::invalid_argument("circuit_size: need at least one mode");
    return {2 * n_modes, n_modes, n_modes * (n_modes - 1) / 2};
}

inline ResourceEstimate resource_estimate(int n_modes, int n_max, double epsilon) {
    if (n_modes < 1) throw std::invalid_argument("resource_estimate: need at least one mode");
    if (n_max < 1 || (n_max & (n_max - 1)) != 0)
        throw std::invalid_argument("resource_estimate: n_max must be a power of two");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("resource_estimate: epsilon must lie in (0, 1)");
    int bits = 0;
    while ((1 << bits) < n_max) ++bits;
    const double log_eps = std::log(1.0 / epsilon);
    return {n_modes * bits, static_cast<double>(n_modes) * n_modes * n_max * n_max * log_eps *
                                log_eps * log_eps};
}

// Four built-in transitions: pre/post harmonic wavenumbers of the symmetric
// stretch and bend (cm⁻¹), Duschinsky angle (rad), shift vector K (a₀√mₑ).
inline std::vector<std::string> preset_names() { return {"h2o", "o3", "no2", "so2"}; }

inline MolecularTransition preset(std::string_view name) {
    // H2O -> H2O+ (B 2B2) + e-:  3830.91 1649.27 | 2619.09 1602.85 | -0.16598 | (5.05, 49.47)
    if (name == "h2o")
        return MolecularTransition::two_mode("h2o", 3830.91, 1649.27, 2619.09, 1602.85, -0.16598,
                                             5.05, 49.47);
    // O3- -> O3 + e-:            1031.10 582.58 | 1147.04 713.39 | -0.0417 | (27.36, 14.33)
    if (name == "o3")
        return MolecularTransition::two_mode("o3", 1031.10, 582.58, 1147.04, 713.39, -0.0417,
                                             27.36, 14.33);
    // NO2- -> NO2 + e-:          1297.27 783.55 | 2633.34 796.94 | 2.40146 | (35.67, -38.01)
    if (name == "no2")
        return MolecularTransition::two_mode("no2", 1297.27, 783.55, 2633.34, 796.94, 2.40146,
                                             35.67, -38.01);
    // SO2 -> SO2+ + e-:          1136.38 506.27 | 1056.79 396.11 | 0.19012 | (-8.86, -58.34)
    if (name == "so2")
        return MolecularTransition::two_mode("so2", 1136.38, 506.27, 1056.79, 396.11, 0.19012,
                                             -8.86, -58.34);
    throw ConfigError("unknown molecule preset '" + std::string(name) + "'");
}

inline bool is_preset(std::string_view name) {
    for (const auto& p : preset_names())
        if (p == name) return true;
    return false;
}

}  // namespace fcsim
