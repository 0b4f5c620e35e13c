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

// Open-system evolution of the two-cavity Doktorov circuit: each Gaussian
// operation is a constant drive Hamiltonian applied for the time that yields
// the target parameter, with context-dependent self-Kerr and photon loss.
//
// Time is in µs and angular rates in rad/µs throughout.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "fcsim/error.hpp"
#include "fcsim/fcf.hpp"
#include "fcsim/molparams.hpp"

namespace fcsim {

inline constexpr int kDefaultNoiseCutoff = 30;

/// Angular frequency in rad/µs of a frequency given in kHz.
inline double khz_to_rad_per_us(double khz) { return 2.0 * std::numbers::pi * khz * 1e-3; }

enum class OperationContext { native, squeeze, beamsplitter };

struct KerrLoss {
    double kerr_khz = 0.0;  // K/2π
    double t1_us = std::numeric_limits<double>::infinity();
};

struct CavityNoise {
    KerrLoss native;
    KerrLoss squeeze;
    KerrLoss beamsplitter;

    const KerrLoss& in(OperationContext c) const {
        switch (c) {
            case OperationContext::squeeze: return squeeze;
            case OperationContext::beamsplitter: return beamsplitter;
            case OperationContext::native: break;
        }
        return native;
    }
};

struct NoiseParams {
    CavityNoise cavity_a{{1.8, 280.0}, {2.0, 200.0}, {30.0, 170.0}};
    CavityNoise cavity_b{{3.2, 320.0}, {1.9, 280.0}, {5.0, 170.0}};
    double cross_kerr_khz = 0.0;
    double g_sq = khz_to_rad_per_us(60.0);
    double g_bs = khz_to_rad_per_us(44.0);
    double displacement_ns_per_alpha = 72.0;
    double verification_us = 2.5;
    // Largest RK4 step; strongly driven segments step finer automatically.
    double step_us = 0.004;

    void validate() const {
        for (const CavityNoise* c : {&cavity_a, &cavity_b})
            for (const KerrLoss* k : {&c->native, &c->squeeze, &c->beamsplitter})
                if (!(k->t1_us > 0.0) || !std::isfinite(k->kerr_khz))
                    throw std::invalid_argument("NoiseParams: T1 must be positive and Kerr finite");
        if (!(g_sq > 0.0) || !(g_bs > 0.0) || !(displacement_ns_per_alpha > 0.0))
            throw std::invalid_argument("NoiseParams: interaction rates must be positive");
        if (!(verification_us >= 0.0)) throw std::invalid_argument("NoiseParams: negative delay");
        if (!(step_us > 0.0)) throw std::invalid_argument("NoiseParams: step must be positive");
        if (!std::isfinite(cross_kerr_khz)) throw std::invalid_argument("NoiseParams: cross-Kerr");
    }

    /// Kerr and loss removed; drive rates and timing kept.
    NoiseParams noiseless() const {
        NoiseParams n = *this;
        for (CavityNoise* c : {&n.cavity_a, &n.cavity_b})
            for (KerrLoss* k : {&c->native, &c->squeeze, &c->beamsplitter}) *k = KerrLoss{};
        n.cross_kerr_khz = 0.0;
        return n;
    }

    /// Every decay rate multiplied by s ≥ 0.
    NoiseParams loss_scaled(double s) const {
        if (!(s >= 0.0)) throw std::invalid_argument("NoiseParams: negative loss scale");
        NoiseParams n = *this;
        for (CavityNoise* c : {&n.cavity_a, &n.cavity_b})
            for (KerrLoss* k : {&c->native, &c->squeeze, &c->beamsplitter})
                k->t1_us = s == 0.0 ? std::numeric_limits<double>::infinity() : k->t1_us / s;
        return n;
    }

    /// Every Kerr coefficient multiplied by s.
    NoiseParams kerr_scaled(double s) const {
        NoiseParams n = *this;
        for (CavityNoise* c : {&n.cavity_a, &n.cavity_b})
            for (KerrLoss* k : {&c->native, &c->squeeze, &c->beamsplitter}) k->kerr_khz *= s;
        n.cross_kerr_khz *= s;
        return n;
    }
};

enum class SegmentKind { squeeze_a, squeeze_b, beamsplit, displace, idle };

inline const char* segment_name(SegmentKind k) {
    switch (k) {
        case SegmentKind::squeeze_a: return "squeeze_a";
        case SegmentKind::squeeze_b: return "squeeze_b";
        case SegmentKind::beamsplit: return "beamsplit";
        case SegmentKind::displace: return "displace";
        case SegmentKind::idle: return "idle";
    }
    return "?";
}

/// One rectangular pulse.
///   squeeze:    H = g(e^{iφ} c² + e^{−iφ} c†²)
///   beamsplit:  H = g(e^{iφ} c_A c_B† + e^{−iφ} c_A† c_B)
///   displace:   H = Σ_i ε_i* c_i + ε_i c_i†
struct Segment {
    SegmentKind kind = SegmentKind::idle;
    double strength = 0.0;  // g in rad/µs
    double phase = 0.0;
    cplx drive_a{0.0, 0.0};  // ε in rad/µs
    cplx drive_b{0.0, 0.0};
    double duration_us = 0.0;
    OperationContext context_a = OperationContext::native;
    OperationContext context_b = OperationContext::native;
};

using GateSchedule = std::vector<Segment>;

namespace detail {

inline double sign_phase(double x) { return x < 0.0 ? -0.5 * std::numbers::pi : 0.5 * std::numbers::pi; }

inline Segment squeeze_segment(int mode, double zeta, const NoiseParams& n) {
    Segment s;
    s.kind = mode == 0 ? SegmentKind::squeeze_a : SegmentKind::squeeze_b;
    s.strength = n.g_sq;
    s.phase = sign_phase(zeta);
    s.duration_us = std::abs(zeta) / (2.0 * n.g_sq);
    (mode == 0 ? s.context_a : s.context_b) = OperationContext::squeeze;
    return s;
}

}  // namespace detail

/// S(ζ₁), S(ζ₂), R(θ), S†(ζ′₁), S†(ζ′₂), then both displacements concurrently
/// (split where the shorter one ends), then the verification delay.
inline GateSchedule build_schedule(const DoktorovParams& p, const NoiseParams& n) {
    n.validate();
    if (p.modes() != 2) throw std::invalid_argument("build_schedule: two-mode parameters required");
    GateSchedule s;
    s.push_back(detail::squeeze_segment(0, p.zeta[0], n));
    s.push_back(detail::squeeze_segment(1, p.zeta[1], n));

    Segment bs;
    bs.kind = SegmentKind::beamsplit;
    bs.strength = n.g_bs;
    bs.phase = detail::sign_phase(p.theta());
    bs.duration_us = std::abs(p.theta()) / n.g_bs;
    bs.context_a = bs.context_b = OperationContext::beamsplitter;
    s.push_back(bs);

    s.push_back(detail::squeeze_segment(0, -p.zeta_prime[0], n));
    s.push_back(detail::squeeze_segment(1, -p.zeta_prime[1], n));

    // |ε| = 1/τ per unit α for |α|·τ, phase i·sign(α): exp(−iHt) = D(α).
    const double tau = n.displacement_ns_per_alpha * 1e-3;
    const double t_a = std::abs(p.alpha[0]) * tau;
    const double t_b = std::abs(p.alpha[1]) * tau;
    const cplx eps_a = p.alpha[0] == 0.0 ? cplx{} : cplx{0.0, p.alpha[0] / t_a};
    const cplx eps_b = p.alpha[1] == 0.0 ? cplx{} : cplx{0.0, p.alpha[1] / t_b};
    Segment both;
    both.kind = SegmentKind::displace;
    both.drive_a = eps_a;
    both.drive_b = eps_b;
    both.duration_us = std::min(t_a, t_b);
    s.push_back(both);
    Segment rest;
    rest.kind = SegmentKind::displace;
    (t_a > t_b ? rest.drive_a : rest.drive_b) = t_a > t_b ? eps_a : eps_b;
    rest.duration_us = std::abs(t_a - t_b);
    s.push_back(rest);

    Segment idle;
    idle.kind = SegmentKind::idle;
    idle.duration_us = n.verification_us;
    s.push_back(idle);
    return s;
}

inline double schedule_duration(const GateSchedule& s) {
    double t = 0.0;
    for (const auto& seg : s) t += seg.duration_us;
    return t;
}

/// Two-mode density matrix over [0, cutoff)², mode-A-major.
struct DensityOperator {
    Eigen::MatrixXcd rho;
    int cutoff = 0;

    static DensityOperator fock(int cutoff, int n, int m) {
        if (cutoff < 2) throw std::invalid_argument("DensityOperator: cutoff must be at least 2");
        if (n < 0 || m < 0 || n >= cutoff || m >= cutoff)
            throw std::invalid_argument("DensityOperator: Fock state outside cutoff");
        const Eigen::Index dim = Eigen::Index(cutoff) * cutoff;
        DensityOperator d{Eigen::MatrixXcd::Zero(dim, dim), cutoff};
        d.rho(Eigen::Index(n) * cutoff + m, Eigen::Index(n) * cutoff + m) = 1.0;
        return d;
    }

    double trace() const { return rho.trace().real(); }
    double hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
    double population(int n, int m) const {
        const Eigen::Index i = Eigen::Index(n) * cutoff + m;
        return rho(i, i).real();
    }

    JointDistribution populations(int n_max) const {
        if (n_max < 0 || n_max >= cutoff)
            throw std::invalid_argument("DensityOperator: n_max must be below cutoff");
        JointDistribution d(n_max);
        for (int a = 0; a <= n_max; ++a)
            for (int b = 0; b <= n_max; ++b) d(a, b) = population(a, b);
        d.leakage = std::max(0.0, trace() - d.total());
        return d;
    }
};

namespace detail {

using SparseC = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

struct TwoModeOperators {
    SparseC a, b;             // c_A ⊗ 1, 1 ⊗ c_B
    Eigen::VectorXd n_a, n_b;  // number operators, diagonal

    explicit TwoModeOperators(int d) {
        const Eigen::Index dim = Eigen::Index(d) * d;
        std::vector<Eigen::Triplet<cplx>> ta, tb;
        n_a.resize(dim);
        n_b.resize(dim);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const Eigen::Index k = Eigen::Index(i) * d + j;
                n_a[k] = i;
                n_b[k] = j;
                if (i > 0) ta.emplace_back(k - d, k, std::sqrt(double(i)));
                if (j > 0) tb.emplace_back(k - 1, k, std::sqrt(double(j)));
            }
        a.resize(dim, dim);
        b.resize(dim, dim);
        a.setFromTriplets(ta.begin(), ta.end());
        b.setFromTriplets(tb.begin(), tb.end());
    }
};

}  // namespace detail

/// Integrates dρ/dt = −i[H, ρ] + Σ_i κ_i (c_i ρ c_i† − ½{c_i†c_i, ρ}) with
/// fixed-step RK4, each segment split into ⌈T/h⌉ equal steps.
/// H = drive − K_A/2·c_A†²c_A² − K_B/2·c_B†²c_B² − K_AB·n_A n_B.
inline DensityOperator lindblad_evolve(const DensityOperator& rho0, const GateSchedule& schedule,
                                       const NoiseParams& n) {
    n.validate();
    const int d = rho0.cutoff;
    const Eigen::Index dim = Eigen::Index(d) * d;
    if (rho0.rho.rows() != dim || rho0.rho.cols() != dim)
        throw std::invalid_argument("lindblad_evolve: density matrix does not match cutoff");
    const double trace0 = rho0.trace();
    if (std::abs(trace0 - 1.0) > 1e-9 || rho0.hermiticity_error() > 1e-10)
        throw std::invalid_argument("lindblad_evolve: initial state must be Hermitian with unit trace");

    const detail::TwoModeOperators ops(d);
    const detail::SparseC a_dag = ops.a.adjoint();
    const detail::SparseC b_dag = ops.b.adjoint();
    const detail::SparseC a_sq = ops.a * ops.a;
    const detail::SparseC b_sq = ops.b * ops.b;
    const detail::SparseC a_sq_dag = a_sq.adjoint();
    const detail::SparseC b_sq_dag = b_sq.adjoint();
    const detail::SparseC ab_dag = ops.a * b_dag;
    const detail::SparseC a_dag_b = a_dag * ops.b;
    const detail::SparseC a_t = ops.a.transpose();
    const detail::SparseC b_t = ops.b.transpose();

    DensityOperator out = rho0;
    Eigen::MatrixXcd& rho = out.rho;
    Eigen::MatrixXcd k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), tmp(dim, dim),
        y(dim, dim);

    for (const Segment& seg : schedule) {
        if (seg.duration_us < 0.0) throw std::invalid_argument("lindblad_evolve: negative duration");
        if (seg.duration_us == 0.0) continue;

        const KerrLoss& ctx_a = n.cavity_a.in(seg.context_a);
        const KerrLoss& ctx_b = n.cavity_b.in(seg.context_b);
        const double kappa_a = 1.0 / ctx_a.t1_us;
        const double kappa_b = 1.0 / ctx_b.t1_us;
        const double kerr_a = khz_to_rad_per_us(ctx_a.kerr_khz);
        const double kerr_b = khz_to_rad_per_us(ctx_b.kerr_khz);
        const double kerr_ab = khz_to_rad_per_us(n.cross_kerr_khz);

        // H_eff = H − (i/2) Σ κ_i n_i; its diagonal part is kept separately.
        detail::SparseC drive(dim, dim);
        const cplx e_phase = std::polar(1.0, seg.phase);
        switch (seg.kind) {
            case SegmentKind::squeeze_a:
                drive = seg.strength * (e_phase * a_sq + std::conj(e_phase) * a_sq_dag);
                break;
            case SegmentKind::squeeze_b:
                drive = seg.strength * (e_phase * b_sq + std::conj(e_phase) * b_sq_dag);
                break;
            case SegmentKind::beamsplit:
                drive = seg.strength * (e_phase * ab_dag + std::conj(e_phase) * a_dag_b);
                break;
            case SegmentKind::displace:
                drive = std::conj(seg.drive_a) * ops.a + seg.drive_a * a_dag +
                        std::conj(seg.drive_b) * ops.b + seg.drive_b * b_dag;
                break;
            case SegmentKind::idle: break;
        }
        Eigen::VectorXcd diag(dim);
        for (Eigen::Index k = 0; k < dim; ++k) {
            const double na = ops.n_a[k], nb = ops.n_b[k];
            const double h = -0.5 * kerr_a * na * (na - 1.0) - 0.5 * kerr_b * nb * (nb - 1.0) -
                             kerr_ab * na * nb;
            diag[k] = cplx{h, -0.5 * (kappa_a * na + kappa_b * nb)};
        }
        const bool driven = drive.nonZeros() > 0;

        // L(ρ) = Y + Y† + κ_A c_A ρ c_A† + κ_B c_B ρ c_B†, Y = −i H_eff ρ
        auto lindblad = [&](const Eigen::MatrixXcd& r, Eigen::MatrixXcd& res) {
            y = diag.asDiagonal() * r;
            if (driven) y.noalias() += drive * r;
            y *= cplx{0.0, -1.0};
            res = y + y.adjoint();
            if (kappa_a > 0.0) {
                tmp.noalias() = ops.a * r;
                res.noalias() += kappa_a * (tmp * a_t);
            }
            if (kappa_b > 0.0) {
                tmp.noalias() = ops.b * r;
                res.noalias() += kappa_b * (tmp * b_t);
            }
        };

        // h·‖H_eff‖ ≤ 0.1 keeps RK4 accurate under strong drives; the largest
        // absolute row sum bounds the norm.
        double norm = diag.cwiseAbs().maxCoeff();
        if (driven) {
            double rows = 0.0;
            for (Eigen::Index r = 0; r < drive.outerSize(); ++r) {
                double sum = 0.0;
                for (detail::SparseC::InnerIterator it(drive, r); it; ++it) sum += std::abs(it.value());
                rows = std::max(rows, sum);
            }
            norm += rows;
        }
        const double h_max = norm > 0.0 ? std::min(n.step_us, 0.1 / norm) : n.step_us;
        const auto steps = static_cast<long>(std::ceil(seg.duration_us / h_max - 1e-9));
        const double h = seg.duration_us / static_cast<double>(std::max(1L, steps));
        Eigen::MatrixXcd stage(dim, dim);
        for (long s = 0; s < std::max(1L, steps); ++s) {
            lindblad(rho, k1);
            stage = rho + (0.5 * h) * k1;
            lindblad(stage, k2);
            stage = rho + (0.5 * h) * k2;
            lindblad(stage, k3);
            stage = rho + h * k3;
            lindblad(stage, k4);
            rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        // restore exact Hermiticity lost to rounding
        rho = 0.5 * (rho + rho.adjoint()).eval();
        const double drift = std::abs(out.trace() - trace0);
        if (drift > 1e-6)
            throw ComputeError("lindblad_evolve: trace drifted by " + std::to_string(drift) +
                               " during " + segment_name(seg.kind) + "; reduce the step size");
    }
    return out;
}

struct NoisyFcf {
    JointDistribution noisy;
    JointDistribution ideal;
    double distance = 0.0;
};

/// Master-equation populations of U_Dok|n,m⟩ over the box and their distance
/// to the exact distribution.
inline NoisyFcf noisy_fcf(const DoktorovParams& p, int n, int m, const NoiseParams& noise,
                          int n_max, int cutoff = kDefaultNoiseCutoff) {
    if (n_max >= cutoff)
        throw std::invalid_argument("noisy_fcf: n_max must be below cutoff");
    const DensityOperator rho =
        lindblad_evolve(DensityOperator::fock(cutoff, n, m), build_schedule(p, noise), noise);
    NoisyFcf r{rho.populations(n_max), fcf_distribution_exact(p, n, m, n_max), 0.0};
    r.distance = distance(r.noisy, r.ideal);
    return r;
}

inline NoisyFcf noisy_fcf(const MolecularTransition& t, int n, int m, const NoiseParams& noise,
                          int n_max, int cutoff = kDefaultNoiseCutoff) {
    return noisy_fcf(doktorov_params(t), n, m, noise, n_max, cutoff);
}

}  // namespace fcsim
