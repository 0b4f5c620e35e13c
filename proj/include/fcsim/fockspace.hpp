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

// Truncated Fock-basis representations of the Gaussian operations and the
// composed Doktorov unitary D(α)·S†(ζ′)·R(U)·S(ζ).
//
// Two-mode vectors are flattened mode-A-major: index = n_A·cutoff_B + n_B.
// Factors are built at a working cutoff max(2c, c + 16) and cropped to the
// requested cutoff c, because truncated generators are only accurate far from
// the truncation edge.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "fcsim/molparams.hpp"

namespace fcsim {

using cplx = std::complex<double>;

struct FockOperator {
    Eigen::MatrixXcd matrix;
    std::vector<int> cutoffs;

    int mode_arity() const { return static_cast<int>(cutoffs.size()); }
    Eigen::Index dimension() const { return matrix.rows(); }
};

struct StateVector {
    Eigen::VectorXcd amplitudes;
    std::vector<int> cutoffs;
    // Probability already lost off the truncated basis.
    double leakage = 0.0;

    Eigen::Index index(int n_a, int n_b) const { return Eigen::Index(n_a) * cutoffs[1] + n_b; }
    cplx operator()(int n_a, int n_b) const { return amplitudes[index(n_a, n_b)]; }
    double norm_squared() const { return amplitudes.squaredNorm(); }

    static StateVector fock(int cutoff, int n) {
        if (n < 0 || n >= cutoff) throw std::invalid_argument("fock: occupation outside cutoff");
        StateVector s{Eigen::VectorXcd::Zero(cutoff), {cutoff}, 0.0};
        s.amplitudes[n] = 1.0;
        return s;
    }
    static StateVector fock(int cutoff_a, int cutoff_b, int n, int m) {
        if (n < 0 || n >= cutoff_a || m < 0 || m >= cutoff_b)
            throw std::invalid_argument("fock: occupation (" + std::to_string(n) + "," +
                                        std::to_string(m) + ") outside cutoff");
        StateVector s{Eigen::VectorXcd::Zero(Eigen::Index(cutoff_a) * cutoff_b),
                      {cutoff_a, cutoff_b}, 0.0};
        s.amplitudes[s.index(n, m)] = 1.0;
        return s;
    }
};

/// Receives non-fatal diagnostics (truncation warnings). Defaults to stderr.
inline std::function<void(std::string_view)>& warning_handler() {
    static std::function<void(std::string_view)> handler = [](std::string_view msg) {
        std::cerr << "fcsim: warning: " << msg << '\n';
    };
    return handler;
}

inline int working_cutoff(int cutoff) { return std::max(2 * cutoff, cutoff + 16); }

namespace detail {

inline void require_cutoff(int cutoff, std::string_view what) {
    if (cutoff < 2)
        throw std::invalid_argument(std::string(what) + ": cutoff must be at least 2, got " +
                                    std::to_string(cutoff));
}

inline Eigen::MatrixXcd ladder(int dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

// exp(α a† − α* a) at dimension dim, uncropped.
inline Eigen::MatrixXcd displacement_raw(cplx alpha, int dim) {
    const Eigen::MatrixXcd a = ladder(dim);
    const Eigen::MatrixXcd gen = alpha * a.adjoint() - std::conj(alpha) * a;
    return gen.exp();
}

// exp(½(ζ* a² − ζ a†²)) at dimension dim, uncropped.
inline Eigen::MatrixXcd squeezing_raw(cplx zeta, int dim) {
    const Eigen::MatrixXcd a = ladder(dim);
    const Eigen::MatrixXcd a2 = a * a;
    const Eigen::MatrixXcd gen = 0.5 * (std::conj(zeta) * a2 - zeta * a2.adjoint());
    return gen.exp();
}

// exp(θ(a_A a_B† − a_A† a_B)) conserves n_A + n_B, so it is exponentiated one
// total-number block at a time over the grid [0, dim_a) × [0, dim_b).
struct BeamsplitterBlocks {
    int dim_a = 0;
    int dim_b = 0;
    // blocks[N] acts on states (n_A, N − n_A), n_A ascending from first_a[N].
    std::vector<Eigen::MatrixXd> blocks;
    std::vector<int> first_a;

    BeamsplitterBlocks(double theta, int dim_a_, int dim_b_) : dim_a(dim_a_), dim_b(dim_b_) {
        const int total_max = dim_a + dim_b - 2;
        blocks.reserve(static_cast<std::size_t>(total_max + 1));
        first_a.reserve(static_cast<std::size_t>(total_max + 1));
        for (int total = 0; total <= total_max; ++total) {
            const int lo = std::max(0, total - (dim_b - 1));
            const int hi = std::min(total, dim_a - 1);
            const int size = hi - lo + 1;
            Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(size, size);
            for (int k = 0; k < size; ++k) {
                const int na = lo + k;
                const int nb = total - na;
                // a_A a_B† : (na, nb) → (na−1, nb+1), coefficient √na·√(nb+1)
                if (k > 0) gen(k - 1, k) += theta * std::sqrt(double(na) * double(nb + 1));
                // −a_A† a_B : (na, nb) → (na+1, nb−1), coefficient √(na+1)·√nb
                if (k + 1 < size) gen(k + 1, k) -= theta * std::sqrt(double(na + 1) * double(nb));
            }
            blocks.push_back(gen.exp());
            first_a.push_back(lo);
        }
    }

    // psi(n_A, n_B) ← Σ BS amplitudes, in place.
    void apply(Eigen::MatrixXcd& psi) const {
        Eigen::VectorXcd in, out;
        for (std::size_t total = 0; total < blocks.size(); ++total) {
            const auto& blk = blocks[total];
            const int lo = first_a[total];
            const auto size = blk.rows();
            in.resize(size);
            for (Eigen::Index k = 0; k < size; ++k)
                in[k] = psi(lo + k, static_cast<Eigen::Index>(total) - lo - k);
            out.noalias() = blk.cast<cplx>() * in;
            for (Eigen::Index k = 0; k < size; ++k)
                psi(lo + k, static_cast<Eigen::Index>(total) - lo - k) = out[k];
        }
    }
};

}  // namespace detail

/// ⟨n−1|a|n⟩ = √n.
inline FockOperator annihilation(int cutoff) {
    detail::require_cutoff(cutoff, "annihilation");
    return {detail::ladder(cutoff), {cutoff}};
}

inline FockOperator displacement(cplx alpha, int cutoff) {
    detail::require_cutoff(cutoff, "displacement");
    if (std::norm(alpha) > cutoff / 4.0)
        warning_handler()("displacement |alpha|^2 = " + std::to_string(std::norm(alpha)) +
                          " exceeds cutoff/4 = " + std::to_string(cutoff / 4.0) +
                          "; expect truncation leakage");
    const int work = working_cutoff(cutoff);
    return {detail::displacement_raw(alpha, work).topLeftCorner(cutoff, cutoff), {cutoff}};
}

inline FockOperator squeezing(cplx zeta, int cutoff) {
    detail::require_cutoff(cutoff, "squeezing");
    const int work = working_cutoff(cutoff);
    return {detail::squeezing_raw(zeta, work).topLeftCorner(cutoff, cutoff), {cutoff}};
}

/// exp(θ(a_A a_B† − a_A† a_B)); R† a R = U(θ)·a with U the Duschinsky rotation.
/// Exact on the cropped box: every total-number block reachable from it is
/// built complete.
inline FockOperator beamsplitter(double theta, int cutoff_a, int cutoff_b) {
    detail::require_cutoff(cutoff_a, "beamsplitter");
    detail::require_cutoff(cutoff_b, "beamsplitter");
    const int span = cutoff_a + cutoff_b - 1;
    const detail::BeamsplitterBlocks bs(theta, span, span);
    const Eigen::Index dim = Eigen::Index(cutoff_a) * cutoff_b;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t total = 0; total < bs.blocks.size(); ++total) {
        const auto& blk = bs.blocks[total];
        const int lo = bs.first_a[total];
        for (Eigen::Index c = 0; c < blk.cols(); ++c) {
            const int na_in = lo + static_cast<int>(c);
            const int nb_in = static_cast<int>(total) - na_in;
            if (na_in >= cutoff_a || nb_in >= cutoff_b) continue;
            for (Eigen::Index r = 0; r < blk.rows(); ++r) {
                const int na_out = lo + static_cast<int>(r);
                const int nb_out = static_cast<int>(total) - na_out;
                if (na_out >= cutoff_a || nb_out >= cutoff_b) continue;
                m(Eigen::Index(na_out) * cutoff_b + nb_out, Eigen::Index(na_in) * cutoff_b + nb_in) =
                    blk(r, c);
            }
        }
    }
    return {std::move(m), {cutoff_a, cutoff_b}};
}

/// Two-mode Doktorov circuit prepared once at the working cutoff; columns of
/// the cropped unitary are produced on demand. Order: S(ζ), R(θ), S†(ζ′), D(α).
class DoktorovCircuit {
  public:
    DoktorovCircuit(const DoktorovParams& p, int cutoff)
        : cutoff_(cutoff), work_(working_cutoff(cutoff)), bs_(p.theta(), work_, work_) {
        if (p.modes() != 2)
            throw std::invalid_argument("DoktorovCircuit: two-mode parameters required, got " +
                                        std::to_string(p.modes()));
        detail::require_cutoff(cutoff, "DoktorovCircuit");
        for (int i = 0; i < 2; ++i)
            if (std::norm(p.alpha[i]) > cutoff / 4.0)
                warning_handler()("alpha_" + std::to_string(i + 1) + " = " +
                                  std::to_string(p.alpha[i]) +
                                  " is large for cutoff " + std::to_string(cutoff));
        pre_a_ = detail::squeezing_raw(p.zeta[0], work_);
        pre_b_ = detail::squeezing_raw(p.zeta[1], work_);
        // D(α)·S†(ζ′), only the rows that survive cropping.
        post_a_ = (detail::displacement_raw(p.alpha[0], work_) *
                   detail::squeezing_raw(p.zeta_prime[0], work_).adjoint())
                      .topRows(cutoff);
        post_b_ = (detail::displacement_raw(p.alpha[1], work_) *
                   detail::squeezing_raw(p.zeta_prime[1], work_).adjoint())
                      .topRows(cutoff);
    }

    int cutoff() const { return cutoff_; }
    int working() const { return work_; }

    /// Amplitudes ⟨n′,m′|U|n,m⟩ for n′,m′ < cutoff as a cutoff×cutoff matrix.
    Eigen::MatrixXcd column(int n, int m) const {
        if (n < 0 || m < 0 || n >= cutoff_ || m >= cutoff_)
            throw std::invalid_argument("DoktorovCircuit: initial state (" + std::to_string(n) +
                                        "," + std::to_string(m) + ") outside cutoff " +
                                        std::to_string(cutoff_));
        Eigen::MatrixXcd psi = pre_a_.col(n) * pre_b_.col(m).transpose();
        bs_.apply(psi);
        return post_a_ * psi * post_b_.transpose();
    }

    /// Arbitrary two-mode input given as psi(n_A, n_B) on a grid within cutoff.
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& input) const {
        if (input.rows() > cutoff_ || input.cols() > cutoff_)
            throw std::invalid_argument("DoktorovCircuit: input exceeds cutoff");
        Eigen::MatrixXcd psi = pre_a_.leftCols(input.rows()) * input *
                               pre_b_.leftCols(input.cols()).transpose();
        bs_.apply(psi);
        return post_a_ * psi * post_b_.transpose();
    }

  private:
    int cutoff_;
    int work_;
    detail::BeamsplitterBlocks bs_;
    Eigen::MatrixXcd pre_a_, pre_b_, post_a_, post_b_;
};

/// Full cropped two-mode operator; cost grows as cutoff² columns.
inline FockOperator doktorov_unitary(const DoktorovParams& p, int cutoff) {
    const DoktorovCircuit circuit(p, cutoff);
    const Eigen::Index dim = Eigen::Index(cutoff) * cutoff;
    Eigen::MatrixXcd u(dim, dim);
    for (int n = 0; n < cutoff; ++n) {
        for (int m = 0; m < cutoff; ++m) {
            const Eigen::MatrixXcd col = circuit.column(n, m);
            // row-major flattening of col(n′, m′) gives index n′·cutoff + m′
            const Eigen::Index c = Eigen::Index(n) * cutoff + m;
            for (int i = 0; i < cutoff; ++i) u.col(c).segment(Eigen::Index(i) * cutoff, cutoff) =
                col.row(i).transpose();
        }
    }
    return {std::move(u), {cutoff, cutoff}};
}

/// U_Dok|n,m⟩ cropped to the cutoff; leakage records the mass pushed past it.
inline StateVector doktorov_state(const DoktorovParams& p, int n, int m, int cutoff) {
    const DoktorovCircuit circuit(p, cutoff);
    const Eigen::MatrixXcd col = circuit.column(n, m);
    StateVector s{Eigen::VectorXcd(Eigen::Index(cutoff) * cutoff), {cutoff, cutoff}, 0.0};
    for (int i = 0; i < cutoff; ++i)
        s.amplitudes.segment(Eigen::Index(i) * cutoff, cutoff) = col.row(i).transpose();
    s.leakage = std::max(0.0, 1.0 - s.norm_squared());
    return s;
}

inline StateVector apply(const FockOperator& op, const StateVector& s) {
    if (op.cutoffs != s.cutoffs || op.matrix.cols() != s.amplitudes.size())
        throw std::invalid_argument("apply: operator and state cutoffs differ");
    StateVector out{op.matrix * s.amplitudes, s.cutoffs, 0.0};
    out.leakage = std::max(0.0, 1.0 - out.norm_squared());
    return out;
}

/// Probability outside [0, n_max] in every mode, including mass already lost.
inline double truncation_leakage(const StateVector& s, int n_max) {
    for (int c : s.cutoffs)
        if (n_max >= c)
            throw std::invalid_argument("truncation_leakage: n_max must be below every cutoff");
    double inside = 0.0;
    if (s.cutoffs.size() == 1) {
        inside = s.amplitudes.head(n_max + 1).squaredNorm();
    } else if (s.cutoffs.size() == 2) {
        for (int a = 0; a <= n_max; ++a)
            inside += s.amplitudes.segment(s.index(a, 0), n_max + 1).squaredNorm();
    } else {
        throw std::invalid_argument("truncation_leakage: only one- and two-mode states");
    }
    return std::max(0.0, s.norm_squared() - inside) + s.leakage;
}

}  // namespace fcsim
