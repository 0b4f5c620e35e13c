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

// Untruncated Franck-Condon amplitudes for a Gaussian unitary, computed from
// its Bogoliubov map U†aU = A·a + B·a† + c and a multivariate Hermite-type
// recurrence. Independent of any Fock-space cutoff, so it serves as the
// reference route for the truncated operator pipeline.
//
// Amplitudes are determined up to one global phase.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fcsim/molparams.hpp"

namespace fcsim {

struct BogoliubovMap {
    Eigen::MatrixXcd a;  // coefficient of the annihilators
    Eigen::MatrixXcd b;  // coefficient of the creators
    Eigen::VectorXcd c;  // constant shift

    std::size_t modes() const { return static_cast<std::size_t>(c.size()); }

    /// Map of the operator product U1·U2, where *this belongs to U1.
    BogoliubovMap then(const BogoliubovMap& u2) const {
        return {a * u2.a + b * u2.b.conjugate(), a * u2.b + b * u2.a.conjugate(),
                a * u2.c + b * u2.c.conjugate() + c};
    }
};

/// Map of D(α)·S†(ζ′)·R(U)·S(ζ).
inline BogoliubovMap doktorov_bogoliubov(const DoktorovParams& p) {
    const auto n = static_cast<Eigen::Index>(p.modes());
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(n, n);
    const Eigen::VectorXcd none = Eigen::VectorXcd::Zero(n);
    const BogoliubovMap disp{id, zero, p.alpha.cast<cplx>()};
    const BogoliubovMap antisqueeze{p.zeta_prime.array().cosh().matrix().cast<cplx>().asDiagonal(),
                                    p.zeta_prime.array().sinh().matrix().cast<cplx>().asDiagonal(),
                                    none};
    const BogoliubovMap rot{p.rotation.cast<cplx>(), zero, none};
    const BogoliubovMap squeeze{p.zeta.array().cosh().matrix().cast<cplx>().asDiagonal(),
                                (-p.zeta.array().sinh()).matrix().cast<cplx>().asDiagonal(), none};
    return disp.then(antisqueeze).then(rot).then(squeeze);
}

/// ⟨m|U|n⟩ for Gaussian U, with output occupations m bounded per mode.
class GaussianTransition {
  public:
    explicit GaussianTransition(const BogoliubovMap& map) : modes_(map.modes()) {
        const auto n = static_cast<Eigen::Index>(modes_);
        const Eigen::MatrixXcd& a = map.a;
        const Eigen::MatrixXcd& b = map.b;
        const Eigen::VectorXcd& c = map.c;
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);

        const Eigen::VectorXcd d = -a.transpose() * c.conjugate() + b.adjoint() * c;
        const Eigen::MatrixXcd kinv = (id + b * b.adjoint()).inverse();
        const Eigen::MatrixXcd qaa = kinv * b * a.transpose();
        const Eigen::MatrixXcd qab = kinv * a;
        const Eigen::MatrixXcd qba = a.transpose() - b.adjoint() * qaa;
        const Eigen::MatrixXcd qbb = -b.adjoint() * qab;
        q_.resize(2 * n, 2 * n);
        q_ << qaa, qab, qba, qbb;
        const Eigen::VectorXcd ya = kinv * (b * d + c);
        y_.resize(2 * n);
        y_ << ya, d - b.adjoint() * ya;

        // |⟨0|U|0⟩|² from the Gaussian overlap of the output vacuum.
        const Eigen::MatrixXcd& w = qaa;
        const Eigen::VectorXcd zs =
            (id - w.conjugate() * w).fullPivLu().solve(w.conjugate() * ya + ya.conjugate());
        const double det = (id - w.adjoint() * w).determinant().real();
        if (!(det > 0.0)) throw std::runtime_error("GaussianTransition: degenerate Bogoliubov map");
        const double vac = std::sqrt(det) * std::exp(-(ya.transpose() * zs)(0).real());
        vacuum_ = std::sqrt(vac);
    }

    explicit GaussianTransition(const DoktorovParams& p)
        : GaussianTransition(doktorov_bogoliubov(p)) {}

    std::size_t modes() const { return modes_; }

    /// Amplitudes ⟨m|U|initial⟩ for every m in [0, cutoff)^N, flattened
    /// row-major (first mode slowest).
    Eigen::VectorXcd column(const std::vector<int>& initial, int cutoff) const {
        if (initial.size() != modes_)
            throw std::invalid_argument("GaussianTransition: initial state has " +
                                        std::to_string(initial.size()) + " modes, expected " +
                                        std::to_string(modes_));
        if (cutoff < 1) throw std::invalid_argument("GaussianTransition: cutoff must be positive");
        const std::size_t dims = 2 * modes_;
        std::vector<int> extent(dims);
        for (std::size_t i = 0; i < modes_; ++i) {
            if (initial[i] < 0) throw std::invalid_argument("GaussianTransition: negative occupation");
            extent[i] = cutoff;
            extent[modes_ + i] = initial[i] + 1;
        }
        std::vector<std::size_t> stride(dims, 1);
        for (std::size_t i = dims - 1; i > 0; --i)
            stride[i - 1] = stride[i] * static_cast<std::size_t>(extent[i]);
        const std::size_t total = stride[0] * static_cast<std::size_t>(extent[0]);

        std::vector<cplx> g(total, cplx{0.0, 0.0});
        g[0] = vacuum_;
        std::vector<int> k(dims, 0);
        for (std::size_t flat = 1; flat < total; ++flat) {
            // advance the multi-index
            for (std::size_t i = dims; i-- > 0;) {
                if (++k[i] < extent[i]) break;
                k[i] = 0;
            }
            std::size_t pivot = dims;
            for (std::size_t i = dims; i-- > 0;)
                if (k[i] > 0) { pivot = i; break; }
            // √(k_p)·G_k = y_p·G_{k−e_p} + Σ_j Q_pj·√(k_j − δ_pj)·G_{k−e_p−e_j}
            const std::size_t base = flat - stride[pivot];
            cplx acc = y_[static_cast<Eigen::Index>(pivot)] * g[base];
            for (std::size_t j = 0; j < dims; ++j) {
                const int kj = k[j] - (j == pivot ? 1 : 0);
                if (kj > 0)
                    acc += q_(static_cast<Eigen::Index>(pivot), static_cast<Eigen::Index>(j)) *
                           std::sqrt(static_cast<double>(kj)) * g[base - stride[j]];
            }
            g[flat] = acc / std::sqrt(static_cast<double>(k[pivot]));
        }

        // pick out the slice whose input index equals `initial`
        std::size_t offset = 0;
        for (std::size_t i = 0; i < modes_; ++i) offset += stride[modes_ + i] * initial[i];
        std::size_t out_size = 1;
        for (std::size_t i = 0; i < modes_; ++i) out_size *= static_cast<std::size_t>(cutoff);
        Eigen::VectorXcd out(static_cast<Eigen::Index>(out_size));
        std::vector<int> m(modes_, 0);
        for (std::size_t o = 0; o < out_size; ++o) {
            std::size_t pos = offset;
            for (std::size_t i = 0; i < modes_; ++i) pos += stride[i] * m[i];
            out[static_cast<Eigen::Index>(o)] = g[pos];
            for (std::size_t i = modes_; i-- > 0;) {
                if (++m[i] < cutoff) break;
                m[i] = 0;
            }
        }
        return out;
    }

  private:
    std::size_t modes_;
    Eigen::MatrixXcd q_;
    Eigen::VectorXcd y_;
    cplx vacuum_;
};

}  // namespace fcsim
