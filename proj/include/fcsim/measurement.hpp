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

// Detection protocols over the [0, n_max]² photon-number box: multinomial
// sampling, single-bit extraction with correlated readout errors and its
// closed-form correction, and sequential binary-decomposition sampling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fcsim/error.hpp"
#include "fcsim/fcf.hpp"
#include "fcsim/fockspace.hpp"
#include "fcsim/io.hpp"
#include "fcsim/rng.hpp"

namespace fcsim {

inline constexpr std::string_view kCountsSchema = "fcsim.counts/1";
inline constexpr int kBinaryBits = 4;
inline constexpr int kBinaryNMax = (1 << kBinaryBits) - 1;

/// Per-ancilla click probabilities given the probed number is (t) or is not (f)
/// present.
struct DetectorModel {
    double t_a = 1.0;
    double t_b = 1.0;
    double f_a = 0.0;
    double f_b = 0.0;

    void validate() const {
        auto check = [](double t, double f, const char* which) {
            if (!(f >= 0.0 && f < t && t <= 1.0))
                throw std::invalid_argument(std::string("DetectorModel: need 0 <= f < t <= 1 for ancilla ") +
                                            which + ", got t=" + std::to_string(t) +
                                            " f=" + std::to_string(f));
        };
        check(t_a, f_a, "A");
        check(t_b, f_b, "B");
    }

    static DetectorModel perfect() { return {}; }
};

enum class CountScheme { ideal, single_bit, binary };

inline const char* scheme_name(CountScheme s) {
    switch (s) {
        case CountScheme::ideal: return "ideal";
        case CountScheme::single_bit: return "single-bit";
        case CountScheme::binary: return "binary";
    }
    return "?";
}

struct CountMatrix {
    int n_max = 0;
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
    // Runs per cell for single-bit extraction, total shots otherwise.
    std::int64_t runs = 0;
    CountScheme scheme = CountScheme::ideal;

    CountMatrix(int n_max_, std::int64_t runs_, CountScheme scheme_)
        : n_max(n_max_),
          counts(decltype(counts)::Zero(n_max_ + 1, n_max_ + 1)),
          runs(runs_),
          scheme(scheme_) {}

    std::int64_t operator()(int n, int m) const { return counts(n, m); }
};

struct Estimate {
    Eigen::MatrixXd probs;
    Eigen::MatrixXd sigma;
};

namespace detail {

inline void require_square(const Eigen::MatrixXd& q, const char* what) {
    if (q.rows() != q.cols() || q.rows() == 0)
        throw std::invalid_argument(std::string(what) + ": square nonempty matrix required");
}

}  // namespace detail

/// Multinomial draw from the box, renormalized to its total. One uniform per
/// shot, inverted against the row-major cumulative distribution.
inline CountMatrix sample_ideal(const JointDistribution& dist, std::int64_t shots,
                                std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_ideal: shots must be positive");
    const double total = dist.total();
    if (!(total > 0.0)) throw std::invalid_argument("sample_ideal: empty distribution");
    const int size = dist.size();
    std::vector<double> cdf(static_cast<std::size_t>(size) * size);
    double acc = 0.0;
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) cdf[static_cast<std::size_t>(a) * size + b] = acc += dist(a, b);
    Rng rng(seed);
    CountMatrix out(dist.n_max, shots, CountScheme::ideal);
    for (std::int64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        // skip zero-width cells that upper_bound can land on only at the top edge
        while (it != cdf.begin() && *it == *(it - 1)) --it;
        const auto idx = static_cast<int>(it - cdf.begin());
        ++out.counts(idx / size, idx % size);
    }
    return out;
}

/// q = count/runs, σ = √(q(1−q)/runs); empty cells report q = σ = 0.
inline Estimate estimate(const CountMatrix& c) {
    if (c.runs <= 0) throw std::invalid_argument("estimate: zero runs");
    const double runs = static_cast<double>(c.runs);
    Estimate e{c.counts.cast<double>() / runs, Eigen::MatrixXd::Zero(c.n_max + 1, c.n_max + 1)};
    for (Eigen::Index i = 0; i < e.probs.size(); ++i) {
        const double q = e.probs(i);
        e.sigma(i) = std::sqrt(std::max(0.0, q * (1.0 - q)) / runs);
    }
    return e;
}

/// Joint click probabilities of the two ancillas when probing every cell:
/// Q = t_A t_B P + t_A f_B (R − P) + f_A t_B (C − P) + f_A f_B (1 − R − C + P),
/// with R, C the box row and column marginals.
inline Eigen::MatrixXd detector_forward(const Eigen::MatrixXd& p, const DetectorModel& m) {
    m.validate();
    detail::require_square(p, "detector_forward");
    const Eigen::VectorXd rows = p.rowwise().sum();
    const Eigen::RowVectorXd cols = p.colwise().sum();
    Eigen::MatrixXd q(p.rows(), p.cols());
    for (Eigen::Index n = 0; n < p.rows(); ++n)
        for (Eigen::Index k = 0; k < p.cols(); ++k) {
            const double pnm = p(n, k);
            q(n, k) = m.t_a * m.t_b * pnm + m.t_a * m.f_b * (rows[n] - pnm) +
                      m.f_a * m.t_b * (cols[k] - pnm) +
                      m.f_a * m.f_b * (1.0 - rows[n] - cols[k] + pnm);
        }
    return q;
}

inline Eigen::MatrixXd detector_forward(const JointDistribution& p, const DetectorModel& m) {
    return detector_forward(p.probs, m);
}

/// Exact inverse of detector_forward, then negative cells set to zero.
///
/// With a = t_A − f_A, b = t_B − f_B and M cells per side,
/// Q = ab·P + a f_B·R + b f_A·C + f_A f_B. Summing over the box gives the box
/// total S, summing rows and columns gives R and C, then P follows.
inline Eigen::MatrixXd correct_readout(const Eigen::MatrixXd& q, const DetectorModel& m) {
    m.validate();
    detail::require_square(q, "correct_readout");
    const double a = m.t_a - m.f_a;
    const double b = m.t_b - m.f_b;
    const double size = static_cast<double>(q.rows());
    const double ff = m.f_a * m.f_b;
    const double total =
        (q.sum() - size * size * ff) / (a * (b + size * m.f_b) + size * m.f_a * b);
    const Eigen::VectorXd rows =
        ((q.rowwise().sum().array() - m.f_a * (b * total + size * m.f_b)) /
         (a * (b + size * m.f_b)))
            .matrix();
    const Eigen::RowVectorXd cols =
        ((q.colwise().sum().array() - m.f_b * (a * total + size * m.f_a)) /
         (b * (a + size * m.f_a)))
            .matrix();
    Eigen::MatrixXd p(q.rows(), q.cols());
    for (Eigen::Index n = 0; n < q.rows(); ++n)
        for (Eigen::Index k = 0; k < q.cols(); ++k)
            p(n, k) = std::max(
                0.0, (q(n, k) - a * m.f_b * rows[n] - b * m.f_a * cols[k] - ff) / (a * b));
    return p;
}

/// One Bernoulli run per probe, cells in row-major order, one uniform per run.
inline CountMatrix simulate_single_bit(const JointDistribution& dist, const DetectorModel& m,
                                       std::int64_t runs_per_cell, std::uint64_t seed) {
    if (runs_per_cell < 1)
        throw std::invalid_argument("simulate_single_bit: runs_per_cell must be positive");
    const Eigen::MatrixXd q = detector_forward(dist, m);
    Rng rng(seed);
    CountMatrix out(dist.n_max, runs_per_cell, CountScheme::single_bit);
    for (int a = 0; a < dist.size(); ++a)
        for (int b = 0; b < dist.size(); ++b) {
            const double p = std::clamp(q(a, b), 0.0, 1.0);
            std::int64_t hits = 0;
            for (std::int64_t r = 0; r < runs_per_cell; ++r) hits += rng.bernoulli(p) ? 1 : 0;
            out.counts(a, b) = hits;
        }
    return out;
}

/// Diagonal ±1 operator 1 − 2(⌊i/2^k⌋ mod 2); +1 where bit k of i is clear.
struct BitProjector {
    int k = 0;
    int cutoff = 0;
    Eigen::VectorXd diagonal;

    Eigen::MatrixXd matrix() const { return diagonal.asDiagonal(); }
};

inline BitProjector bit_projector(int k, int cutoff) {
    if (k < 0 || k >= kBinaryBits)
        throw std::invalid_argument("bit_projector: k must be in [0, 3], got " + std::to_string(k));
    if (cutoff < 1 << kBinaryBits)
        throw std::invalid_argument("bit_projector: cutoff must be at least 16");
    BitProjector p{k, cutoff, Eigen::VectorXd(cutoff)};
    for (int i = 0; i < cutoff; ++i) p.diagonal[i] = 1.0 - 2.0 * ((i >> k) & 1);
    return p;
}

/// Measures bit k of one mode of a two-mode state, collapsing and
/// renormalizing it in place. Returns the true outcome.
inline int measure_bit(StateVector& state, int mode, int k, double u) {
    if (state.cutoffs.size() != 2) throw std::invalid_argument("measure_bit: two-mode state required");
    if (mode != 0 && mode != 1) throw std::invalid_argument("measure_bit: mode must be 0 or 1");
    const int ca = state.cutoffs[0], cb = state.cutoffs[1];
    auto bit_of = [&](int na, int nb) { return ((mode == 0 ? na : nb) >> k) & 1; };
    double total = 0.0, one = 0.0;
    for (int na = 0; na < ca; ++na)
        for (int nb = 0; nb < cb; ++nb) {
            const double w = std::norm(state(na, nb));
            total += w;
            if (bit_of(na, nb)) one += w;
        }
    if (!(total > 0.0)) throw ComputeError("measure_bit: state has zero norm");
    const int outcome = u * total < one ? 1 : 0;
    const double kept = outcome ? one : total - one;
    const double scale = 1.0 / std::sqrt(kept);
    for (int na = 0; na < ca; ++na)
        for (int nb = 0; nb < cb; ++nb) {
            auto& amp = state.amplitudes[state.index(na, nb)];
            amp = bit_of(na, nb) == outcome ? amp * scale : cplx{0.0, 0.0};
        }
    return outcome;
}

/// Sequential QND readout of bits k = 0..3 of both modes on every shot.
/// Per bit, mode A then mode B; each measurement draws one uniform for the
/// outcome and one for the recorded-bit flip, in that order.
inline CountMatrix sample_binary_decomposition(const StateVector& state, std::int64_t shots,
                                               std::uint64_t seed, double bit_flip_prob = 0.0,
                                               double leakage_threshold = 0.01) {
    if (shots < 1) throw std::invalid_argument("sample_binary_decomposition: shots must be positive");
    if (!(bit_flip_prob >= 0.0 && bit_flip_prob <= 1.0))
        throw std::invalid_argument("sample_binary_decomposition: bit_flip_prob outside [0, 1]");
    if (state.cutoffs.size() != 2 || state.cutoffs[0] <= kBinaryNMax ||
        state.cutoffs[1] <= kBinaryNMax)
        throw std::invalid_argument(
            "sample_binary_decomposition: two-mode state with cutoff of at least 16 required");
    const double leak = truncation_leakage(state, kBinaryNMax);
    if (leak > leakage_threshold)
        throw ComputeError("sample_binary_decomposition: leakage " + std::to_string(leak) +
                           " outside [0,15]^2 exceeds threshold " +
                           std::to_string(leakage_threshold));
    Rng rng(seed);
    CountMatrix out(kBinaryNMax, shots, CountScheme::binary);
    StateVector work = state;
    for (std::int64_t s = 0; s < shots; ++s) {
        work.amplitudes = state.amplitudes;
        int recorded[2] = {0, 0};
        for (int k = 0; k < kBinaryBits; ++k)
            for (int mode = 0; mode < 2; ++mode) {
                int bit = measure_bit(work, mode, k, rng.uniform());
                if (rng.bernoulli(bit_flip_prob)) bit ^= 1;
                recorded[mode] |= bit << k;
            }
        ++out.counts(recorded[0], recorded[1]);
    }
    return out;
}

/// Rows: every cell for single-bit data, nonzero cells otherwise. The optional
/// corrected matrix adds a readout-corrected probability column.
inline void write_counts_csv(std::ostream& os, const CountMatrix& c,
                             const std::optional<Eigen::MatrixXd>& corrected = std::nullopt) {
    const Estimate e = estimate(c);
    std::vector<std::string> header{"n_prime", "m_prime", "count", "probability", "sigma"};
    if (corrected) header.push_back("corrected");
    write_csv_preamble(os, kCountsSchema,
                       {{"scheme", scheme_name(c.scheme)},
                        {"n_max", std::to_string(c.n_max)},
                        {"runs", std::to_string(c.runs)}},
                       header);
    for (int a = 0; a <= c.n_max; ++a)
        for (int b = 0; b <= c.n_max; ++b) {
            if (c.scheme != CountScheme::single_bit && c(a, b) == 0) continue;
            os << a << ',' << b << ',' << c(a, b) << ',' << format_double(e.probs(a, b)) << ','
               << format_double(e.sigma(a, b));
            if (corrected) os << ',' << format_double((*corrected)(a, b));
            os << '\n';
        }
}

/// Normalized histogram of sampled counts as a distribution over the box.
inline JointDistribution empirical_distribution(const CountMatrix& c) {
    JointDistribution d(c.n_max);
    d.probs = c.counts.cast<double>() / static_cast<double>(c.runs);
    return d;
}

}  // namespace fcsim
