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

// Weak-drive circuit-QED expressions for a coupler transmon dispersively
// coupled to two cavities: dispersive shifts, pump-engineered beamsplitter
// and squeezing rates, induced Kerr, and photon-number-dependent ancilla
// frequencies.
//
// Units are whatever the caller uses consistently (typically angular
// frequency). Quantities with two algebraically equivalent forms are
// returned as a DualForm so callers can check one against the other.

#include <cmath>
#include <stdexcept>
#include <string>

#include "fcsim/fockspace.hpp"

namespace fcsim {

enum class Cavity { a, b };

struct CircuitParams {
    double g_a = 0.0, g_b = 0.0;          // cavity-coupler couplings
    double delta_a = 0.0, delta_b = 0.0;  // ω_i − ω_C
    double k_c = 0.0;                     // coupler anharmonicity
    double omega_1 = 0.0, omega_2 = 0.0;  // pump amplitudes
    double delta_1 = 0.0, delta_2 = 0.0;  // pump detunings ω_{1,2} − ω_C
    double two_photon_detuning = 0.0;     // Δ = ω_A + ω_2 − ω_02
    // |g/δ| above which the dispersive expansion is flagged.
    double dispersive_threshold = 0.1;

    double g(Cavity c) const { return c == Cavity::a ? g_a : g_b; }
    double delta(Cavity c) const { return c == Cavity::a ? delta_a : delta_b; }

    /// Warns through warning_handler() for each cavity outside the dispersive regime.
    void check_dispersive() const {
        for (Cavity c : {Cavity::a, Cavity::b})
            if (delta(c) != 0.0 && std::abs(g(c) / delta(c)) > dispersive_threshold)
                warning_handler()(std::string("cavity ") + (c == Cavity::a ? "A" : "B") +
                                  " |g/delta| = " + std::to_string(std::abs(g(c) / delta(c))) +
                                  " is outside the dispersive regime");
    }
};

struct DualForm {
    double raw = 0.0;          // written in bare couplings
    double substituted = 0.0;  // written in terms of χ

    double value() const { return raw; }
    double relative_gap() const {
        const double scale = std::max(std::abs(raw), std::abs(substituted));
        return scale == 0.0 ? 0.0 : std::abs(raw - substituted) / scale;
    }
};

namespace detail {

// num/den, rejecting denominators below 1e-12 of the numerator scale.
inline double ratio(double num, double den, const char* what) {
    if (std::abs(den) <= 1e-12 * std::max(std::abs(num), 1e-300) || den == 0.0)
        throw std::invalid_argument(std::string(what) + ": singular denominator");
    return num / den;
}

}  // namespace detail

/// χ = 2K_C|g/δ|²·δ/(δ + K_C); second form 2K_C g²/(δ + K_C)/δ.
inline DualForm chi(double g, double delta, double k_c) {
    const double p = detail::ratio(g, delta, "chi") * detail::ratio(g, delta, "chi");
    const double raw = 2.0 * k_c * p * detail::ratio(delta, delta + k_c, "chi");
    const double alt = detail::ratio(2.0 * k_c * g * g, (delta + k_c) * delta, "chi");
    return {raw, alt};
}

inline DualForm chi(const CircuitParams& p, Cavity c) { return chi(p.g(c), p.delta(c), p.k_c); }

/// Detuning that yields dispersive shift chi for participation |g/δ|² and
/// anharmonicity k_c; inverse of chi() at fixed participation.
inline double detuning_for_chi(double participation, double k_c, double chi_target) {
    return detail::ratio(chi_target * k_c, 2.0 * k_c * participation - chi_target,
                         "detuning_for_chi");
}

/// Weak-drive beamsplitter rate (magnitude).
inline DualForm g_beamsplitter(const CircuitParams& p) {
    const double pumps = detail::ratio(p.omega_1, p.delta_1, "g_beamsplitter") *
                         detail::ratio(p.omega_2, p.delta_2, "g_beamsplitter") *
                         detail::ratio(p.delta_a + p.delta_2, p.delta_a + p.delta_2 + p.k_c,
                                       "g_beamsplitter");
    const double raw = 2.0 * std::abs(p.k_c *
                                      detail::ratio(p.g_a, p.delta_a, "g_beamsplitter") *
                                      detail::ratio(p.g_b, p.delta_b, "g_beamsplitter") * pumps);
    const double chis = std::abs(chi(p, Cavity::a).raw * chi(p, Cavity::b).raw);
    const double sub = std::sqrt(chis) *
                       std::sqrt(std::abs(detail::ratio((p.delta_a + p.k_c) * (p.delta_b + p.k_c),
                                                        p.delta_a * p.delta_b, "g_beamsplitter"))) *
                       std::abs(pumps);
    return {raw, sub};
}

/// Weak-drive single-mode squeezing rate of cavity c (magnitude).
inline DualForm g_squeeze(const CircuitParams& p, Cavity c) {
    const double g = p.g(c), d = p.delta(c);
    const double pumps = detail::ratio(p.omega_1, p.delta_1, "g_squeeze") *
                         detail::ratio(p.omega_2, p.delta_2, "g_squeeze");
    const double gd = detail::ratio(g, d, "g_squeeze");
    const double raw =
        2.0 * std::abs(p.k_c * gd * gd * pumps * detail::ratio(d, 2.0 * d + p.k_c, "g_squeeze"));
    const double sub = std::abs(chi(p, c).raw) *
                       std::abs(pumps * detail::ratio(d + p.k_c, 2.0 * d + p.k_c, "g_squeeze"));
    return {raw, sub};
}

/// Coupler-induced self-Kerr with the transmon in its ground state.
inline DualForm self_kerr(const CircuitParams& p, Cavity c) {
    const double d = p.delta(c);
    const double gd = detail::ratio(p.g(c), d, "self_kerr");
    const double raw = 2.0 * p.k_c * gd * gd * gd * gd * detail::ratio(d, 2.0 * d + p.k_c, "self_kerr");
    const double x = chi(p, c).raw;
    const double sub = detail::ratio(x * x, 2.0 * p.k_c, "self_kerr") *
                       detail::ratio((d + p.k_c) * (d + p.k_c), d * (2.0 * d + p.k_c), "self_kerr");
    return {raw, sub};
}

/// Coupler-induced cross-Kerr between the cavities.
inline DualForm cross_kerr(const CircuitParams& p) {
    const double ga = detail::ratio(p.g_a, p.delta_a, "cross_kerr");
    const double gb = detail::ratio(p.g_b, p.delta_b, "cross_kerr");
    const double sum = p.delta_a + p.delta_b;
    const double tail = detail::ratio(sum, sum + p.k_c, "cross_kerr");
    const double raw = 2.0 * ga * ga * gb * gb * p.k_c * tail;
    const double sub = detail::ratio(chi(p, Cavity::a).raw * chi(p, Cavity::b).raw, 2.0 * p.k_c,
                                     "cross_kerr") *
                       detail::ratio((p.delta_a + p.k_c) * (p.delta_b + p.k_c),
                                     p.delta_a * p.delta_b, "cross_kerr") *
                       tail;
    return {raw, sub};
}

/// f(x) = (18x³ + 30x² + 22x + 6) / (4(x + 1)(4x² + 8x + 3)).
inline double chi_prime_shape(double x) {
    return detail::ratio(((18.0 * x + 30.0) * x + 22.0) * x + 6.0,
                         4.0 * (x + 1.0) * ((4.0 * x + 8.0) * x + 3.0), "chi_prime_shape");
}

/// χ′ = χ²/δ·f(δ/K_C), the quadratic photon-number dependence of the ancilla
/// transition.
inline double chi_prime(const CircuitParams& p, Cavity c) {
    const double d = p.delta(c);
    const double x = chi(p, c).raw;
    return detail::ratio(x * x, d, "chi_prime") * chi_prime_shape(detail::ratio(d, p.k_c, "chi_prime"));
}

/// Pump-induced change of cavity A's self-Kerr near the ω_A + ω_2 ≈ ω_02
/// resonance.
inline double driven_kerr_shift(const CircuitParams& p) {
    const double o = detail::ratio(p.omega_2, p.delta_2, "driven_kerr_shift");
    const double x = chi(p, Cavity::a).raw;
    const double d2 = p.delta_2;
    return 2.0 * p.k_c * o * o *
           detail::ratio(x * x, p.two_photon_detuning * p.two_photon_detuning, "driven_kerr_shift") *
           detail::ratio((2.0 * d2 + p.k_c) * d2, (d2 + p.k_c) * (d2 - p.k_c), "driven_kerr_shift");
}

/// ω_l = ω₀ − l·χ + (l² − l)·χ′/2.
inline double ancilla_frequency(int l, double omega0, double chi_value, double chi_prime_value) {
    if (l < 0) throw std::invalid_argument("ancilla_frequency: negative photon number");
    const double ld = static_cast<double>(l);
    return omega0 - ld * chi_value + (ld * ld - ld) * chi_prime_value / 2.0;
}

}  // namespace fcsim
