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

// JSON documents for molecules, noise parameters, detector models and
// circuit parameters. Every field is validated with a ConfigError naming it.
//
// Molecule schema (wavenumbers in cm⁻¹, K in a₀√mₑ, angles in radians):
//   {"label": "h2o", "nu_pre": [..], "nu_post": [..],
//    "duschinsky_theta": θ            (two modes)
//    or "duschinsky_matrix": [[..],..] (any N, row-major J),
//    "shift_K": [..]}

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "fcsim/error.hpp"
#include "fcsim/hardware.hpp"
#include "fcsim/measurement.hpp"
#include "fcsim/molparams.hpp"
#include "fcsim/noise.hpp"

namespace fcsim {

using Json = nlohmann::json;

namespace detail {

inline void reject_unknown(const Json& j, const std::set<std::string>& known, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ConfigError(where + ": unknown field '" + key + "'");
}

inline double number_field(const Json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
    if (!j.at(key).is_number()) throw ConfigError(where + ": field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

inline void maybe_number(const Json& j, const std::string& key, const std::string& where, double& out) {
    if (j.contains(key)) out = number_field(j, key, where);
}

inline Eigen::VectorXd vector_field(const Json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
    const Json& v = j.at(key);
    if (!v.is_array() || v.empty())
        throw ConfigError(where + ": field '" + key + "' must be a nonempty array of numbers");
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number())
            throw ConfigError(where + ": field '" + key + "' entry " + std::to_string(i) +
                              " is not a number");
        out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
    }
    return out;
}

inline Json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace detail

inline MolecularTransition molecule_from_json(const Json& j, const std::string& where = "molecule") {
    detail::reject_unknown(j, {"label", "nu_pre", "nu_post", "duschinsky_theta", "duschinsky_matrix",
                               "shift_K"},
                           where);
    MolecularTransition t;
    if (j.contains("label")) {
        if (!j.at("label").is_string()) throw ConfigError(where + ": field 'label' must be a string");
        t.label = j.at("label").get<std::string>();
    }
    t.nu_pre = detail::vector_field(j, "nu_pre", where);
    t.nu_post = detail::vector_field(j, "nu_post", where);
    t.shift_K = detail::vector_field(j, "shift_K", where);
    const bool has_theta = j.contains("duschinsky_theta");
    const bool has_matrix = j.contains("duschinsky_matrix");
    if (has_theta == has_matrix)
        throw ConfigError(where + ": give exactly one of 'duschinsky_theta' or 'duschinsky_matrix'");
    if (has_theta) {
        if (t.nu_pre.size() != 2)
            throw ConfigError(where + ": field 'duschinsky_theta' requires two modes");
        t.duschinsky = duschinsky_matrix(detail::number_field(j, "duschinsky_theta", where)).transpose();
    } else {
        const Json& m = j.at("duschinsky_matrix");
        const auto n = t.nu_pre.size();
        if (!m.is_array() || m.size() != static_cast<std::size_t>(n))
            throw ConfigError(where + ": field 'duschinsky_matrix' must have " + std::to_string(n) + " rows");
        t.duschinsky.resize(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            const Json& row = m[static_cast<std::size_t>(r)];
            if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
                throw ConfigError(where + ": field 'duschinsky_matrix' row " + std::to_string(r) +
                                  " must have " + std::to_string(n) + " entries");
            for (Eigen::Index c = 0; c < n; ++c) {
                if (!row[static_cast<std::size_t>(c)].is_number())
                    throw ConfigError(where + ": field 'duschinsky_matrix' entry is not a number");
                t.duschinsky(r, c) = row[static_cast<std::size_t>(c)].get<double>();
            }
        }
    }
    try {
        t.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(where + ": " + e.what());
    }
    return t;
}

/// A preset name or the path of a molecule JSON file.
inline MolecularTransition load_molecule(const std::string& name_or_path) {
    if (is_preset(name_or_path)) return preset(name_or_path);
    return molecule_from_json(detail::parse_json_file(name_or_path), name_or_path);
}

inline Json params_to_json(const DoktorovParams& p) {
    // x + 0.0 maps −0.0 to +0.0 so sign-free results print as 0.0
    auto vec = [](const Eigen::VectorXd& v) {
        std::vector<double> out(static_cast<std::size_t>(v.size()));
        for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v[i] + 0.0;
        return Json(out);
    };
    Json rot = Json::array();
    for (Eigen::Index r = 0; r < p.rotation.rows(); ++r) {
        std::vector<double> row(static_cast<std::size_t>(p.rotation.cols()));
        for (Eigen::Index c = 0; c < p.rotation.cols(); ++c) row[static_cast<std::size_t>(c)] = p.rotation(r, c) + 0.0;
        rot.push_back(row);
    }
    Json j{{"zeta", vec(p.zeta)},   {"zeta_prime", vec(p.zeta_prime)}, {"rotation", rot},
           {"alpha", vec(p.alpha)}, {"eta", p.eta}};
    if (p.modes() == 2) j["theta"] = p.theta() + 0.0;
    return j;
}

inline KerrLoss kerr_loss_from_json(const Json& j, KerrLoss base, const std::string& where) {
    detail::reject_unknown(j, {"kerr_khz", "t1_us"}, where);
    detail::maybe_number(j, "kerr_khz", where, base.kerr_khz);
    detail::maybe_number(j, "t1_us", where, base.t1_us);
    return base;
}

/// Overrides on top of `base`. Rates are given as g/2π in kHz.
inline NoiseParams noise_from_json(const Json& j, NoiseParams base = {}) {
    const std::string where = "noise";
    detail::reject_unknown(j, {"cavity_a", "cavity_b", "cross_kerr_khz", "g_sq_khz", "g_bs_khz",
                               "displacement_ns_per_alpha", "verification_us", "step_us"},
                           where);
    for (auto [key, cav] : {std::pair{"cavity_a", &base.cavity_a}, std::pair{"cavity_b", &base.cavity_b}}) {
        if (!j.contains(key)) continue;
        const Json& c = j.at(key);
        const std::string w = where + "." + key;
        detail::reject_unknown(c, {"native", "squeeze", "beamsplitter"}, w);
        if (c.contains("native")) cav->native = kerr_loss_from_json(c.at("native"), cav->native, w + ".native");
        if (c.contains("squeeze")) cav->squeeze = kerr_loss_from_json(c.at("squeeze"), cav->squeeze, w + ".squeeze");
        if (c.contains("beamsplitter"))
            cav->beamsplitter = kerr_loss_from_json(c.at("beamsplitter"), cav->beamsplitter, w + ".beamsplitter");
    }
    detail::maybe_number(j, "cross_kerr_khz", where, base.cross_kerr_khz);
    if (j.contains("g_sq_khz")) base.g_sq = khz_to_rad_per_us(detail::number_field(j, "g_sq_khz", where));
    if (j.contains("g_bs_khz")) base.g_bs = khz_to_rad_per_us(detail::number_field(j, "g_bs_khz", where));
    detail::maybe_number(j, "displacement_ns_per_alpha", where, base.displacement_ns_per_alpha);
    detail::maybe_number(j, "verification_us", where, base.verification_us);
    detail::maybe_number(j, "step_us", where, base.step_us);
    try {
        base.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return base;
}

inline DetectorModel detector_from_json(const Json& j) {
    const std::string where = "detector";
    detail::reject_unknown(j, {"t_a", "t_b", "f_a", "f_b"}, where);
    DetectorModel m{detail::number_field(j, "t_a", where), detail::number_field(j, "t_b", where),
                    detail::number_field(j, "f_a", where), detail::number_field(j, "f_b", where)};
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return m;
}

inline CircuitParams circuit_from_json(const Json& j) {
    const std::string where = "circuit";
    detail::reject_unknown(j, {"g_a", "g_b", "delta_a", "delta_b", "k_c", "omega_1", "omega_2",
                               "delta_1", "delta_2", "two_photon_detuning", "dispersive_threshold"},
                           where);
    CircuitParams p;
    p.g_a = detail::number_field(j, "g_a", where);
    p.g_b = detail::number_field(j, "g_b", where);
    p.delta_a = detail::number_field(j, "delta_a", where);
    p.delta_b = detail::number_field(j, "delta_b", where);
    p.k_c = detail::number_field(j, "k_c", where);
    detail::maybe_number(j, "omega_1", where, p.omega_1);
    detail::maybe_number(j, "omega_2", where, p.omega_2);
    detail::maybe_number(j, "delta_1", where, p.delta_1);
    detail::maybe_number(j, "delta_2", where, p.delta_2);
    detail::maybe_number(j, "two_photon_detuning", where, p.two_photon_detuning);
    detail::maybe_number(j, "dispersive_threshold", where, p.dispersive_threshold);
    return p;
}

inline Json load_json(const std::string& path) { return detail::parse_json_file(path); }

}  // namespace fcsim
