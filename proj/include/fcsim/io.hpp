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

// Small CSV dialect shared by every output table: leading "# key: value"
// comment lines (the first is always "# schema: <tag>"), one header row, then
// comma-separated data rows.

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fcsim/error.hpp"

namespace fcsim {

struct CsvTable {
    std::map<std::string, std::string> meta;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    const std::string& schema() const { return meta_value("schema"); }

    const std::string& meta_value(const std::string& key) const {
        auto it = meta.find(key);
        if (it == meta.end()) throw ConfigError("csv: missing '# " + key + ":' line");
        return it->second;
    }

    std::size_t column(std::string_view name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw ConfigError("csv: missing column '" + std::string(name) + "'");
    }
};

/// Round-trip-exact, locale-independent rendering of a double.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& s, std::string_view what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw ConfigError("csv: " + std::string(what) + " is not a number: '" + s + "'");
    return v;
}

inline long long parse_integer(const std::string& s, std::string_view what) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw ConfigError("csv: " + std::string(what) + " is not an integer: '" + s + "'");
    return v;
}

inline void write_csv_preamble(std::ostream& os, std::string_view schema,
                               const std::vector<std::pair<std::string, std::string>>& meta,
                               const std::vector<std::string>& header) {
    os << "# schema: " << schema << '\n';
    for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
}

inline CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (have_header) throw ConfigError("csv: comment line after header");
            const auto colon = line.find(':');
            if (colon == std::string::npos) continue;
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t");
                const auto e = s.find_last_not_of(" \t");
                return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
            };
            t.meta[trim(line.substr(1, colon - 1))] = trim(line.substr(colon + 1));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!have_header) {
            t.header = std::move(cells);
            have_header = true;
        } else {
            if (cells.size() != t.header.size())
                throw ConfigError("csv: row " + std::to_string(t.rows.size() + 1) + " has " +
                                  std::to_string(cells.size()) + " cells, header has " +
                                  std::to_string(t.header.size()));
            t.rows.push_back(std::move(cells));
        }
    }
    if (!have_header) throw ConfigError("csv: no header row");
    if (t.meta.find("schema") == t.meta.end()) throw ConfigError("csv: missing schema tag");
    return t;
}

}  // namespace fcsim
