#pragma once

// Deterministic CSV/JSON emitters and config-side parsers.  Floats print
// with 17 significant digits so a decimal round trip is bit-exact.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "keplerwave/errors.hpp"
#include "keplerwave/ess.hpp"
#include "keplerwave/sqdt.hpp"

namespace keplerwave::io {

using json = nlohmann::json;

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_row(std::ostream& os, const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << fmt(v[i]);
    }
    os << '\n';
}

/// CSV layout: comment header, one row for the r grid, one row for the
/// phi grid, then the r-major value rows.
inline void emit_grid_csv(const ess::GridField& g, std::ostream& os) {
    if (g.r_grid.empty() || g.phi_grid.empty()) throw std::domain_error("emit_grid: empty grid");
    os << "# keplerwave grid field: values are r*|Psi(r,phi,t)|^2\n";
    os << "# t = " << fmt(g.t) << " (atomic units)\n";
    os << "# row 1: r grid (" << g.r_grid.size() << " values, a.u.); row 2: phi grid ("
       << g.phi_grid.size() << " values, rad); then one row per r with one column per phi\n";
    write_row(os, g.r_grid);
    write_row(os, g.phi_grid);
    const std::size_t np = g.phi_grid.size();
    for (std::size_t j = 0; j < g.r_grid.size(); ++j) {
        for (std::size_t k = 0; k < np; ++k) {
            if (k) os << ',';
            os << fmt(g.values[j * np + k]);
        }
        os << '\n';
    }
}

inline json grid_to_json(const ess::GridField& g, const json& config) {
    if (g.r_grid.empty() || g.phi_grid.empty()) throw std::domain_error("emit_grid: empty grid");
    json out;
    out["config"] = config;
    out["t"] = g.t;
    out["r_grid"] = g.r_grid;
    out["phi_grid"] = g.phi_grid;
    const std::size_t np = g.phi_grid.size();
    json rows = json::array();
    for (std::size_t j = 0; j < g.r_grid.size(); ++j) {
        json row = json::array();
        for (std::size_t k = 0; k < np; ++k) row.push_back(g.values[j * np + k]);
        rows.push_back(std::move(row));
    }
    out["values"] = std::move(rows);
    return out;
}

/// Re-read an emitted grid CSV (used by the round-trip checks).
inline ess::GridField parse_grid_csv(std::istream& is) {
    ess::GridField g;
    std::string line;
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') {
            const auto pos = line.find("# t = ");
            if (pos == 0) g.t = std::strtod(line.c_str() + 6, nullptr);
            continue;
        }
        std::vector<double> row;
        const char* p = line.c_str();
        char* end = nullptr;
        while (*p) {
            row.push_back(std::strtod(p, &end));
            p = (*end == ',') ? end + 1 : end;
            if (end == p && *p) break;
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() < 3) throw io_error("parse_grid_csv: malformed grid file");
    g.r_grid = rows[0];
    g.phi_grid = rows[1];
    for (std::size_t j = 2; j < rows.size(); ++j)
        g.values.insert(g.values.end(), rows[j].begin(), rows[j].end());
    if (g.values.size() != g.r_grid.size() * g.phi_grid.size())
        throw io_error("parse_grid_csv: value block does not match the grids");
    return g;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open for writing: " + path);
    os << content;
    if (!os) throw io_error("write failed: " + path);
}

/// {"defects": {"0": 0.40, "1": 0.05}, "shifts": {"0": 0}}; absent keys
/// default to zero, unknown keys are rejected.
inline sqdt::QuantumDefectTable defect_table_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("defect table: expected a JSON object");
    std::map<int, double> defects;
    std::map<int, int> shifts;
    for (const auto& [key, val] : j.items()) {
        if (key == "defects") {
            for (const auto& [l, v] : val.items()) defects[std::stoi(l)] = v.get<double>();
        } else if (key == "shifts") {
            for (const auto& [l, v] : val.items()) shifts[std::stoi(l)] = v.get<int>();
        } else {
            throw std::invalid_argument("defect table: unknown key '" + key + "'");
        }
    }
    return sqdt::QuantumDefectTable(std::move(defects), std::move(shifts));
}

inline sqdt::QuantumDefectTable load_defect_table(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open defect table: " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("defect table: ") + e.what());
    }
    return defect_table_from_json(j);
}

}  // namespace keplerwave::io
