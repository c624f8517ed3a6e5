// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "envtk/blackwell.hpp"
#include "envtk/envelope.hpp"
#include "envtk/errors.hpp"
#include "envtk/grid_fn.hpp"
#include "envtk/screening.hpp"

namespace envtk {

using json = nlohmann::json;

inline json to_json(const GridFn& f) {
    return json{{"n_points", f.size()},
                {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

inline json to_json(const OuterFocSample& s) {
    return json{{"r", s.r},         {"t", s.t},           {"m", s.m},
                {"symmetric", s.symmetric}, {"forward", s.forward},
                {"backward", s.backward}};
}

inline json to_json(const EnvelopeReport& r) {
    json samples = json::array();
    for (const auto& s : r.outer_foc_residuals) samples.push_back(to_json(s));
    return json{
        {"value_fn", to_json(r.value_fn)},
        {"envelope_residual", to_json(r.envelope_residual)},
        {"outer_foc_residuals", samples},
        {"max_abs_residuals", {r.max_abs_residuals.first, r.max_abs_residuals.second}},
        {"verdict", to_string(r.verdict)},
        {"diagnostics",
         {{"envelope_tolerance", r.envelope_tolerance},
          {"outer_tolerance", r.outer_tolerance},
          {"used_fd_partial", r.used_fd_partial},
          {"value_total_variation", r.value_total_variation},
          {"warnings", r.warnings}}}};
}

inline json to_json(const ICReport& r) {
    json matrix = json::array();
    for (std::size_t i = 0; i < r.n; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < r.n; ++j) row.push_back(r.at(i, j));
        matrix.push_back(std::move(row));
    }
    json violations = json::array();
    for (const auto& v : r.violating_pairs)
        violations.push_back({{"r_index", v.r_index}, {"t_index", v.t_index}, {"gain", v.gain}});
    return json{{"mimic_matrix", matrix},
                {"worst_violation", r.worst_violation},
                {"violating_pairs", violations},
                {"is_ic", r.is_ic}};
}

inline json to_json(const PosteriorDistribution& y) {
    json support = json::array();
    for (const Belief& mu : y.support())
        support.push_back(std::vector<double>(mu.values().begin(), mu.values().end()));
    const Belief m = y.mean();
    return json{{"mu0", std::vector<double>(m.values().begin(), m.values().end())},
                {"support", support},
                {"weights", std::vector<double>(y.weights().begin(), y.weights().end())}};
}

// ---------------------------------------------------------------------------
// CSV emission. %.17g keeps round-trips exact and output deterministic.

inline std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ArgumentError("cannot open for writing: " + path);
    out << content;
}

/// t,value rows for a grid function; extra columns may be appended by
/// passing additional grids of the same size.
inline std::string grid_csv(const std::vector<std::string>& headers,
                            const std::vector<const GridFn*>& columns) {
    if (columns.empty() || headers.size() != columns.size() + 1)
        throw ArgumentError("grid_csv: header/column mismatch");
    std::string out;
    for (std::size_t c = 0; c < headers.size(); ++c)
        out += (c ? "," : "") + headers[c];
    out += "\n";
    const std::size_t n = columns[0]->size();
    for (const GridFn* g : columns)
        if (g->size() != n) throw ArgumentError("grid_csv: column size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        out += csv_number(columns[0]->t(i));
        for (const GridFn* g : columns) out += "," + csv_number((*g)[i]);
        out += "\n";
    }
    return out;
}

inline std::string outer_foc_csv(const std::vector<OuterFocSample>& samples) {
    std::string out = "r,t,m,symmetric,forward,backward\n";
    for (const auto& s : samples) {
        out += csv_number(s.r) + "," + csv_number(s.t) + "," + csv_number(s.m) + "," +
               csv_number(s.symmetric) + "," + csv_number(s.forward) + "," +
               csv_number(s.backward) + "\n";
    }
    return out;
}

inline std::string mimic_matrix_csv(const ICReport& r) {
    std::string out;
    for (std::size_t i = 0; i < r.n; ++i) {
        for (std::size_t j = 0; j < r.n; ++j)
            out += (j ? "," : "") + csv_number(r.at(i, j));
        out += "\n";
    }
    return out;
}

inline std::string violations_csv(const ICReport& r) {
    std::string out = "r_index,t_index,gain\n";
    for (const auto& v : r.violating_pairs)
        out += std::to_string(v.r_index) + "," + std::to_string(v.t_index) + "," +
               csv_number(v.gain) + "\n";
    return out;
}

inline std::string certificate_csv(const GarblingCertificate& c) {
    std::string out;
    for (std::size_t i = 0; i < c.rows; ++i) {
        for (std::size_t j = 0; j < c.cols; ++j)
            out += (j ? "," : "") + csv_number(c.at(i, j));
        out += "\n";
    }
    return out;
}

} // namespace envtk
