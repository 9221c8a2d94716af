#pragma once

// CSV and JSON serialization of experiment outputs.
//
// CSV: "# key: value" metadata lines, one header row, RFC 4180 rows.
// JSON: {"metadata": {...}, "rows": [...]}.
// Reals are written with 17 significant digits; +infinity is "inf" in CSV
// and null in JSON.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "qre/montecarlo.hpp"

namespace qre::io {

inline constexpr const char* kSchemaVersion = "qre-records/1";
inline constexpr const char* kLibraryVersion = "1.0.0";

enum class Format { Csv, Json };

inline std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// RFC 4180 quoting where needed
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

using Cell = std::variant<double, std::uint64_t, bool, std::string>;

struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

inline std::string cell_text(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) return format_real(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::string>) return v;
            else return std::to_string(v);
        },
        c);
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                return v;
            } else {
                return v;
            }
        },
        c);
}

inline void write_csv(std::ostream& os, const Table& t) {
    for (const auto& [k, v] : t.metadata) os << "# " << k << ": " << v << "\r\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << csv_field(t.columns[c]);
    os << "\r\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_field(cell_text(row[c]));
        os << "\r\n";
    }
}

inline void write_json(std::ostream& os, const Table& t) {
    nlohmann::ordered_json doc;
    auto& meta = doc["metadata"];
    meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.metadata) meta[k] = v;
    auto& rows = doc["rows"];
    rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) obj[t.columns[c]] = cell_json(row[c]);
        rows.push_back(std::move(obj));
    }
    os << doc.dump(2) << '\n';
}

inline void write(std::ostream& os, const Table& t, Format f) {
    if (f == Format::Csv)
        write_csv(os, t);
    else
        write_json(os, t);
}

inline Table records_table(const std::vector<mc::RunRecord>& rs, std::uint64_t seed,
                           std::vector<std::pair<std::string, std::string>> extra_meta = {}) {
    const auto sum = mc::summarize(rs);
    Table t;
    t.metadata = {
        {"schema", kSchemaVersion},
        {"generator", std::string("qre ") + kLibraryVersion},
        {"command", "montecarlo"},
        {"rng", "splitmix64; record k uses seed xor k"},
        {"seed", std::to_string(seed)},
        {"n", std::to_string(rs.size())},
        {"redraws", std::to_string(sum.redraws)},
        {"violations", std::to_string(sum.violations)},
        {"classical_violations", std::to_string(sum.classical_violations)},
    };
    for (auto& kv : extra_meta) t.metadata.push_back(std::move(kv));
    t.columns = {"index", "u", "s_tilde", "s_cl", "bound", "bound_cl", "classical_violated"};
    t.rows.reserve(rs.size());
    for (const auto& r : rs)
        t.rows.push_back({Cell{r.index}, Cell{r.u}, Cell{r.s_tilde.value()}, Cell{r.s_cl.value()},
                          Cell{r.bound.value()}, Cell{r.bound_cl.value()}, Cell{r.classical_violated}});
    return t;
}

inline Table saturation_table(const std::vector<mc::SaturationPoint>& pts, double omega) {
    Table t;
    t.metadata = {
        {"schema", kSchemaVersion},
        {"generator", std::string("qre ") + kLibraryVersion},
        {"command", "saturation"},
        {"omega", format_real(omega)},
        {"n", std::to_string(pts.size())},
    };
    t.columns = {"eps", "u", "s_tilde", "f_s_tilde", "gap"};
    for (const auto& p : pts)
        t.rows.push_back({Cell{p.eps}, Cell{p.u}, Cell{p.s_tilde}, Cell{p.bound}, Cell{p.gap}});
    return t;
}

} // namespace qre::io
