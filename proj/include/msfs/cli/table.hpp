#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "msfs/core/error.hpp"
#include "msfs/measures/value.hpp"

namespace msfs::cli {

inline constexpr const char* kSchemaPrefix = "#schema=";
inline constexpr const char* kNA = "NA";

// 9 significant digits; negative zero prints as 0.
inline std::string num(double v) {
    if (std::isnan(v)) return kNA;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0) v = 0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::string num(measures::Maybe v) { return v ? num(*v) : kNA; }
inline std::string num(int v) { return std::to_string(v); }
inline std::string num(long v) { return std::to_string(v); }
inline std::string num(std::size_t v) { return std::to_string(v); }

struct Table {
    std::string name;    // file stem
    std::string schema;  // e.g. "msfs.rc.steps/1"
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) {
        if (row.size() != columns.size()) throw ValidationError("table " + name + ": row width differs from header");
        rows.push_back(std::move(row));
    }
    int column(const std::string& c) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == c) return static_cast<int>(i);
        return -1;
    }
};

namespace detail {
inline void put_line(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].find_first_of(",\"\n\r") != std::string::npos)
            throw ValidationError("csv cell needs quoting: " + cells[i]);
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

inline std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}
}  // namespace detail

// Row 1 carries the schema tag, row 2 the header.
inline void write_csv(std::ostream& os, const Table& t) {
    os << kSchemaPrefix << t.schema << '\n';
    detail::put_line(os, t.columns);
    for (const auto& r : t.rows) detail::put_line(os, r);
}

inline void write_csv(const std::string& path, const Table& t) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    write_csv(os, t);
}

// Throws ConfigError on anything that is not a tagged table.
inline Table read_csv(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError(path + ": cannot open");
    Table t;
    std::string line;
    if (!std::getline(is, line) || line.empty()) throw ConfigError(path + ": empty file");
    if (line.rfind(kSchemaPrefix, 0) != 0) throw ConfigError(path + ": row 1 is not a schema tag");
    t.schema = line.substr(std::string(kSchemaPrefix).size());
    if (!std::getline(is, line) || line.empty()) throw ConfigError(path + ": missing header row");
    t.columns = detail::split(line);
    int n = 2;
    while (std::getline(is, line)) {
        ++n;
        if (line.empty()) continue;
        auto cells = detail::split(line);
        if (cells.size() != t.columns.size())
            throw ConfigError(path + ": line " + std::to_string(n) + " has " + std::to_string(cells.size()) +
                              " cells, header has " + std::to_string(t.columns.size()));
        t.rows.push_back(std::move(cells));
    }
    if (t.rows.empty()) throw ConfigError(path + ": no data rows");
    return t;
}

}  // namespace msfs::cli
