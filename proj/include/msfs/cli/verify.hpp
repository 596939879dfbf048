#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "msfs/cli/table.hpp"

namespace msfs::cli {

// Golden cells holding this marker are not compared.
inline constexpr const char* kSkip = "*";

struct CellCheck {
    std::size_t row = 0;  // data row, 1-based
    std::string column, golden, result;
    double diff = 0;  // |golden - result|; inf when the cells disagree in kind
    bool pass = true;
};

struct VerifyReport {
    std::vector<CellCheck> cells;
    std::size_t failures = 0;
    double max_diff = 0;
    bool ok() const { return failures == 0; }
};

inline std::optional<double> parse_number(const std::string& s) {
    if (s.empty() || s == kNA) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return std::nullopt;
    return v;
}

inline CellCheck compare_cell(const std::string& g, const std::string& r, double tol) {
    CellCheck c;
    c.golden = g;
    c.result = r;
    const auto a = parse_number(g), b = parse_number(r);
    if (a && b) {
        c.diff = (*a == *b) ? 0.0 : std::abs(*a - *b);
        c.pass = c.diff <= tol;
    } else {
        c.pass = g == r;
        c.diff = c.pass ? 0.0 : INFINITY;
    }
    return c;
}

// Schema, header or row-count mismatch is a ConfigError.
inline VerifyReport verify_tables(const Table& golden, const Table& results, double tol) {
    if (!(tol >= 0)) throw ConfigError("tolerance must be non-negative");
    if (golden.schema != results.schema)
        throw ConfigError("schema mismatch: golden '" + golden.schema + "', results '" + results.schema + "'");
    if (golden.columns != results.columns) throw ConfigError("header mismatch between golden and results");
    if (golden.rows.size() != results.rows.size())
        throw ConfigError("row count mismatch: golden " + std::to_string(golden.rows.size()) + ", results " +
                          std::to_string(results.rows.size()));
    VerifyReport rep;
    for (std::size_t i = 0; i < golden.rows.size(); ++i)
        for (std::size_t j = 0; j < golden.columns.size(); ++j) {
            if (golden.rows[i][j] == kSkip) continue;
            auto c = compare_cell(golden.rows[i][j], results.rows[i][j], tol);
            c.row = i + 1;
            c.column = golden.columns[j];
            if (!c.pass) ++rep.failures;
            if (c.pass) rep.max_diff = std::max(rep.max_diff, c.diff);
            rep.cells.push_back(std::move(c));
        }
    return rep;
}

inline void print_failures(std::ostream& os, const VerifyReport& rep) {
    for (const auto& c : rep.cells)
        if (!c.pass)
            os << "FAIL row " << c.row << " column " << c.column << ": golden " << c.golden << ", result " << c.result
               << ", |diff| " << num(c.diff) << '\n';
    os << (rep.ok() ? "PASS" : "FAIL") << ": " << rep.cells.size() << " cells compared, " << rep.failures
       << " failed, max passing |diff| " << num(rep.max_diff) << '\n';
}

// Every compared cell with its verdict.
inline Table report_table(const VerifyReport& rep) {
    Table t{"verify_report", "msfs.verify.report/1", {"row", "column", "golden", "result", "abs_diff", "pass"}, {}};
    for (const auto& c : rep.cells)
        t.add({num(c.row), c.column, c.golden, c.result, num(c.diff), c.pass ? "1" : "0"});
    return t;
}

}  // namespace msfs::cli
