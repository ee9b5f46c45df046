#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "paygmix/cli/config.hpp"

namespace paygmix::cli {

enum class CellKind { Probability, Currency, Real, Label };

std::string kind_name(CellKind kind);
CellKind kind_from_name(const std::string& name);

using Cell = std::variant<double, std::string>;

struct TableRow {
    std::string label;
    CellKind kind = CellKind::Real;
    std::vector<Cell> cells;
    std::string operation;  // library call that produced every cell of the row
    std::string provenance; // closed-form, quadrature or monte-carlo(seed=..,samples=..)
};

struct TableMetadata {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::string version = kVersion;
};

struct TableArtifact {
    int id = 0; // 1..10 for the reference tables, 0 for single commands
    std::string title;
    std::string row_header;
    std::vector<std::string> columns;
    std::vector<TableRow> rows;
    TableMetadata metadata;

    const TableRow* find_row(const std::string& label) const;
    std::optional<std::size_t> find_column(const std::string& header) const;
};

/// Cell-wise equality; NaN equals NaN.
bool operator==(const TableArtifact& a, const TableArtifact& b);

inline constexpr int kTableCount = 10;

/// Rebuilds reference table `id` on its fixed grid. Only the Monte Carlo
/// settings of config are used. Throws ParseError for an unknown id.
TableArtifact run_table(int id, const RunConfig& config);

/// Formats a grid value the way row and column keys are written.
std::string grid_key(double x);

} // namespace paygmix::cli
