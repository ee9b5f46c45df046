#pragma once

#include <string>

#include "paygmix/cli/config.hpp"
#include "paygmix/cli/tables.hpp"

namespace paygmix::cli {

/// Header row, one record per table row, trailing operation and provenance
/// columns. Probabilities and reals carry 8 decimals, currency 4.
std::string to_csv(const TableArtifact& artifact);

std::string to_json(const TableArtifact& artifact);
TableArtifact from_json(const std::string& text);

std::string format_cell(const Cell& cell, CellKind kind);

/// Writes to output.path, or standard output when the path is empty.
/// Throws IoError when the file cannot be written.
void write_output(const TableArtifact& artifact, const OutputSettings& output);

} // namespace paygmix::cli
