#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "paygmix/cli/config.hpp"
#include "paygmix/cli/tables.hpp"

namespace paygmix::cli {

// One line of fixtures/table_XX.csv: row,col,expected,tolerance.
// expected is a number, a label, "<x" or ">x"; tolerance is a number,
// "exact" or "excluded".
struct FixtureEntry {
    std::string row;
    std::string col;
    std::string expected;
    std::string tolerance;
};

enum class FixtureStatus { Pass, Fail, Excluded };

struct FixtureCheck {
    FixtureEntry entry;
    std::string computed;
    FixtureStatus status = FixtureStatus::Fail;
    std::string detail;
};

std::vector<FixtureEntry> parse_fixture_csv(const std::string& text);

/// Compares one artifact against its fixture entries.
std::vector<FixtureCheck> check_fixtures(const TableArtifact& artifact, const std::vector<FixtureEntry>& entries);

/// Runs every table that has a table_XX.csv in dir and prints one line per
/// cell plus a summary. Returns true when nothing failed.
bool run_fixture_report(const std::string& dir, const RunConfig& config, std::ostream& out);

} // namespace paygmix::cli
