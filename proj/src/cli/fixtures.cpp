#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "paygmix/cli/emit.hpp"
#include "paygmix/cli/fixtures.hpp"

namespace paygmix::cli {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

bool parse_number(const std::string& s, double& x) {
    char* end = nullptr;
    x = std::strtod(s.c_str(), &end);
    return !s.empty() && end == s.c_str() + s.size();
}

std::string status_name(FixtureStatus s) {
    switch (s) {
    case FixtureStatus::Pass:
        return "PASS";
    case FixtureStatus::Fail:
        return "FAIL";
    case FixtureStatus::Excluded:
        return "EXCLUDED";
    }
    return "?";
}

FixtureCheck check_one(const TableArtifact& artifact, const FixtureEntry& entry) {
    FixtureCheck check{entry, "", FixtureStatus::Fail, ""};
    const TableRow* row = artifact.find_row(entry.row);
    const auto col = artifact.find_column(entry.col);
    if (row == nullptr || !col || *col >= row->cells.size()) {
        check.detail = "no such cell";
        return check;
    }
    const Cell& cell = row->cells[*col];
    check.computed = format_cell(cell, row->kind == CellKind::Currency ? CellKind::Real : row->kind);

    if (entry.tolerance == "excluded") {
        check.status = FixtureStatus::Excluded;
        check.detail = "excluded from comparison";
        return check;
    }
    if (const auto* text = std::get_if<std::string>(&cell)) {
        check.status = *text == entry.expected ? FixtureStatus::Pass : FixtureStatus::Fail;
        return check;
    }
    const double x = std::get<double>(cell);
    double bound = 0.0;
    if (!entry.expected.empty() && (entry.expected[0] == '<' || entry.expected[0] == '>')) {
        if (!parse_number(entry.expected.substr(1), bound)) {
            check.detail = "unreadable expected value";
            return check;
        }
        const bool ok = entry.expected[0] == '<' ? x < bound : x > bound;
        check.status = ok ? FixtureStatus::Pass : FixtureStatus::Fail;
        return check;
    }
    double expected = 0.0;
    if (!parse_number(entry.expected, expected)) {
        check.detail = "unreadable expected value";
        return check;
    }
    double tol = 0.0;
    if (entry.tolerance != "exact" && !parse_number(entry.tolerance, tol)) {
        check.detail = "unreadable tolerance";
        return check;
    }
    const double diff = std::fabs(x - expected);
    check.status = diff <= tol + 1e-12 ? FixtureStatus::Pass : FixtureStatus::Fail;
    char buf[64];
    std::snprintf(buf, sizeof buf, "diff %.3g", diff);
    check.detail = buf;
    return check;
}

} // namespace

std::vector<FixtureEntry> parse_fixture_csv(const std::string& text) {
    std::vector<FixtureEntry> entries;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line == "\r") {
            continue;
        }
        auto f = split_csv_line(line);
        if (header) {
            header = false;
            if (f.size() == 4 && f[0] == "row") {
                continue;
            }
        }
        if (f.size() != 4) {
            throw ParseError("fixture line '" + line + "': expected row,col,expected,tolerance");
        }
        entries.push_back({f[0], f[1], f[2], f[3]});
    }
    return entries;
}

std::vector<FixtureCheck> check_fixtures(const TableArtifact& artifact, const std::vector<FixtureEntry>& entries) {
    std::vector<FixtureCheck> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
        out.push_back(check_one(artifact, e));
    }
    return out;
}

bool run_fixture_report(const std::string& dir, const RunConfig& config, std::ostream& out) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) {
        throw IoError("fixture directory '" + dir + "' not found");
    }
    int pass = 0;
    int fail = 0;
    int excluded = 0;
    int tables = 0;
    for (int id = 1; id <= kTableCount; ++id) {
        char name[32];
        std::snprintf(name, sizeof name, "table_%02d.csv", id);
        const fs::path path = fs::path(dir) / name;
        if (!fs::exists(path)) {
            continue;
        }
        std::ifstream in(path);
        if (!in) {
            throw IoError("cannot read '" + path.string() + "'");
        }
        std::ostringstream text;
        text << in.rdbuf();
        ++tables;
        const auto artifact = run_table(id, config);
        for (const auto& c : check_fixtures(artifact, parse_fixture_csv(text.str()))) {
            out << "table " << id << " [" << c.entry.row << " | " << c.entry.col << "] computed " << c.computed
                << " expected " << c.entry.expected << " tol " << c.entry.tolerance << "  "
                << status_name(c.status);
            if (!c.detail.empty()) {
                out << " (" << c.detail << ")";
            }
            out << '\n';
            switch (c.status) {
            case FixtureStatus::Pass:
                ++pass;
                break;
            case FixtureStatus::Fail:
                ++fail;
                break;
            case FixtureStatus::Excluded:
                ++excluded;
                break;
            }
        }
    }
    if (tables == 0) {
        throw IoError("no table_XX.csv fixtures in '" + dir + "'");
    }
    out << "summary: " << tables << " tables, " << pass << " pass, " << fail << " fail, " << excluded
        << " excluded\n";
    return fail == 0;
}

} // namespace paygmix::cli
