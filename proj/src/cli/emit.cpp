#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "paygmix/cli/emit.hpp"

namespace paygmix::cli {

namespace {

using nlohmann::json;

std::string fixed(double x, int decimals) {
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    std::string s = buf;
    if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') {
        s.erase(0, 1); // no "-0.0000"
    }
    return s;
}

// Quote only when needed; labels and headers rarely contain commas.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

json cell_to_json(const Cell& cell) {
    if (const auto* x = std::get_if<double>(&cell)) {
        if (!std::isfinite(*x)) {
            return nullptr;
        }
        return *x;
    }
    return std::get<std::string>(cell);
}

Cell cell_from_json(const json& j) {
    if (j.is_null()) {
        return std::nan("");
    }
    if (j.is_string()) {
        return j.get<std::string>();
    }
    return j.get<double>();
}

} // namespace

std::string format_cell(const Cell& cell, CellKind kind) {
    if (const auto* s = std::get_if<std::string>(&cell)) {
        return *s;
    }
    const double x = std::get<double>(cell);
    switch (kind) {
    case CellKind::Currency:
        return fixed(x, 4);
    case CellKind::Probability:
    case CellKind::Real:
    case CellKind::Label:
        break;
    }
    return fixed(x, 8);
}

std::string to_csv(const TableArtifact& artifact) {
    std::ostringstream out;
    out << csv_field(artifact.row_header);
    for (const auto& c : artifact.columns) {
        out << ',' << csv_field(c);
    }
    out << ",operation,provenance\n";
    for (const auto& row : artifact.rows) {
        out << csv_field(row.label);
        for (const auto& cell : row.cells) {
            out << ',' << csv_field(format_cell(cell, row.kind));
        }
        out << ',' << csv_field(row.operation) << ',' << csv_field(row.provenance) << '\n';
    }
    return out.str();
}

std::string to_json(const TableArtifact& artifact) {
    json doc;
    doc["table"] = artifact.id;
    doc["title"] = artifact.title;
    doc["row_header"] = artifact.row_header;
    doc["columns"] = artifact.columns;
    json rows = json::array();
    for (const auto& row : artifact.rows) {
        json values = json::array();
        for (const auto& cell : row.cells) {
            values.push_back(cell_to_json(cell));
        }
        rows.push_back({{"label", row.label},
                        {"kind", kind_name(row.kind)},
                        {"values", values},
                        {"operation", row.operation},
                        {"provenance", row.provenance}});
    }
    doc["rows"] = rows;
    json meta;
    meta["version"] = artifact.metadata.version;
    meta["seed"] = artifact.metadata.seed ? json(*artifact.metadata.seed) : json(nullptr);
    meta["samples"] = artifact.metadata.samples ? json(*artifact.metadata.samples) : json(nullptr);
    doc["metadata"] = meta;
    return doc.dump(2) + "\n";
}

TableArtifact from_json(const std::string& text) {
    TableArtifact a;
    try {
        const json doc = json::parse(text);
        a.id = doc.at("table").get<int>();
        a.title = doc.at("title").get<std::string>();
        a.row_header = doc.at("row_header").get<std::string>();
        a.columns = doc.at("columns").get<std::vector<std::string>>();
        for (const auto& r : doc.at("rows")) {
            TableRow row;
            row.label = r.at("label").get<std::string>();
            row.kind = kind_from_name(r.at("kind").get<std::string>());
            for (const auto& v : r.at("values")) {
                row.cells.push_back(cell_from_json(v));
            }
            row.operation = r.at("operation").get<std::string>();
            row.provenance = r.at("provenance").get<std::string>();
            a.rows.push_back(std::move(row));
        }
        const auto& meta = doc.at("metadata");
        a.metadata.version = meta.at("version").get<std::string>();
        if (!meta.at("seed").is_null()) {
            a.metadata.seed = meta.at("seed").get<std::uint64_t>();
        }
        if (!meta.at("samples").is_null()) {
            a.metadata.samples = meta.at("samples").get<std::size_t>();
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed table document: ") + e.what());
    }
    return a;
}

void write_output(const TableArtifact& artifact, const OutputSettings& output) {
    const std::string text = output.format == OutputFormat::Json ? to_json(artifact) : to_csv(artifact);
    if (output.path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(output.path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + output.path + "' for writing");
    }
    out << text;
    out.close();
    if (!out) {
        throw IoError("failed writing '" + output.path + "'");
    }
}

} // namespace paygmix::cli
