#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "paygmix/cli/config.hpp"
#include "paygmix/cli/tables.hpp"

namespace paygmix::cli {

namespace {

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"variant-a", "one-year lump sum with full payback"},
    {"barrier", "one-year lump sum, payback above a retained return b"},
    {"variant-b", "credit over `horizon` years, Monte Carlo"},
    {"continuous", "continuous withdrawal above barrier b"},
    {"compare", "lump sum vs continuous withdrawal at horizon t"},
    {"optimize", "largest credible barrier for (p, alpha, t)"},
    {"table", "rebuild reference table <id>"},
};

const std::map<std::string, std::string> kKeyHelp = {
    {"mu", "log drift per year (0.04)"},
    {"sigma", "log volatility per year (0.2)"},
    {"alpha", "investment multiplier (1)"},
    {"b", "retained-return barrier, > -1 (0)"},
    {"p", "credibility probability (0.5)"},
    {"t", "horizon in years (1)"},
    {"lambda", "mean-variance weight (0.85)"},
    {"c0", "baseline contribution (1)"},
    {"deficit", "deficit C_j - C_0 (0.1)"},
    {"horizon", "credit years for variant-b (10)"},
    {"samples", "Monte Carlo samples (10000)"},
    {"seed", "Monte Carlo seed (20240101)"},
    {"streams", "worker threads, 0 = all cores"},
    {"format", "csv or json"},
    {"output", "output file, default stdout"},
    {"deficit-euro", "deficit in currency for optimize"},
};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
    double x = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, x);
    if (ec != std::errc() || ptr != end || !std::isfinite(x)) {
        throw ParseError("invalid value for '" + key + "': expected a number, got '" + value + "'");
    }
    return x;
}

template <typename Int>
Int to_integer(const std::string& key, const std::string& value) {
    Int x = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, x);
    if (ec != std::errc() || ptr != end) {
        throw ParseError("invalid value for '" + key + "': expected an integer, got '" + value + "'");
    }
    return x;
}

void require(bool ok, const std::string& key, const std::string& message) {
    if (!ok) {
        throw ParseError("invalid value for '" + key + "': " + message);
    }
}

void apply(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "mu") {
        cfg.mu = to_double(key, value);
    } else if (key == "sigma") {
        cfg.sigma = to_double(key, value);
        require(cfg.sigma > 0.0, key, "must be positive");
    } else if (key == "alpha") {
        cfg.alpha = to_double(key, value);
        require(cfg.alpha > 0.0, key, "must be positive");
    } else if (key == "b") {
        cfg.b = to_double(key, value);
        require(cfg.b > -1.0, key, "must exceed -1");
    } else if (key == "p") {
        cfg.p = to_double(key, value);
        require(cfg.p > 0.0 && cfg.p < 1.0, key, "must lie in (0, 1)");
    } else if (key == "t") {
        cfg.t = to_double(key, value);
        require(cfg.t > 0.0, key, "must be positive");
    } else if (key == "lambda") {
        cfg.lambda = to_double(key, value);
        require(cfg.lambda >= 0.0, key, "must be non-negative");
    } else if (key == "c0") {
        cfg.c0 = to_double(key, value);
        require(cfg.c0 > 0.0, key, "must be positive");
    } else if (key == "deficit") {
        cfg.deficit = to_double(key, value);
        require(cfg.deficit > 0.0, key, "must be positive");
    } else if (key == "horizon") {
        cfg.horizon = to_integer<int>(key, value);
        require(cfg.horizon >= 1, key, "must be at least 1");
    } else if (key == "samples") {
        cfg.mc.samples = to_integer<std::size_t>(key, value);
        require(cfg.mc.samples >= 1, key, "must be at least 1");
    } else if (key == "seed") {
        cfg.mc.seed = to_integer<std::uint64_t>(key, value);
    } else if (key == "streams") {
        cfg.mc.streams = to_integer<unsigned>(key, value);
    } else if (key == "format") {
        if (value == "csv") {
            cfg.output.format = OutputFormat::Csv;
        } else if (value == "json") {
            cfg.output.format = OutputFormat::Json;
        } else {
            throw ParseError("invalid value for 'format': expected csv or json, got '" + value + "'");
        }
    } else if (key == "output") {
        cfg.output.path = value;
    } else if (key == "deficit-euro") {
        const double x = to_double(key, value);
        require(x > 0.0, key, "must be positive");
        cfg.deficit_euro = x;
    } else {
        throw ParseError("unknown key '" + key + "'");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("invalid value for 'config': cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {"mu",      "sigma",   "alpha",   "b",       "p",
                                                  "t",       "lambda",  "c0",      "deficit", "horizon",
                                                  "samples", "seed",    "streams", "format",  "output",
                                                  "deficit-euro"};
    return keys;
}

std::vector<std::pair<std::string, std::string>> read_config_text(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    const auto& keys = config_keys();
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("config line " + std::to_string(line_no) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '_', '-');
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw ParseError("unknown key '" + key + "' in config file");
        }
        entries.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return entries;
}

RunConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"Funded alternatives to PAYG contribution increases", "paygmix"};
    app.fallthrough();
    app.require_subcommand(0, 1);

    std::map<std::string, std::string> flag_values;
    std::map<std::string, CLI::Option*> flag_options;
    for (const auto& key : config_keys()) {
        flag_options[key] = app.add_option("--" + key, flag_values[key], kKeyHelp.at(key));
    }
    std::string config_path;
    app.add_option("--config", config_path, "key=value file; flags take precedence");
    std::string fixtures_dir;
    auto* fixtures_opt = app.add_option("--fixtures", fixtures_dir, "compare all tables against fixture files in dir");

    std::map<std::string, CLI::App*> subcommands;
    for (const auto& [name, description] : kCommands) {
        subcommands[name] = app.add_subcommand(name, description);
    }
    int table_id = 0;
    subcommands["table"]->add_option("id", table_id, "table number 1-10")->required();

    // CLI11 wants argv order reversed when given a vector.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::ParseError& e) {
        throw ParseError(e.what());
    }

    RunConfig cfg;
    if (!config_path.empty()) {
        for (const auto& [key, value] : read_config_text(read_file(config_path))) {
            apply(cfg, key, value);
        }
    }
    for (const auto& key : config_keys()) {
        if (flag_options[key]->count() > 0) {
            apply(cfg, key, flag_values[key]);
        }
    }
    for (const auto& [name, sub] : subcommands) {
        if (sub->parsed()) {
            cfg.command = name;
        }
    }
    if (cfg.command == "table") {
        if (table_id < 1 || table_id > kTableCount) {
            throw ParseError("invalid value for 'id': table must be between 1 and " + std::to_string(kTableCount));
        }
        cfg.table_id = table_id;
    }
    if (fixtures_opt->count() > 0) {
        cfg.fixtures_dir = fixtures_dir;
    }
    if (cfg.command.empty() && !cfg.fixtures_dir) {
        throw ParseError("missing command: expected one of variant-a, barrier, variant-b, continuous, "
                         "compare, optimize, table <id>, or --fixtures <dir>");
    }
    return cfg;
}

RunConfig parse_config(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return parse_config(args);
}

} // namespace paygmix::cli
