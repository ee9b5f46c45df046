#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paygmix/cli/errors.hpp"
#include "paygmix/fund_model.hpp"

namespace paygmix::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class OutputFormat { Csv, Json };

struct McSettings {
    std::size_t samples = 10000;
    std::uint64_t seed = 20240101;
    unsigned streams = 0; // worker threads, 0 = hardware concurrency
};

struct OutputSettings {
    OutputFormat format = OutputFormat::Csv;
    std::string path; // empty = standard output
};

struct RunConfig {
    std::string command; // variant-a, barrier, variant-b, continuous, compare, optimize, table
    int table_id = 0;

    double mu = 0.04;
    double sigma = 0.2;
    double alpha = 1.0;
    double b = 0.0;
    double p = 0.5;
    double t = 1.0;
    double lambda = 0.85;
    double c0 = 1.0;
    double deficit = 0.1;
    int horizon = 10;
    std::optional<double> deficit_euro;

    McSettings mc;
    OutputSettings output;
    std::optional<std::string> fixtures_dir;

    FundParams fund() const { return FundParams(mu, sigma); }

    /// Deficit used for currency outputs: deficit_euro when given.
    double currency_deficit() const { return deficit_euro.value_or(deficit); }
};

/// Keys accepted in a config file (and, prefixed with --, on the command line).
const std::vector<std::string>& config_keys();

/// Parses argv[1..]. A config file given by --config supplies defaults,
/// flags override it. Throws ParseError naming the offending key, or
/// HelpRequested.
RunConfig parse_config(const std::vector<std::string>& args);
RunConfig parse_config(int argc, const char* const* argv);

/// Reads a flat key=value document; '#' starts a comment. Unknown keys throw.
std::vector<std::pair<std::string, std::string>> read_config_text(const std::string& text);

} // namespace paygmix::cli
