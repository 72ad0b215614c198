#ifndef BORSUK_CLI_HPP
#define BORSUK_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace borsuk::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNoResult = 2;
inline constexpr int kExitVerifyFailed = 3;

enum class OutputFormat { table, csv, record };

struct RunConfig {
    std::string subcommand;
    OutputFormat format = OutputFormat::table;
    std::optional<std::string> output_path;
    std::uint64_t seed = 20240611;
    int parallelism = 1;
    std::int64_t enumeration_cap = 10'000'000;
    int census_trials = 200;
    int lambda_grid_m = 512;
};

/// Parses "start:stop:step" (inclusive), a comma list, or "table2".
/// Throws std::invalid_argument on malformed or empty grids.
std::vector<double> parse_p_grid(const std::string& spec);

/// The 32 reference p values, 1.00 to 9.99.
const std::vector<double>& table2_p_values();

/// Applies "key = value" settings from a config file to `config`.
void apply_config_file(const std::string& path, RunConfig& config);

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace borsuk::cli

#endif
