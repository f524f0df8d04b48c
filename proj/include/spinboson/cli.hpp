#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spinboson/model.hpp"

namespace spinboson::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitComputation = 3;
inline constexpr int kExitIo = 4;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { spectrum, special, survival, converge, figure };
enum class OutputFormat { csv, json };

std::string_view to_string(Command c) noexcept;
std::string_view to_string(OutputFormat f) noexcept;
Command parse_command(std::string_view s);
OutputFormat parse_format(std::string_view s);

/// `start:stop:step`; points are start + i*step for start + i*step <= stop.
struct TimeGrid {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    static TimeGrid parse(std::string_view text);
    std::string to_string() const;
    std::vector<double> points() const;

    bool operator==(const TimeGrid&) const = default;
};

/// Initial bath for `survival`: `vacuum`, `fock:<n>` or `file:<path>`.
struct BathSpec {
    enum class Kind { vacuum, fock, file };
    Kind kind = Kind::vacuum;
    std::size_t level = 0;
    std::string path;

    static BathSpec parse(std::string_view text);
    std::string to_string() const;

    bool operator==(const BathSpec&) const = default;
};

/// Fully resolved run configuration. Precedence: flags > config file > defaults.
struct RunConfig {
    Command command = Command::spectrum;
    ModelParams params;
    OutputFormat format = OutputFormat::csv;
    std::string output;  // empty: <command>.<format> in the working directory
    BathSpec bath;
    std::optional<TimeGrid> time_grid;
    std::vector<std::size_t> cutoffs{50, 100, 150, 200, 250};

    /// Flat object with kebab-case keys, accepted back by apply_json.
    nlohmann::json to_json() const;
    std::string output_path() const;

    bool operator==(const RunConfig&) const = default;
};

/// Overlays the keys of a flat config object (or the "parameters" object of a
/// metadata sidecar) onto `base`. Unknown keys are a UsageError.
RunConfig apply_json(RunConfig base, const nlohmann::json& doc);

/// Parses argv, including an optional `--config <file>`. Throws UsageError on
/// unknown flags, malformed numbers, missing or conflicting commands and
/// invalid parameters. Returns std::nullopt after printing --help.
std::optional<RunConfig> parse_config(int argc, const char* const* argv, std::ostream& out);

/// Executes the configured study and writes its files; throws on failure.
/// Returns the list of files written (data files first, sidecar last).
std::vector<std::string> run(const RunConfig& config);

/// Complete command-line entry point: parse, echo config to `err`, run, map
/// failures onto exit codes.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string_view artifact_version() noexcept;

}  // namespace spinboson::cli
