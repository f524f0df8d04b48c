#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "spinboson/cli.hpp"
#include "spinboson/errors.hpp"

namespace spinboson::cli {

namespace {

using nlohmann::json;

double parse_double(std::string_view text, std::string_view what)
{
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end || text.empty())
        throw UsageError("malformed number for " + std::string(what) + ": '" + std::string(text) + "'");
    return v;
}

std::size_t parse_count(std::string_view text, std::string_view what)
{
    long long v = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end || text.empty() || v < 0)
        throw UsageError("malformed non-negative integer for " + std::string(what) + ": '" +
                         std::string(text) + "'");
    return static_cast<std::size_t>(v);
}

std::string shortest(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::size_t> parse_cutoff_list(std::string_view text)
{
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        out.push_back(parse_count(item, "--cutoffs"));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

const std::set<std::string>& known_keys()
{
    static const std::set<std::string> keys{"command", "epsilon",  "omega",   "beta",
                                            "time",    "cutoff",   "theta-hi", "theta-lo",
                                            "bath",    "time-grid", "cutoffs", "output",
                                            "format"};
    return keys;
}

double json_number(const json& v, const std::string& key)
{
    if (!v.is_number()) throw UsageError("config key '" + key + "' must be a number");
    return v.get<double>();
}

std::string json_string(const json& v, const std::string& key)
{
    if (!v.is_string()) throw UsageError("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

void validate(const RunConfig& c)
{
    try {
        c.params.validate();
    } catch (const InvalidParameter& e) {
        throw UsageError(e.what());
    }
    if (c.command == Command::converge) {
        if (c.cutoffs.empty()) throw UsageError("--cutoffs must list at least one cutoff");
        for (std::size_t i = 0; i < c.cutoffs.size(); ++i) {
            if (c.cutoffs[i] < 2) throw UsageError("--cutoffs entries must be >= 2");
            if (i > 0 && c.cutoffs[i] <= c.cutoffs[i - 1])
                throw UsageError("--cutoffs must be strictly ascending");
        }
    }
    if (c.command == Command::survival && c.bath.kind == BathSpec::Kind::fock &&
        c.bath.level >= c.params.cutoff)
        throw UsageError("--bath fock level must be below the cutoff");
}

}  // namespace

std::string_view to_string(Command c) noexcept
{
    switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::special: return "special";
    case Command::survival: return "survival";
    case Command::converge: return "converge";
    case Command::figure: return "figure";
    }
    return "spectrum";
}

std::string_view to_string(OutputFormat f) noexcept
{
    return f == OutputFormat::csv ? "csv" : "json";
}

Command parse_command(std::string_view s)
{
    for (auto c : {Command::spectrum, Command::special, Command::survival, Command::converge, Command::figure})
        if (to_string(c) == s) return c;
    throw UsageError("unknown command '" + std::string(s) + "'");
}

OutputFormat parse_format(std::string_view s)
{
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw UsageError("unknown output format '" + std::string(s) + "' (expected csv or json)");
}

TimeGrid TimeGrid::parse(std::string_view text)
{
    const auto a = text.find(':');
    const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
    if (a == std::string_view::npos || b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos)
        throw UsageError("time grid must be start:stop:step, got '" + std::string(text) + "'");
    TimeGrid g{parse_double(text.substr(0, a), "time grid start"),
               parse_double(text.substr(a + 1, b - a - 1), "time grid stop"),
               parse_double(text.substr(b + 1), "time grid step")};
    if (!std::isfinite(g.start) || !std::isfinite(g.stop) || !std::isfinite(g.step))
        throw UsageError("time grid values must be finite");
    if (g.step <= 0.0) throw UsageError("time grid step must be positive");
    if (g.stop < g.start) throw UsageError("time grid stop must not precede start");
    if ((g.stop - g.start) / g.step > 1e7) throw UsageError("time grid has more than 1e7 points");
    return g;
}

std::string TimeGrid::to_string() const
{
    return shortest(start) + ":" + shortest(stop) + ":" + shortest(step);
}

std::vector<double> TimeGrid::points() const
{
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
    return out;
}

BathSpec BathSpec::parse(std::string_view text)
{
    if (text == "vacuum") return {};
    if (text.starts_with("fock:")) return {Kind::fock, parse_count(text.substr(5), "--bath fock level"), {}};
    if (text.starts_with("file:") && text.size() > 5) return {Kind::file, 0, std::string(text.substr(5))};
    throw UsageError("bath must be vacuum, fock:<n> or file:<path>, got '" + std::string(text) + "'");
}

std::string BathSpec::to_string() const
{
    switch (kind) {
    case Kind::vacuum: return "vacuum";
    case Kind::fock: return "fock:" + std::to_string(level);
    case Kind::file: return "file:" + path;
    }
    return "vacuum";
}

json RunConfig::to_json() const
{
    json j = json::object();
    j["command"] = std::string(cli::to_string(command));
    j["epsilon"] = params.epsilon;
    j["omega"] = params.omega;
    j["beta"] = params.beta;
    j["time"] = params.time;
    j["cutoff"] = params.cutoff;
    j["theta-hi"] = params.theta_hi;
    j["theta-lo"] = params.theta_lo;
    j["bath"] = bath.to_string();
    if (time_grid) j["time-grid"] = time_grid->to_string();
    j["cutoffs"] = cutoffs;
    j["output"] = output;
    j["format"] = std::string(cli::to_string(format));
    return j;
}

std::string RunConfig::output_path() const
{
    if (!output.empty()) return output;
    return std::string(cli::to_string(command)) + "." + std::string(cli::to_string(format));
}

RunConfig apply_json(RunConfig base, const json& doc)
{
    if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
    const json& flat = (doc.contains("artifact") && doc.contains("parameters")) ? doc.at("parameters") : doc;
    if (!flat.is_object()) throw UsageError("config parameters must be a JSON object");

    for (const auto& [key, value] : flat.items()) {
        if (!known_keys().contains(key)) throw UsageError("unknown config key '" + key + "'");
        if (key == "command") base.command = parse_command(json_string(value, key));
        else if (key == "epsilon") base.params.epsilon = json_number(value, key);
        else if (key == "omega") base.params.omega = json_number(value, key);
        else if (key == "beta") base.params.beta = json_number(value, key);
        else if (key == "time") base.params.time = json_number(value, key);
        else if (key == "theta-hi") base.params.theta_hi = json_number(value, key);
        else if (key == "theta-lo") base.params.theta_lo = json_number(value, key);
        else if (key == "cutoff") {
            if (!value.is_number_integer() || value.get<long long>() < 0)
                throw UsageError("config key 'cutoff' must be a non-negative integer");
            base.params.cutoff = value.get<std::size_t>();
        } else if (key == "bath") base.bath = BathSpec::parse(json_string(value, key));
        else if (key == "time-grid") {
            if (value.is_null()) base.time_grid.reset();
            else base.time_grid = TimeGrid::parse(json_string(value, key));
        } else if (key == "cutoffs") {
            if (value.is_string()) {
                base.cutoffs = parse_cutoff_list(value.get<std::string>());
            } else if (value.is_array()) {
                base.cutoffs.clear();
                for (const auto& item : value) {
                    if (!item.is_number_integer() || item.get<long long>() < 0)
                        throw UsageError("config key 'cutoffs' must hold non-negative integers");
                    base.cutoffs.push_back(item.get<std::size_t>());
                }
            } else {
                throw UsageError("config key 'cutoffs' must be an array or comma-separated string");
            }
        } else if (key == "output") base.output = json_string(value, key);
        else if (key == "format") base.format = parse_format(json_string(value, key));
    }
    return base;
}

std::optional<RunConfig> parse_config(int argc, const char* const* argv, std::ostream& out)
{
    CLI::App app{"Special-state analysis of the driven spin-boson measurement model", "spinboson"};
    app.fallthrough();
    app.require_subcommand(0, 1);

    std::string config_file;
    std::string epsilon, omega, beta, time, cutoff, theta_hi, theta_lo, bath, time_grid, cutoffs, output, format;
    app.add_option("--config", config_file, "Flat JSON config file (or a .meta.json sidecar)")->type_name("PATH");
    auto* o_eps = app.add_option("--epsilon", epsilon, "Spin splitting (default 0.5)")->type_name("FLOAT");
    auto* o_omega = app.add_option("--omega", omega, "Boson frequency (default 0.1)")->type_name("FLOAT");
    auto* o_beta = app.add_option("--beta", beta, "Spin-boson coupling (default 0.6)")->type_name("FLOAT");
    auto* o_time = app.add_option("--time", time, "Evolution time (default 0.15)")->type_name("FLOAT");
    auto* o_cutoff = app.add_option("--cutoff", cutoff, "Number of Fock levels (default 250)")->type_name("INT");
    auto* o_hi = app.add_option("--theta-hi", theta_hi, "Non-decay threshold (default 0.99)")->type_name("FLOAT");
    auto* o_lo = app.add_option("--theta-lo", theta_lo, "Decay threshold (default 0.01)")->type_name("FLOAT");
    auto* o_bath = app.add_option("--bath", bath, "Initial bath: vacuum | fock:<n> | file:<path>")->type_name("SPEC");
    auto* o_grid = app.add_option("--time-grid", time_grid, "Times as start:stop:step")->type_name("START:STOP:STEP");
    auto* o_cutoffs = app.add_option("--cutoffs", cutoffs, "Comma-separated cutoffs for converge")->type_name("INT,...");
    auto* o_output = app.add_option("--output", output, "Output file path")->type_name("PATH");
    auto* o_format = app.add_option("--format", format, "csv | json")->type_name("FORMAT");

    const char* descriptions[][2] = {
        {"spectrum", "Classified B_eff spectrum at --time (or over --time-grid)"},
        {"special", "Non-decay and decay special states with Fock amplitudes"},
        {"survival", "Pr(up) over --time-grid for the --bath initial state"},
        {"converge", "Residual and counts versus Fock cutoff"},
        {"figure", "Fock probabilities and phases of the extreme special states"},
    };
    for (const auto& d : descriptions) app.add_subcommand(d[0], d[1]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunConfig cfg;
    bool command_from_file = false;
    if (!config_file.empty()) {
        std::ifstream is(config_file);
        if (!is) throw UsageError("cannot read config file " + config_file);
        json doc;
        try {
            doc = json::parse(is);
        } catch (const json::parse_error& e) {
            throw UsageError("config file " + config_file + " is not valid JSON: " + e.what());
        }
        cfg = apply_json(cfg, doc);
        const json& flat = (doc.contains("artifact") && doc.contains("parameters")) ? doc["parameters"] : doc;
        command_from_file = flat.contains("command");
    }

    const auto subs = app.get_subcommands();
    if (subs.size() == 1) {
        const Command cli_cmd = parse_command(subs.front()->get_name());
        if (command_from_file && cli_cmd != cfg.command)
            throw UsageError("conflicting commands: '" + std::string(to_string(cli_cmd)) + "' on the command line, '" +
                             std::string(to_string(cfg.command)) + "' in the config file");
        cfg.command = cli_cmd;
    } else if (!command_from_file) {
        throw UsageError("exactly one command is required: spectrum, special, survival, converge or figure");
    }

    if (o_eps->count()) cfg.params.epsilon = parse_double(epsilon, "--epsilon");
    if (o_omega->count()) cfg.params.omega = parse_double(omega, "--omega");
    if (o_beta->count()) cfg.params.beta = parse_double(beta, "--beta");
    if (o_time->count()) cfg.params.time = parse_double(time, "--time");
    if (o_cutoff->count()) cfg.params.cutoff = parse_count(cutoff, "--cutoff");
    if (o_hi->count()) cfg.params.theta_hi = parse_double(theta_hi, "--theta-hi");
    if (o_lo->count()) cfg.params.theta_lo = parse_double(theta_lo, "--theta-lo");
    if (o_bath->count()) cfg.bath = BathSpec::parse(bath);
    if (o_grid->count()) cfg.time_grid = TimeGrid::parse(time_grid);
    if (o_cutoffs->count()) cfg.cutoffs = parse_cutoff_list(cutoffs);
    if (o_output->count()) cfg.output = output;
    if (o_format->count()) cfg.format = parse_format(format);

    validate(cfg);
    return cfg;
}

}  // namespace spinboson::cli
