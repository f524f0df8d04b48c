#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spinboson/analysis.hpp"
#include "spinboson/cli.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/evolve.hpp"
#include "spinboson/output.hpp"
#include "spinboson/special.hpp"

namespace spinboson::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

long long as_int(std::size_t v) { return static_cast<long long>(v); }

std::string label(StateClass c) { return std::string(spinboson::to_string(c)); }
std::string label(FockParity p) { return std::string(spinboson::to_string(p)); }

std::string render(const Table& t, OutputFormat f)
{
    return f == OutputFormat::csv ? to_csv(t) : to_json(t);
}

// out.csv + "decay" -> out_decay.csv
fs::path derived_path(const fs::path& base, const std::string& suffix)
{
    fs::path p = base.parent_path() / (base.stem().string() + "_" + suffix);
    p += base.extension();
    return p;
}

StateVector load_bath_file(const std::string& path, std::size_t cutoff)
{
    std::ifstream is(path);
    if (!is) throw IoError("cannot read bath file " + path);
    std::vector<Complex> amps;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::replace(line.begin(), line.end(), ',', ' ');
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        fields.imbue(std::locale::classic());
        double re = 0.0, im = 0.0;
        if (!(fields >> re)) {
            std::ostringstream os;
            os << "bath file " << path << ":" << lineno << ": expected 're [im]'";
            throw InvalidParameter(os.str());
        }
        fields >> im;
        amps.emplace_back(re, im);
    }
    if (amps.size() != cutoff) {
        std::ostringstream os;
        os << "bath file " << path << " holds " << amps.size() << " amplitudes, expected " << cutoff;
        throw InvalidParameter(os.str());
    }
    return StateVector(Eigen::Map<const ComplexVector>(amps.data(), static_cast<Eigen::Index>(amps.size())));
}

StateVector make_bath(const BathSpec& spec, std::size_t cutoff)
{
    switch (spec.kind) {
    case BathSpec::Kind::vacuum: return StateVector::vacuum(cutoff);
    case BathSpec::Kind::fock: return StateVector::fock(cutoff, spec.level);
    case BathSpec::Kind::file: return load_bath_file(spec.path, cutoff);
    }
    return StateVector::vacuum(cutoff);
}

std::vector<double> survival_times(const RunConfig& c)
{
    if (c.time_grid) return c.time_grid->points();
    const double t = c.params.time;
    if (t > 0.0) return TimeGrid{0.0, t, t / 100.0}.points();
    return {t};
}

struct Outputs {
    std::vector<std::pair<fs::path, std::string>> files;
    json summary = json::object();
};

Outputs run_spectrum(const RunConfig& c, const fs::path& base)
{
    const std::vector<double> times = c.time_grid ? c.time_grid->points() : std::vector<double>{c.params.time};
    const auto reports = spectrum_vs_time(c.params, times);

    Table summary{{"time", "count_non_decay", "count_decay", "count_intermediate", "theta_hi", "theta_lo",
                   "lambda_min", "lambda_max"},
                  {}};
    Table eigen{{"time", "index", "eigenvalue", "parity", "class"}, {}};
    for (const auto& r : reports) {
        summary.rows.push_back({r.time, as_int(r.count_non_decay), as_int(r.count_decay),
                                as_int(r.count_intermediate), r.thresholds.hi, r.thresholds.lo,
                                r.eigenvalues.front(), r.eigenvalues.back()});
        for (std::size_t k = 0; k < r.eigenvalues.size(); ++k)
            eigen.rows.push_back({r.time, as_int(k), r.eigenvalues[k], label(r.parities[k]),
                                  label(r.thresholds.classify(r.eigenvalues[k]))});
    }
    Outputs out;
    out.files.emplace_back(base, render(summary, c.format));
    out.files.emplace_back(derived_path(base, "eigenvalues"), render(eigen, c.format));
    return out;
}

Outputs run_special(const RunConfig& c, const fs::path& base)
{
    const BEffective b = build_b_effective(c.params);
    const Thresholds th = Thresholds::from(c.params);
    const auto report = classify_spectrum(b, th.hi, th.lo);
    const Residual r = residual(b);

    Table t{{"state", "class", "eigenvalue", "parity", "final_phase", "fock_level", "probability", "phase"}, {}};
    for (StateClass cls : {StateClass::non_decay, StateClass::decay}) {
        for (const auto& s : extract_special_states(b, cls, th)) {
            for (std::size_t k = 0; k < s.fock_probabilities.size(); ++k) {
                const Complex amp = s.bath_amplitudes(static_cast<Eigen::Index>(k));
                t.rows.push_back({as_int(static_cast<std::size_t>(s.index)), label(s.state_class), s.eigenvalue,
                                  label(s.parity), s.final_phase, as_int(k), s.fock_probabilities[k],
                                  wrap_phase(std::arg(amp))});
            }
        }
    }
    Outputs out;
    out.files.emplace_back(base, render(t, c.format));
    out.summary = {{"count_non_decay", report.count_non_decay},
                   {"count_decay", report.count_decay},
                   {"count_intermediate", report.count_intermediate},
                   {"lambda_min", report.eigenvalues.front()},
                   {"lambda_max", report.eigenvalues.back()},
                   {"r_prob", r.r_prob},
                   {"r_amp", r.r_amp}};
    return out;
}

Outputs run_survival(const RunConfig& c, const fs::path& base)
{
    c.params.validate();
    const StateVector bath = make_bath(c.bath, c.params.cutoff);
    const auto times = survival_times(c);
    const SurvivalCurve curve = survival_probability(c.params, bath, times);

    Table t{{"time", "pr_up"}, {}};
    for (std::size_t i = 0; i < curve.times.size(); ++i)
        t.rows.push_back({curve.times[i], std::clamp(curve.pr_up[i], 0.0, 1.0)});
    Outputs out;
    out.files.emplace_back(base, render(t, c.format));
    return out;
}

Outputs run_converge(const RunConfig& c, const fs::path& base)
{
    const auto rows = convergence_study(c.params, c.cutoffs);
    Table t{{"cutoff", "r_prob", "r_amp", "lambda_max", "lambda_min", "count_non_decay", "count_decay"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({as_int(r.cutoff), r.r_prob, r.r_amp, r.lambda_max, r.lambda_min,
                          as_int(r.count_non_decay), as_int(r.count_decay)});
    Outputs out;
    out.files.emplace_back(base, render(t, c.format));
    return out;
}

Outputs run_figure(const RunConfig& c, const fs::path& base)
{
    const auto [nondecay, decay] = figure_data(c.params);
    const auto table = [](const FigureSeries& s) {
        Table t{{"fock_level", "probability", "phase"}, {}};
        for (std::size_t i = 0; i < s.fock_levels.size(); ++i)
            t.rows.push_back({as_int(s.fock_levels[i]), s.probabilities[i], s.phases[i]});
        return t;
    };
    const auto describe = [](const FigureSeries& s) {
        return json{{"eigenvalue", s.eigenvalue}, {"class", label(s.label)}, {"parity", label(s.parity)}};
    };
    Outputs out;
    out.files.emplace_back(derived_path(base, "nondecay"), render(table(nondecay), c.format));
    out.files.emplace_back(derived_path(base, "decay"), render(table(decay), c.format));
    out.summary = {{"nondecay", describe(nondecay)}, {"decay", describe(decay)}};
    return out;
}

}  // namespace

std::string_view artifact_version() noexcept
{
#ifdef SPINBOSON_VERSION
    return SPINBOSON_VERSION;
#else
    return "0.0.0";
#endif
}

std::vector<std::string> run(const RunConfig& config)
{
    const fs::path base = config.output_path();
    Outputs out;
    switch (config.command) {
    case Command::spectrum: out = run_spectrum(config, base); break;
    case Command::special: out = run_special(config, base); break;
    case Command::survival: out = run_survival(config, base); break;
    case Command::converge: out = run_converge(config, base); break;
    case Command::figure: out = run_figure(config, base); break;
    }

    std::vector<std::string> written;
    for (const auto& [path, content] : out.files) {
        write_atomic(path, content);
        written.push_back(path.string());
    }

    json meta = json::object();
    meta["artifact"] = {{"name", "spinboson"}, {"version", std::string(artifact_version())}};
    meta["command"] = std::string(to_string(config.command));
    meta["parameters"] = config.to_json();
    meta["thresholds"] = {{"theta_hi", config.params.theta_hi}, {"theta_lo", config.params.theta_lo}};
    meta["hbar"] = ModelParams::hbar;
    meta["outputs"] = written;
    if (!out.summary.empty()) meta["summary"] = out.summary;

    fs::path meta_path = base;
    meta_path += ".meta.json";
    write_atomic(meta_path, meta.dump(2) + "\n");
    written.push_back(meta_path.string());
    return written;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig config;
    try {
        auto parsed = parse_config(argc, argv, out);
        if (!parsed) return kExitOk;
        config = std::move(*parsed);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    }

    err << "resolved configuration:\n" << config.to_json().dump(2) << "\n";
    try {
        for (const auto& path : run(config)) err << "wrote " << path << "\n";
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        err << "computation error: " << e.what() << "\n";
        return kExitComputation;
    }
    return kExitOk;
}

}  // namespace spinboson::cli
