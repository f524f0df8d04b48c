#include "spinboson/analysis.hpp"

#include <cmath>
#include <future>
#include <sstream>

#include "spinboson/errors.hpp"

namespace spinboson {

namespace {

ConvergenceRow convergence_row(ModelParams params, std::size_t cutoff)
{
    params.cutoff = cutoff;
    const BEffective b = build_b_effective(params);
    const SpectrumReport report = classify_spectrum(b, params.theta_hi, params.theta_lo);
    const Residual r = residual(b);

    ConvergenceRow row;
    row.cutoff = cutoff;
    row.r_prob = r.r_prob;
    row.r_amp = r.r_amp;
    row.lambda_min = report.eigenvalues.front();
    row.lambda_max = report.eigenvalues.back();
    row.count_non_decay = report.count_non_decay;
    row.count_decay = report.count_decay;
    return row;
}

}  // namespace

std::vector<ConvergenceRow> convergence_study(const ModelParams& params,
                                              std::span<const std::size_t> cutoffs)
{
    params.validate();
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
        if (cutoffs[i] < 2) throw InvalidParameter("convergence_study: every cutoff must be >= 2");
        if (i > 0 && cutoffs[i] <= cutoffs[i - 1])
            throw InvalidParameter("convergence_study: cutoffs must be strictly ascending (no duplicates)");
    }

    std::vector<std::future<ConvergenceRow>> pending;
    pending.reserve(cutoffs.size());
    for (std::size_t cutoff : cutoffs)
        pending.push_back(std::async(std::launch::async, convergence_row, params, cutoff));

    std::vector<ConvergenceRow> rows;
    rows.reserve(cutoffs.size());
    for (std::size_t i = 0; i < pending.size(); ++i) {
        try {
            rows.push_back(pending[i].get());
        } catch (const std::exception& e) {
            // Drain the remaining futures before reporting.
            for (std::size_t j = i + 1; j < pending.size(); ++j) {
                try {
                    pending[j].get();
                } catch (...) {
                }
            }
            std::ostringstream os;
            os << "convergence_study: cutoff " << cutoffs[i] << " failed: " << e.what();
            throw std::runtime_error(os.str());
        }
    }
    return rows;
}

std::vector<SpectrumReport> spectrum_vs_time(const ModelParams& params, std::span<const double> times)
{
    params.validate();
    for (double t : times)
        if (!std::isfinite(t)) throw InvalidParameter("spectrum_vs_time: times must be finite");

    const Propagator u(build_hamiltonian(params));
    std::vector<SpectrumReport> reports;
    reports.reserve(times.size());
    for (double t : times)
        reports.push_back(classify_spectrum(build_b_effective(u, t), params.theta_hi, params.theta_lo));
    return reports;
}

FigureSeries figure_series(const SpecialState& state, bool support_parity_only)
{
    FigureSeries series;
    series.label = state.state_class;
    series.parity = state.parity;
    series.eigenvalue = state.eigenvalue;
    const std::size_t first = (support_parity_only && state.parity == FockParity::odd) ? 1 : 0;
    const std::size_t stride = support_parity_only ? 2 : 1;
    for (std::size_t k = first; k < state.fock_probabilities.size(); k += stride) {
        series.fock_levels.push_back(k);
        series.probabilities.push_back(state.fock_probabilities[k]);
        series.phases.push_back(wrap_phase(std::arg(state.bath_amplitudes(static_cast<Eigen::Index>(k)))));
    }
    return series;
}

std::pair<FigureSeries, FigureSeries> figure_data(const ModelParams& params, bool support_parity_only)
{
    params.validate();
    const BEffective b = build_b_effective(params);
    const Thresholds th = Thresholds::from(params);
    const auto n = static_cast<Eigen::Index>(params.cutoff);
    return {figure_series(special_state_at(b, n - 1, th), support_parity_only),
            figure_series(special_state_at(b, 0, th), support_parity_only)};
}

}  // namespace spinboson
