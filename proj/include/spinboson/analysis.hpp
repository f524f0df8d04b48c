#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "spinboson/model.hpp"
#include "spinboson/special.hpp"

namespace spinboson {

struct ConvergenceRow {
    std::size_t cutoff = 0;
    double r_prob = 0.0;
    double r_amp = 0.0;
    double lambda_max = 0.0;
    double lambda_min = 0.0;
    std::size_t count_non_decay = 0;
    std::size_t count_decay = 0;
};

/// One row per cutoff with every other parameter held fixed. Cutoffs must be
/// strictly ascending and >= 2. Rows are evaluated concurrently but returned
/// in input order.
std::vector<ConvergenceRow> convergence_study(const ModelParams& params,
                                              std::span<const std::size_t> cutoffs);

/// One report per time; H is diagonalized once and reused.
std::vector<SpectrumReport> spectrum_vs_time(const ModelParams& params,
                                             std::span<const double> times);

struct FigureSeries {
    std::vector<std::size_t> fock_levels;
    std::vector<double> probabilities;
    std::vector<double> phases;  // radians, in (-pi, pi]
    StateClass label = StateClass::intermediate;
    FockParity parity = FockParity::even;
    double eigenvalue = 0.0;
};

FigureSeries figure_series(const SpecialState& state, bool support_parity_only);

/// Bath probabilities and phases of the maximal-eigenvalue (first) and
/// minimal-eigenvalue (second) eigenvectors of B_eff.
std::pair<FigureSeries, FigureSeries> figure_data(const ModelParams& params,
                                                  bool support_parity_only = false);

}  // namespace spinboson
