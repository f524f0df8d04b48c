#include "spinboson/special.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spinboson/errors.hpp"

namespace spinboson {

std::string_view to_string(FockParity p) noexcept
{
    return p == FockParity::even ? "even" : "odd";
}

std::string_view to_string(StateClass c) noexcept
{
    switch (c) {
    case StateClass::non_decay: return "non-decay";
    case StateClass::decay: return "decay";
    case StateClass::intermediate: return "intermediate";
    }
    return "intermediate";
}

void Thresholds::validate() const
{
    if (!(lo >= 0.0 && hi <= 1.0 && lo < hi)) {
        std::ostringstream os;
        os << "thresholds must satisfy 0 <= lo < hi <= 1, got lo=" << lo << " hi=" << hi;
        throw InvalidParameter(os.str());
    }
}

StateClass Thresholds::classify(double eigenvalue) const noexcept
{
    if (eigenvalue >= hi) return StateClass::non_decay;
    if (eigenvalue <= lo) return StateClass::decay;
    return StateClass::intermediate;
}

HermitianOperator build_projector_up(std::size_t cutoff)
{
    if (cutoff < 2) throw InvalidParameter("cutoff must be >= 2");
    const auto n = static_cast<Eigen::Index>(cutoff);
    ComplexMatrix p = ComplexMatrix::Zero(2 * n, 2 * n);
    p.topLeftCorner(n, n).diagonal().setOnes();
    return HermitianOperator(std::move(p));
}

namespace {

std::vector<Eigen::Index> parity_indices(Eigen::Index n, FockParity parity)
{
    std::vector<Eigen::Index> idx;
    for (Eigen::Index k = parity == FockParity::even ? 0 : 1; k < n; k += 2) idx.push_back(k);
    return idx;
}

ComplexMatrix submatrix(const ComplexMatrix& m, const std::vector<Eigen::Index>& idx)
{
    const auto k = static_cast<Eigen::Index>(idx.size());
    ComplexMatrix out(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) out(i, j) = m(idx[i], idx[j]);
    return out;
}

// Diagonalizes the even and odd Fock blocks separately, so every eigenvector
// has definite parity even where the two blocks share an eigenvalue.
ParitySpectrum parity_resolved_spectrum(const ComplexMatrix& b)
{
    const Eigen::Index n = b.rows();
    const auto even = parity_indices(n, FockParity::even);
    const auto odd = parity_indices(n, FockParity::odd);
    const auto even_spec = hermitian_eigendecomposition(HermitianOperator(submatrix(b, even)));
    const auto odd_spec = hermitian_eigendecomposition(HermitianOperator(submatrix(b, odd)));

    ParitySpectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix::Zero(n, n);
    out.parities.reserve(static_cast<std::size_t>(n));

    const auto place = [&](Eigen::Index col, const SpectralDecomposition& s, Eigen::Index k,
                           const std::vector<Eigen::Index>& idx, FockParity parity) {
        out.eigenvalues(col) = s.eigenvalues(k);
        for (std::size_t r = 0; r < idx.size(); ++r)
            out.eigenvectors(idx[r], col) = s.eigenvectors(static_cast<Eigen::Index>(r), k);
        out.parities.push_back(parity);
    };

    Eigen::Index ie = 0, io = 0;
    const auto ne = static_cast<Eigen::Index>(even.size());
    const auto no = static_cast<Eigen::Index>(odd.size());
    for (Eigen::Index col = 0; col < n; ++col) {
        const bool take_even =
            io >= no || (ie < ne && even_spec.eigenvalues(ie) <= odd_spec.eigenvalues(io));
        if (take_even)
            place(col, even_spec, ie++, even, FockParity::even);
        else
            place(col, odd_spec, io++, odd, FockParity::odd);
    }
    return out;
}

double cross_parity(const ComplexMatrix& b)
{
    double worst = 0.0;
    for (Eigen::Index i = 0; i < b.rows(); ++i)
        for (Eigen::Index j = (i % 2 == 0) ? 1 : 0; j < b.cols(); j += 2)
            worst = std::max(worst, std::abs(b(i, j)));
    return worst;
}

}  // namespace

double BEffective::cross_parity_magnitude() const
{
    return cross_parity(matrix_.matrix());
}

BEffective build_b_effective(const Propagator& u, double t)
{
    if (u.dim() < 4 || u.dim() % 2 != 0)
        throw InvalidParameter("build_b_effective: propagator must act on a 2N-dimensional space, N >= 2");
    const Eigen::Index n = u.dim() / 2;

    ComplexMatrix up_columns = u.columns(t, 0, n);
    const auto u_uu = up_columns.topRows(n);
    ComplexMatrix b = u_uu.adjoint() * u_uu;
    b = (0.5 * (b + b.adjoint())).eval();

    const double cross = cross_parity(b);
    if (cross > BEffective::kTolerance) {
        std::ostringstream os;
        os << "build_b_effective: cross-parity coupling " << cross << " exceeds "
           << BEffective::kTolerance << "; the Hamiltonian does not conserve parity";
        throw ContractViolation(os.str());
    }

    ParitySpectrum spectrum = parity_resolved_spectrum(b);
    const double lo = spectrum.eigenvalues(0);
    const double hi = spectrum.eigenvalues(n - 1);
    if (lo < -BEffective::kTolerance || hi > 1.0 + BEffective::kTolerance) {
        std::ostringstream os;
        os << "build_b_effective: spectrum [" << lo << ", " << hi
           << "] leaves [0, 1]; the propagator is not unitary";
        throw ContractViolation(os.str());
    }
    return BEffective(HermitianOperator(std::move(b)), t, std::move(up_columns), std::move(spectrum));
}

BEffective build_b_effective(const ModelParams& params)
{
    return build_b_effective(Propagator(build_hamiltonian(params)), params.time);
}

SpectrumReport classify_spectrum(const BEffective& b, double theta_hi, double theta_lo)
{
    const Thresholds th{theta_hi, theta_lo};
    th.validate();
    const auto& s = b.spectrum();

    SpectrumReport report;
    report.time = b.time();
    report.thresholds = th;
    report.eigenvalues.assign(s.eigenvalues.data(), s.eigenvalues.data() + s.eigenvalues.size());
    report.parities = s.parities;
    for (double lambda : report.eigenvalues) {
        switch (th.classify(lambda)) {
        case StateClass::non_decay: ++report.count_non_decay; break;
        case StateClass::decay: ++report.count_decay; break;
        case StateClass::intermediate: ++report.count_intermediate; break;
        }
    }
    return report;
}

SpecialState special_state_at(const BEffective& b, Eigen::Index index, const Thresholds& th)
{
    th.validate();
    const auto& s = b.spectrum();
    const Eigen::Index n = s.eigenvalues.size();
    if (index < 0 || index >= n) throw InvalidParameter("special_state_at: index out of range");

    SpecialState state;
    state.index = index;
    state.eigenvalue = s.eigenvalues(index);
    state.bath_amplitudes = s.eigenvectors.col(index);
    state.fock_probabilities.resize(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k)
        state.fock_probabilities[static_cast<std::size_t>(k)] = std::norm(state.bath_amplitudes(k));
    state.parity = s.parities[static_cast<std::size_t>(index)];
    state.state_class = th.classify(state.eigenvalue);

    const ComplexVector evolved = b.evolved_up_columns() * state.bath_amplitudes;
    bool use_up = true;
    if (state.state_class == StateClass::decay)
        use_up = false;
    else if (state.state_class == StateClass::intermediate)
        use_up = evolved.head(n).squaredNorm() >= evolved.tail(n).squaredNorm();

    const auto sector = use_up ? evolved.head(n) : evolved.tail(n);
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double mag = std::abs(sector(k));
        if (mag > best) {
            best = mag;
            pivot = k;
        }
    }
    state.final_phase = wrap_phase(std::arg(sector(pivot)));
    return state;
}

std::vector<SpecialState> extract_special_states(const BEffective& b, StateClass wanted,
                                                 const Thresholds& th)
{
    th.validate();
    std::vector<SpecialState> out;
    const auto& lambdas = b.spectrum().eigenvalues;
    for (Eigen::Index k = 0; k < lambdas.size(); ++k)
        if (th.classify(lambdas(k)) == wanted) out.push_back(special_state_at(b, k, th));
    return out;
}

Residual residual(const BEffective& b)
{
    const auto& s = b.spectrum();
    const Eigen::Index n = s.eigenvalues.size();
    // Down-sector weight of the evolved top state equals 1 - lambda_max by
    // unitarity, without the cancellation in 1 - lambda.
    const ComplexVector leak = b.evolved_up_columns().bottomRows(n) * s.eigenvectors.col(n - 1);
    const double r_prob = leak.squaredNorm();
    return {r_prob, std::sqrt(r_prob)};
}

}  // namespace spinboson
