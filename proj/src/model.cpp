#include "spinboson/model.hpp"

#include <cmath>
#include <sstream>

#include "spinboson/errors.hpp"

namespace spinboson {

namespace {

void require_cutoff(std::size_t cutoff)
{
    if (cutoff < 2) {
        std::ostringstream os;
        os << "cutoff must be >= 2, got " << cutoff;
        throw InvalidParameter(os.str());
    }
}

void require_finite(double v, const char* name)
{
    if (!std::isfinite(v)) throw InvalidParameter(std::string(name) + " must be finite");
}

}  // namespace

void ModelParams::validate() const
{
    require_finite(epsilon, "epsilon");
    require_finite(omega, "omega");
    require_finite(beta, "beta");
    require_finite(time, "time");
    require_cutoff(cutoff);
    if (omega < 0.0) throw InvalidParameter("omega must be >= 0");
    if (!(theta_hi > 0.5 && theta_hi < 1.0))
        throw InvalidParameter("theta_hi must lie in (0.5, 1)");
    if (!(theta_lo > 0.0 && theta_lo < 0.5))
        throw InvalidParameter("theta_lo must lie in (0, 0.5)");
}

std::size_t BasisIndex::flat(std::size_t cutoff) const
{
    if (fock >= cutoff) throw InvalidParameter("fock level outside the truncated space");
    return static_cast<std::size_t>(spin) * cutoff + fock;
}

BasisIndex BasisIndex::from_flat(std::size_t k, std::size_t cutoff)
{
    require_cutoff(cutoff);
    if (k >= 2 * cutoff) throw InvalidParameter("basis index outside [0, 2N)");
    return {k < cutoff ? Spin::up : Spin::down, k % cutoff};
}

LadderOperators ladder_operators(std::size_t cutoff)
{
    require_cutoff(cutoff);
    const auto n = static_cast<Eigen::Index>(cutoff);
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    ComplexMatrix a_dag = a.adjoint();
    return {std::move(a), std::move(a_dag)};
}

ComplexMatrix number_operator(std::size_t cutoff)
{
    require_cutoff(cutoff);
    const auto n = static_cast<Eigen::Index>(cutoff);
    ComplexMatrix num = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) num(k, k) = static_cast<double>(k);
    return num;
}

HermitianOperator build_hamiltonian(const ModelParams& params)
{
    params.validate();
    const auto n = static_cast<Eigen::Index>(params.cutoff);
    const auto ladder = ladder_operators(params.cutoff);
    const ComplexMatrix num = number_operator(params.cutoff);
    const ComplexMatrix x = ladder.creation + ladder.annihilation;

    // eps/2 (1 + sigma_z) is eps on the up sector and 0 on the down sector.
    ComplexMatrix h = ComplexMatrix::Zero(2 * n, 2 * n);
    h.topLeftCorner(n, n) = params.omega * num;
    h.topLeftCorner(n, n).diagonal().array() += params.epsilon;
    h.bottomRightCorner(n, n) = params.omega * num;
    h.topRightCorner(n, n) = params.beta * x;
    h.bottomLeftCorner(n, n) = params.beta * x;
    return HermitianOperator(std::move(h));
}

HermitianOperator parity_operator(std::size_t cutoff)
{
    require_cutoff(cutoff);
    const auto n = static_cast<Eigen::Index>(cutoff);
    ComplexMatrix pi = ComplexMatrix::Zero(2 * n, 2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double bath = (k % 2 == 0) ? 1.0 : -1.0;
        pi(k, k) = bath;
        pi(n + k, n + k) = -bath;
    }
    return HermitianOperator(std::move(pi));
}

}  // namespace spinboson
