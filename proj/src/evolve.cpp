#include "spinboson/evolve.hpp"

#include <cmath>
#include <sstream>

#include "spinboson/errors.hpp"

namespace spinboson {

void normalize_column_phases(ComplexMatrix& vectors)
{
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        auto col = vectors.col(j);
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < col.size(); ++i) {
            const double mag = std::abs(col(i));
            if (mag > best) {
                best = mag;
                pivot = i;
            }
        }
        if (best <= 0.0) continue;
        const Complex rotation = std::conj(col(pivot)) / best;
        col *= rotation;
        col(pivot) = Complex(best, 0.0);
    }
}

SpectralDecomposition hermitian_eigendecomposition(const HermitianOperator& m)
{
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix(), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        // Eigen's implicit QR gives up after 30 sweeps per eigenvalue.
        const long budget = 30L * static_cast<long>(m.dim());
        std::ostringstream os;
        os << "hermitian_eigendecomposition: no convergence for dimension " << m.dim()
           << " within " << budget << " QR iterations";
        throw ConvergenceFailure(os.str(), budget);
    }
    SpectralDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
    normalize_column_phases(out.eigenvectors);
    return out;
}

Propagator::Propagator(const HermitianOperator& hamiltonian)
    : spectrum_(hermitian_eigendecomposition(hamiltonian))
{
}

ComplexVector Propagator::phases(double t) const
{
    const double scaled = t / ModelParams::hbar;
    ComplexVector p(dim());
    for (Eigen::Index k = 0; k < dim(); ++k) p(k) = std::polar(1.0, -spectrum_.eigenvalues(k) * scaled);
    return p;
}

ComplexMatrix Propagator::at(double t) const
{
    if (!std::isfinite(t)) throw InvalidParameter("propagator: time must be finite");
    if (t == 0.0) return ComplexMatrix::Identity(dim(), dim());
    const auto& v = spectrum_.eigenvectors;
    return v * phases(t).asDiagonal() * v.adjoint();
}

ComplexMatrix Propagator::columns(double t, Eigen::Index first, Eigen::Index count) const
{
    if (!std::isfinite(t)) throw InvalidParameter("propagator: time must be finite");
    if (first < 0 || count < 0 || first + count > dim())
        throw InvalidParameter("propagator: column range outside the operator");
    if (t == 0.0) return ComplexMatrix::Identity(dim(), dim()).middleCols(first, count);
    const auto& v = spectrum_.eigenvectors;
    return v * phases(t).asDiagonal() * v.middleRows(first, count).adjoint();
}

ComplexVector Propagator::apply(double t, const ComplexVector& psi) const
{
    if (!std::isfinite(t)) throw InvalidParameter("propagator: time must be finite");
    if (psi.size() != dim()) throw InvalidParameter("propagator: state dimension mismatch");
    if (t == 0.0) return psi;
    const auto& v = spectrum_.eigenvectors;
    return v * phases(t).cwiseProduct(v.adjoint() * psi);
}

ComplexMatrix propagator(const HermitianOperator& hamiltonian, double t)
{
    return Propagator(hamiltonian).at(t);
}

StateVector StateVector::fock(std::size_t cutoff, std::size_t level)
{
    if (level >= cutoff) throw InvalidParameter("fock level outside the truncated space");
    ComplexVector amps = ComplexVector::Zero(static_cast<Eigen::Index>(cutoff));
    amps(static_cast<Eigen::Index>(level)) = 1.0;
    return StateVector(std::move(amps));
}

StateVector StateVector::spin_up_product(const StateVector& bath)
{
    const Eigen::Index n = bath.size();
    ComplexVector amps = ComplexVector::Zero(2 * n);
    amps.head(n) = bath.amplitudes();
    return StateVector(std::move(amps));
}

StateVector evolve_state(const ComplexMatrix& u, const StateVector& psi)
{
    if (u.rows() != u.cols() || u.cols() != psi.size()) {
        std::ostringstream os;
        os << "evolve_state: operator is " << u.rows() << "x" << u.cols() << " but state has length "
           << psi.size();
        throw InvalidParameter(os.str());
    }
    if (!psi.is_normalized()) throw InvalidParameter("evolve_state: input state is not normalized");
    return StateVector(u * psi.amplitudes());
}

SurvivalCurve survival_probability(const Propagator& u, const StateVector& bath,
                                   std::span<const double> times)
{
    const Eigen::Index n = u.dim() / 2;
    if (bath.size() != n) {
        std::ostringstream os;
        os << "survival_probability: bath state has length " << bath.size() << ", expected " << n;
        throw InvalidParameter(os.str());
    }
    if (!bath.is_normalized()) {
        std::ostringstream os;
        os << "survival_probability: bath state has norm " << bath.norm() << ", expected 1";
        throw InvalidParameter(os.str());
    }

    const ComplexVector psi0 = StateVector::spin_up_product(bath).amplitudes();
    SurvivalCurve curve;
    curve.times.assign(times.begin(), times.end());
    curve.pr_up.reserve(times.size());
    for (double t : times) {
        const ComplexVector psi = u.apply(t, psi0);
        curve.pr_up.push_back(psi.head(n).squaredNorm());
    }
    return curve;
}

SurvivalCurve survival_probability(const ModelParams& params, const StateVector& bath,
                                   std::span<const double> times)
{
    return survival_probability(Propagator(build_hamiltonian(params)), bath, times);
}

}  // namespace spinboson
