#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spinboson/linalg.hpp"
#include "spinboson/model.hpp"

namespace spinboson {

/// Eigenpairs of a Hermitian operator: eigenvalues ascending, eigenvectors
/// as orthonormal columns in matching order.
///
/// Column phase convention: each column is scaled so that its
/// largest-magnitude entry is real and positive (lowest index wins a tie).
struct SpectralDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

SpectralDecomposition hermitian_eigendecomposition(const HermitianOperator& m);

/// Fixes the global phase of every column of `vectors` in place.
void normalize_column_phases(ComplexMatrix& vectors);

/// Exact propagator U(t) = V exp(-i Lambda t / hbar) V^dagger, built from a
/// single diagonalization of H and evaluated at any number of times.
class Propagator {
public:
    explicit Propagator(const HermitianOperator& hamiltonian);

    Eigen::Index dim() const noexcept { return spectrum_.eigenvalues.size(); }
    const SpectralDecomposition& spectrum() const noexcept { return spectrum_; }

    ComplexMatrix at(double t) const;

    /// Columns [first, first + count) of U(t).
    ComplexMatrix columns(double t, Eigen::Index first, Eigen::Index count) const;

    /// U(t) psi without forming U.
    ComplexVector apply(double t, const ComplexVector& psi) const;

private:
    ComplexVector phases(double t) const;

    SpectralDecomposition spectrum_;
};

ComplexMatrix propagator(const HermitianOperator& hamiltonian, double t);

/// Amplitudes in either the full spin (x) bath space (length 2N) or the bath
/// alone (length N).
class StateVector {
public:
    static constexpr double kNormTolerance = 1e-10;

    StateVector() = default;
    explicit StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {}

    static StateVector fock(std::size_t cutoff, std::size_t level);
    static StateVector vacuum(std::size_t cutoff) { return fock(cutoff, 0); }

    /// up (x) bath, in the spin-major full space.
    static StateVector spin_up_product(const StateVector& bath);

    const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
    Eigen::Index size() const noexcept { return amplitudes_.size(); }
    double norm() const { return amplitudes_.norm(); }
    bool is_normalized() const { return std::abs(norm() - 1.0) <= kNormTolerance; }

private:
    ComplexVector amplitudes_;
};

/// U psi. Rejects mismatched dimensions and unnormalized input.
StateVector evolve_state(const ComplexMatrix& u, const StateVector& psi);

struct SurvivalCurve {
    std::vector<double> times;
    std::vector<double> pr_up;
};

/// Pr(up)(t) = sum_n |<up,n| U(t) |up (x) bath>|^2 for every t in `times`.
SurvivalCurve survival_probability(const ModelParams& params, const StateVector& bath,
                                   std::span<const double> times);
SurvivalCurve survival_probability(const Propagator& u, const StateVector& bath,
                                   std::span<const double> times);

}  // namespace spinboson
