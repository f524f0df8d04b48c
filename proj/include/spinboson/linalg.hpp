#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace spinboson {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest entrywise magnitude, max |M_ij|. Zero for an empty matrix.
double max_abs(const ComplexMatrix& m);

/// Maps an angle from std::arg, which may be -pi, onto (-pi, pi].
double wrap_phase(double phase) noexcept;

/// A square complex matrix that was checked to be Hermitian when constructed:
/// max|M - M^dagger| <= 1e-12 * max|M|, all entries finite.
///
/// The stored matrix is kept exactly as given; consumers that need exact
/// symmetry (the eigensolver) read only one triangle.
class HermitianOperator {
public:
    static constexpr double kRelativeTolerance = 1e-12;

    explicit HermitianOperator(ComplexMatrix m);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

private:
    ComplexMatrix m_;
};

}  // namespace spinboson
