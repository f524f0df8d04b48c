#include "spinboson/linalg.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spinboson/errors.hpp"

namespace spinboson {

double max_abs(const ComplexMatrix& m)
{
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

double wrap_phase(double phase) noexcept
{
    constexpr double pi = std::numbers::pi;
    return phase <= -pi ? phase + 2.0 * pi : phase;
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m))
{
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
        std::ostringstream os;
        os << "HermitianOperator: expected a non-empty square matrix, got " << m_.rows() << "x"
           << m_.cols();
        throw ContractViolation(os.str());
    }
    if (!m_.allFinite()) throw ContractViolation("HermitianOperator: non-finite entry");

    const double scale = max_abs(m_);
    const double asym = max_abs(m_ - m_.adjoint());
    if (asym > kRelativeTolerance * scale) {
        std::ostringstream os;
        os << "HermitianOperator: max|M - M^dagger| = " << asym << " exceeds "
           << kRelativeTolerance << " * max|M| = " << kRelativeTolerance * scale;
        throw ContractViolation(os.str());
    }
}

}  // namespace spinboson
