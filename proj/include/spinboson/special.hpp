#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "spinboson/evolve.hpp"
#include "spinboson/linalg.hpp"
#include "spinboson/model.hpp"

namespace spinboson {

enum class FockParity { even, odd };
enum class StateClass { non_decay, decay, intermediate };

std::string_view to_string(FockParity p) noexcept;
std::string_view to_string(StateClass c) noexcept;

/// Classification thresholds; 0 <= lo < hi <= 1.
struct Thresholds {
    double hi = 0.99;
    double lo = 0.01;

    static Thresholds from(const ModelParams& p) { return {p.theta_hi, p.theta_lo}; }
    void validate() const;
    StateClass classify(double eigenvalue) const noexcept;
};

/// P = (psi_up psi_up^dagger) (x) 1_bath in the spin-major basis.
HermitianOperator build_projector_up(std::size_t cutoff);

/// Spectrum of B_eff resolved inside the two bath-parity blocks.
/// Eigenvalues ascending; on exact ties the even block comes first.
struct ParitySpectrum {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;  // N x N, each column supported on one parity
    std::vector<FockParity> parities;
};

/// B_eff(t) = U_uu^dagger U_uu, the up-sector restriction of B = A^dagger A
/// with A = P U P. <bath|B_eff|bath> is the survival probability of up (x) bath.
///
/// Built only through build_b_effective, which checks positivity, the [0, 1]
/// spectral bound of a compressed unitary and the bath-parity block structure.
class BEffective {
public:
    static constexpr double kTolerance = 1e-10;

    const HermitianOperator& matrix() const noexcept { return matrix_; }
    double time() const noexcept { return time_; }
    std::size_t cutoff() const noexcept { return static_cast<std::size_t>(matrix_.dim()); }

    /// Columns of U(t) acting on the up sector (2N x N): evolved up (x) |n>.
    const ComplexMatrix& evolved_up_columns() const noexcept { return evolved_up_; }
    const ParitySpectrum& spectrum() const noexcept { return spectrum_; }

    /// Largest magnitude of a B_eff entry coupling even and odd Fock levels.
    double cross_parity_magnitude() const;

private:
    friend BEffective build_b_effective(const Propagator&, double);

    BEffective(HermitianOperator m, double t, ComplexMatrix evolved_up, ParitySpectrum s)
        : matrix_(std::move(m)), time_(t), evolved_up_(std::move(evolved_up)), spectrum_(std::move(s)) {}

    HermitianOperator matrix_;
    double time_;
    ComplexMatrix evolved_up_;
    ParitySpectrum spectrum_;
};

BEffective build_b_effective(const ModelParams& params);
/// `u` must be the propagator of a spin-boson Hamiltonian (dimension 2N).
BEffective build_b_effective(const Propagator& u, double t);

struct SpectrumReport {
    double time = 0.0;
    std::vector<double> eigenvalues;  // ascending
    std::vector<FockParity> parities;
    std::size_t count_non_decay = 0;
    std::size_t count_decay = 0;
    std::size_t count_intermediate = 0;
    Thresholds thresholds;
};

SpectrumReport classify_spectrum(const BEffective& b, double theta_hi, double theta_lo);

struct SpecialState {
    Eigen::Index index = 0;  // position in the ascending B_eff spectrum
    double eigenvalue = 0.0;
    ComplexVector bath_amplitudes;
    std::vector<double> fock_probabilities;
    FockParity parity = FockParity::even;
    StateClass state_class = StateClass::intermediate;
    double final_phase = 0.0;
};

/// Builds the special state for eigenvector `index` of B_eff.
/// final_phase is the argument of the largest evolved amplitude within the
/// dominant spin sector (up for non-decay, down for decay) at time t.
SpecialState special_state_at(const BEffective& b, Eigen::Index index, const Thresholds& th);

/// All eigenvectors in class `wanted`, in ascending eigenvalue order.
std::vector<SpecialState> extract_special_states(const BEffective& b, StateClass wanted,
                                                 const Thresholds& th);

/// Leakage of the best non-decay state: r_prob = 1 - lambda_max, r_amp = sqrt(r_prob).
struct Residual {
    double r_prob = 0.0;
    double r_amp = 0.0;
};

Residual residual(const BEffective& b);

}  // namespace spinboson
