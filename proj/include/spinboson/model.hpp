#pragma once

#include <cstddef>

#include "spinboson/linalg.hpp"

namespace spinboson {

/// Physical and numerical parameters of the single-mode spin-boson model
///
///     H = eps/2 (1 + sigma_z) + omega a^dagger a + beta sigma_x (a^dagger + a)
///
/// evaluated in a Fock space truncated to `cutoff` levels (occupations
/// 0..cutoff-1). Units have hbar = 1.
struct ModelParams {
    static constexpr double hbar = 1.0;

    double epsilon = 0.5;
    double omega = 0.1;
    double beta = 0.6;
    double time = 0.15;
    std::size_t cutoff = 250;
    double theta_hi = 0.99;  // eigenvalue >= theta_hi: non-decay
    double theta_lo = 0.01;  // eigenvalue <= theta_lo: decay

    /// Throws InvalidParameter when any invariant is broken.
    void validate() const;

    /// omega == 0 is accepted but leaves the bath without dynamics of its own.
    bool is_degenerate() const noexcept { return omega == 0.0; }

    bool operator==(const ModelParams&) const = default;
};

enum class Spin : int { up = 0, down = 1 };

/// Position in the spin (x) boson product basis. Ordering is spin-major,
/// k = spin * N + fock, so the up sector is the leading N x N block.
struct BasisIndex {
    Spin spin = Spin::up;
    std::size_t fock = 0;

    std::size_t flat(std::size_t cutoff) const;
    static BasisIndex from_flat(std::size_t k, std::size_t cutoff);

    bool operator==(const BasisIndex&) const = default;
};

struct LadderOperators {
    ComplexMatrix annihilation;  // a[n-1, n] = sqrt(n)
    ComplexMatrix creation;      // conjugate transpose of a; a^dagger|N-1> = 0
};

LadderOperators ladder_operators(std::size_t cutoff);

/// a^dagger a, diagonal with entries 0..N-1.
ComplexMatrix number_operator(std::size_t cutoff);

HermitianOperator build_hamiltonian(const ModelParams& params);

/// Pi = sigma_z (x) (-1)^n, the conserved parity of the model.
HermitianOperator parity_operator(std::size_t cutoff);

}  // namespace spinboson
