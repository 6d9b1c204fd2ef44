#pragma once

// Brute-force truncated Fock-space propagation used as ground truth for the
// Gaussian pipeline.

#include <vector>

#include "paracool/core.hpp"

namespace paracool {

/// Amplitudes c_0..c_{N-1} of a truncated Fock-space state.
struct FockVector {
    std::vector<cplx> c;

    std::size_t size() const { return c.size(); }
    double norm2() const;
    /// sum n |c_n|^2
    double occupation() const;
    /// |c_{N-1}|^2 + |c_{N-2}|^2
    double tail_mass() const;
    /// <chi|this>
    cplx overlap(const FockVector &chi) const;
};

struct OracleSettings {
    std::size_t N = 200;
    double tail_tol = 1e-9;
    /// Time steps per unit time scale as steps_per_period * N / (2 pi), at least.
    double steps_per_period = 40.0;
};

/// Coherent state |xi> truncated to N levels; throws TruncationError if the
/// tail exceeds `tail_tol`.
FockVector coherent_fock(const CoherentState &xi, std::size_t N, double tail_tol = 1e-12);

/// Fock state |n>.
FockVector number_fock(std::size_t n, std::size_t N);

/// Integrates i dc/dt = H(t) c with H = a^dagger a + 1/2 + f(t)(a + a^dagger)^2 by
/// fixed-step RK4. No renormalization; throws TruncationError with the time at
/// which the tail exceeds the tolerance.
FockVector evolve_fock(const FockVector &v, const DriveParams &drive, double t_end, const OracleSettings &s = {});

/// Applies S(z) = exp[(z a^dagger^2 - z^* a^2) / 2] by RK4 substeps of the generator.
FockVector squeeze_fock(const FockVector &v, cplx z, double tail_tol = 1e-9);

}  // namespace paracool
