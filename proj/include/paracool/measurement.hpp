#pragma once

// Heterodyne sampling, the squeezed-coherent outcome distribution, and the
// homodyne (quadrature-eigenstate) variant.

#include <array>
#include <complex>

#include "paracool/core.hpp"
#include "paracool/rng.hpp"

namespace paracool {

/// Husimi Q of a Gaussian state as a bivariate normal over (Re xi, Im xi).
struct HusimiParams {
    std::array<double, 2> mu{0.0, 0.0};
    std::array<std::array<double, 2>, 2> sigma{{{0.5, 0.0}, {0.0, 0.5}}};

    /// Symmetric with both eigenvalues >= 1/2 - tol.
    bool is_valid(double tol = 1e-12) const;
};

HusimiParams husimi_params(const GaussianState &g);

/// Draws one heterodyne outcome. The post-measurement state is the coherent state |xi>.
CoherentState sample_heterodyne(const GaussianState &g, RngStream &rng);

/// (1/pi) |<xi1| S(-r_sq) |xi0>|^2 for real xi0 >= 0: the outcome density after
/// squeezing a coherent state along its own axis by r_sq (the cooling squeeze).
double squeezed_coherent_prob(cplx xi1, double xi0, double r_sq);

/// Largest Fock index homodyne_fock_overlap accepts.
inline constexpr int kMaxHermiteIndex = 100000;

/// <x_theta|n> = pi^{-1/4} (2^n n!)^{-1/2} e^{-x^2/2} H_n(x) e^{-i n theta}.
/// Evaluated through the normalized Hermite-function recurrence.
cplx homodyne_fock_overlap(double x, double theta, int n);

/// Default Abel damping of the Fock amplitudes: sqrt(tanh 1).
double default_homodyne_damping();

/// Regularized Hermite-series sums for a quadrature eigenstate.
struct HomodyneMoments {
    /// <a^dagger a>
    double n = 0.0;
    /// x-bar, with <a^dagger^2> = e^{-2 i theta} x-bar.
    double xbar = 0.0;
    /// Successive partial sums agreed within tolerance at n_max.
    bool converged = false;
};

/// Sums the series up to n_max with amplitudes damped by damping^n and
/// renormalized. damping = 1 gives the raw partial sums, which do not
/// converge; the flag reports that.
HomodyneMoments homodyne_moments(double x, int n_max, double damping = default_homodyne_damping(),
                                 double tol = 1e-10);

/// x-bar alone; see homodyne_moments.
HomodyneMoments xbar_theta(double x, int n_max = 400, double damping = default_homodyne_damping());

/// First-order occupation of a quadrature eigenstate:
/// N + lambda { N [cos phi_p - cos(2t + phi_p)] - 2 t xbar sin(2 theta + phi_p) }.
/// Throws ConvergenceError if the series did not converge.
double occupation_homodyne_firstorder(double x, double theta, double t, const DriveParams &drive, int n_max = 400,
                                      double damping = default_homodyne_damping());

/// 3 pi/2 - 2 theta when xbar < 0, else pi/2 - 2 theta (reduced).
double homodyne_cooling_phase(double x, double theta, int n_max = 400,
                              double damping = default_homodyne_damping());

}  // namespace paracool
