#pragma once

// Domain types and exact Gaussian-level occupation formulas.
//
// Units: hbar = m = omega_0 = 1 throughout. Times are omega_0 * t, the drive
// strength `lambda` is lambda / omega_0, and the dimensionless quadratures obey
// a = (x + i p) / sqrt(2) so that the vacuum has s_xx = s_pp = 1/2.

#include <complex>
#include <numbers>

namespace paracool {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle to [0, 2 pi).
double reduce_angle(double angle);

/// Shortest distance between two angles on the circle, in [0, pi].
double circular_distance(double a, double b);

/// True when two angles agree on the circle within `tol` (default 1e-12).
bool angles_equal(double a, double b, double tol = 1e-12);

/// Parametric drive f(t) = lambda cos(omega_p t + phi_p).
///
/// lambda = 0 is admitted and describes the free oscillator; operations that
/// need a nonzero drive (optimal_time, the horizon guard) check for it.
class DriveParams {
  public:
    explicit DriveParams(double lambda, double omega_p = 2.0, double phi_p = kPi / 2);

    double lambda() const { return lambda_; }
    double omega_p() const { return omega_p_; }
    double phi_p() const { return phi_p_; }

    double f(double t) const;

    /// Same drive with a different phase offset.
    DriveParams with_phase(double phi_p) const { return DriveParams(lambda_, omega_p_, phi_p); }

    bool is_parametric() const;

  private:
    double lambda_;
    double omega_p_;
    double phi_p_;
};

/// Bogoliubov coefficients of a(t) = alpha a + beta a^dagger.
struct BogoliubovPair {
    cplx alpha{1.0, 0.0};
    cplx beta{0.0, 0.0};

    /// |alpha|^2 - |beta|^2 - 1; zero for an exact symplectic map.
    double defect() const { return std::norm(alpha) - std::norm(beta) - 1.0; }
};

/// Coherent state |r e^{i phi}>.
class CoherentState {
  public:
    CoherentState() = default;
    CoherentState(double r, double phi);
    static CoherentState from_complex(cplx xi);

    double r() const { return r_; }
    double phi() const { return phi_; }
    cplx value() const { return std::polar(r_, phi_); }
    double mean_quanta() const { return r_ * r_; }

  private:
    double r_ = 0.0;
    double phi_ = 0.0;
};

struct ThermalParams {
    double nbar = 0.0;
};

/// First and second moments of a single-mode Gaussian state in dimensionless quadratures.
struct GaussianState {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double s_xx = 0.5;
    double s_xp = 0.0;
    double s_pp = 0.5;

    static GaussianState vacuum() { return {}; }
    static GaussianState coherent(const CoherentState &xi);
    static GaussianState thermal(double nbar);

    /// <a> = (<x> + i <p>) / sqrt 2.
    cplx mean_a() const;
    /// <a^2>, including the displacement contribution.
    cplx second_moment_a2() const;
    /// s_xx s_pp - s_xp^2; at least 1/4 for a physical state.
    double covariance_det() const { return s_xx * s_pp - s_xp * s_xp; }
    /// Positive variances and Heisenberg bound within `tol`.
    bool is_physical(double tol = 1e-12) const;
};

// ---------------------------------------------------------------------------
// Occupation formulas.

/// <n(t)> = |alpha|^2 n0 + |beta|^2 (n0 + 1) + 2 Re(alpha conj(beta) <a^2>).
/// `a2` is the initial <a^2>; <a^dagger^2> is its conjugate.
double occupation_general(const BogoliubovPair &bog, double n0, cplx a2);

/// Occupation after evolving the coherent state `xi` through `bog`.
double occupation_coherent_exact(const BogoliubovPair &bog, const CoherentState &xi);

/// First-order-in-lambda occupation for a coherent state of unit amplitude at
/// parametric resonance: 1 + lambda [cos phi_p - cos(2t + phi_p) - 2t sin(2 phi + phi_p)].
/// Callers multiply by r^2.
double occupation_coherent_firstorder(double t, const DriveParams &drive, double phi);

/// Thermal input: nbar + (1 + 2 nbar) |beta|^2. Never below nbar.
double occupation_thermal(const BogoliubovPair &bog, const ThermalParams &th);

/// Drive phase that cools a coherent state of phase `phi`: phi_p = pi/2 - 2 phi (mod 2 pi).
double cooling_phase(double phi);

/// Mean quanta of a Gaussian state: (s_xx + s_pp + x^2 + p^2 - 1) / 2.
double occupation_from_moments(const GaussianState &g);

/// Phase-space rotation exp(-i angle a^dagger a): <a> -> e^{-i angle} <a>.
GaussianState rotate_state(const GaussianState &g, double angle);
CoherentState rotate_state(const CoherentState &xi, double angle);

/// Fractional trap-stiffness modulation G = 4 lambda.
double modulation_depth(const DriveParams &drive);

/// Evolves a Gaussian state through the symplectic map encoded by `bog`.
GaussianState apply_bogoliubov(const GaussianState &g, const BogoliubovPair &bog);

}  // namespace paracool
