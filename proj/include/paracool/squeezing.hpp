#pragma once

// Rotation-times-squeeze factorization of the propagator and the optimal
// single-cycle control law.
//
// Squeeze convention: S(z) = exp[(z a^dagger^2 - z^* a^2) / 2] with
// z = r e^{i theta}, so S^dagger a S = a cosh r + a^dagger e^{i theta} sinh r.
// A propagator R(varphi) S(z) has alpha = e^{-i varphi} cosh r and
// beta = e^{-i varphi} e^{i theta} sinh r.

#include "paracool/core.hpp"
#include "paracool/dynamics.hpp"
#include "paracool/ode.hpp"

namespace paracool {

/// Coefficients of the ordered exponential ansatz; all zero at t = 0.
struct JCoeffs {
    double J0 = 0.0;
    double Jp = 0.0;
    double Jm = 0.0;
};

/// Dense solution of the J-coefficient ODEs on [0, t_end].
class JTrajectory {
  public:
    JTrajectory(DenseSolution<2> j0p, DenseSolution<1> jm) : j0p_(std::move(j0p)), jm_(std::move(jm)) {}

    JCoeffs at(double t) const;
    double t_end() const { return j0p_.t_end(); }

  private:
    DenseSolution<2> j0p_;
    DenseSolution<1> jm_;
};

/// Integrates J0' = 1 + 2f[1 - sin(2 J0) tanh(4 J+)], J+' = f cos(2 J0), then
/// J-' = f sin(2 J0) / cosh(4 J+) on the (J0, J+) dense output.
JTrajectory solve_j_odes(const DriveParams &drive, double t_end, const SolverSettings &settings = {});

/// J-coefficients from the Bogoliubov pair, with J0 taken on the branch
/// nearest `j0_reference`.
JCoeffs j_from_bogoliubov(const BogoliubovPair &bog, double j0_reference);

/// J-coefficients at time t from a numeric P, Q solution. J0 is unwrapped
/// continuously by marching from t = 0 in steps of at most 0.25.
JCoeffs j_from_pq(const PQSolution &pq, double t);

/// alpha = e^{-i J0}(c+ c- - i s+ s-), beta = e^{-i J0}(c+ s- - i s+ c-),
/// with c+- = cosh(2 J+-), s+- = sinh(2 J+-).
BogoliubovPair bogoliubov_from_j(const JCoeffs &j);

struct SqueezeDecomp {
    double r_sq = 0.0;
    double theta_sq = 0.0;
    double varphi = 0.0;
};

/// Factorizes a Bogoliubov pair as R(varphi) S(r_sq e^{i theta_sq}).
/// r_sq uses tanh^2 r = 1 - 4 / (2 + P^2 + Q^2 + P'^2 + Q'^2).
SqueezeDecomp decompose(const BogoliubovPair &bog);
SqueezeDecomp decompose(const PQSample &pq);
SqueezeDecomp decompose(const JCoeffs &j);

/// Rebuilds (alpha, beta) from a decomposition.
BogoliubovPair reconstruct(const SqueezeDecomp &d);

/// r_sq ~ lambda t.
double rsq_linear(double t, const DriveParams &drive);

/// Quanta of a coherent state after squeezing by r_sq with phase `theta_sq`:
/// r^2 cosh^2 r_sq - 2 r^2 cos(2 phi - theta_sq) cosh r_sq sinh r_sq + (r^2 + 1) sinh^2 r_sq.
///
/// Here `theta_sq` is the phase of zeta in S(zeta) = exp[(zeta^* a^2 - zeta a^dagger^2) / 2],
/// i.e. zeta = -z relative to the convention above. A decomposition phase theta
/// enters as theta + pi.
double quanta_after_squeeze(const CoherentState &xi, double r_sq, double theta_sq);

/// r_op = ln(1 + 4 r^2) / 4.
double optimal_rsq(double r);

/// t_op = optimal_rsq(r) / lambda; requires lambda > 0.
double optimal_time(double r, const DriveParams &drive);

/// n_min = (sqrt(1 + 4 r^2) - 1) / 2.
double min_quanta(double r);

}  // namespace paracool
