#pragma once

// Classical auxiliary equation y'' + (1 + 4 f(t)) y = 0 and the Bogoliubov
// coefficients built from its fundamental solutions P (P(0)=1, P'(0)=0) and
// Q (Q(0)=0, Q'(0)=1).

#include <utility>
#include <vector>

#include "paracool/core.hpp"
#include "paracool/ode.hpp"

namespace paracool {

/// Fundamental solutions and their derivatives at one instant.
struct PQSample {
    double t = 0.0;
    double P = 1.0;
    double dP = 0.0;
    double Q = 0.0;
    double dQ = 1.0;

    double wronskian() const { return P * dQ - Q * dP; }
};

/// Dense numeric solution of the auxiliary equation on [0, t_end].
class PQSolution {
  public:
    PQSolution(DenseSolution<4> dense, DriveParams drive);

    /// Dense-output evaluation; throws InvalidParameter outside [0, t_end].
    PQSample at(double t) const;
    double t_end() const { return dense_.t_end(); }
    /// Accepted step boundaries.
    std::vector<double> grid() const { return dense_.grid(); }
    const DriveParams &drive() const { return drive_; }

  private:
    DenseSolution<4> dense_;
    DriveParams drive_;
};

/// Longest horizon solve_pq accepts for a given drive: 200 / lambda (unbounded for lambda = 0).
double pq_horizon_limit(const DriveParams &drive);

/// Integrates both fundamental solutions to t_end.
PQSolution solve_pq(const DriveParams &drive, double t_end, const SolverSettings &settings = {});

/// Closed-form two-timescale P, Q (and analytic derivatives) for omega_p = 2.
PQSample pq_two_timescale(double t, const DriveParams &drive);

/// alpha = (P - iQ + i P' + Q') / 2, beta = (P + iQ + i P' - Q') / 2.
BogoliubovPair bogoliubov_from_pq(const PQSample &pq);

/// Inverse of bogoliubov_from_pq at time t.
PQSample pq_from_bogoliubov(const BogoliubovPair &bog, double t);

/// Leading two-timescale pair: alpha = e^{-it} - i lambda e^{i phi_p} sin t, beta = -i lambda t e^{-i(t + phi_p)}.
BogoliubovPair bogoliubov_two_timescale(double t, const DriveParams &drive);

/// First-order interaction-picture pair.
BogoliubovPair bogoliubov_perturbative(double t, const DriveParams &drive);

/// (1 - lambda cos(2t + phi_p)) / (1 - lambda cos phi_p) - 1.
double defect_predicted_two_timescale(double t, const DriveParams &drive);

/// Mathieu form (a, eps) = (1, -2 lambda).
std::pair<double, double> mathieu_params(const DriveParams &drive);

/// Throws InvalidParameter unless the drive is at parametric resonance.
void require_parametric(const DriveParams &drive, const char *op);

}  // namespace paracool
