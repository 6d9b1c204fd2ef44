#pragma once

// Dissipative moment dynamics and the feedback protocol with a thermal bath.

#include <array>
#include <cstdint>
#include <utility>

#include "paracool/core.hpp"
#include "paracool/ode.hpp"
#include "paracool/protocol.hpp"

namespace paracool {

struct BathParams {
    double gamma = 0.0;
    double nbar_B = 0.0;

    void validate() const;
};

/// Bose occupation 1 / (exp(omega_B / T_B) - 1); 0 in the T_B -> 0 limit.
double bath_occupation(double omega_B, double T_B);

/// sqrt(1 + 4 f(t)); throws InvalidParameter when 1 + 4 f(t) <= 0.
double omega_t(double t, const DriveParams &drive);

/// Right-hand sides of the five moment equations. The returned struct holds
/// time derivatives in the GaussianState fields.
GaussianState moment_derivatives(const GaussianState &g, double t, const DriveParams &drive, const BathParams &bath);

/// Dense moment trajectory from one integration.
class MomentTrajectory {
  public:
    MomentTrajectory(DenseSolution<5> dense) : dense_(std::move(dense)) {}
    GaussianState at(double t) const;
    double t_begin() const { return dense_.t_begin(); }
    double t_end() const { return dense_.t_end(); }
    /// Accepted step boundaries.
    std::vector<double> grid() const { return dense_.grid(); }

  private:
    DenseSolution<5> dense_;
};

MomentTrajectory integrate_moments_dense(const GaussianState &g, double t0, double t1, const DriveParams &drive,
                                         const BathParams &bath, const SolverSettings &settings = {});

GaussianState integrate_moments(const GaussianState &g, double t0, double t1, const DriveParams &drive,
                                const BathParams &bath, const SolverSettings &settings = {});

struct StopResult {
    double t_stop = 0.0;
    double n_min = 0.0;
    GaussianState state;
};

/// Integrates once over [0, horizon] and picks the multiple of pi with the
/// lowest occupation (k = 0 means no drive).
StopResult optimal_stop_search(const GaussianState &g, const DriveParams &drive, const BathParams &bath,
                               double horizon, const SolverSettings &settings = {});

/// Search horizon for a coherent outcome of amplitude r: 1.25 t_op + 2 pi.
double stop_search_horizon(double r, const DriveParams &drive);

/// Feedback cycles under dissipative evolution; bin 0 holds the initial mean quanta.
EnsembleResult run_dissipative_protocol(const TrajectoryConfig &cfg, const BathParams &bath, std::size_t n_traj,
                                        int workers = 0);

/// Serial reference implementation of run_dissipative_protocol.
EnsembleResult run_dissipative_protocol_serial(const TrajectoryConfig &cfg, const BathParams &bath,
                                               std::size_t n_traj);

}  // namespace paracool
