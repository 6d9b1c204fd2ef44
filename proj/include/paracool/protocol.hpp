#pragma once

// Measurement-based feedback cooling: heterodyne measurement, rotation to the
// real axis, parametric drive for the optimal duration, repeat.

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "paracool/core.hpp"
#include "paracool/dynamics.hpp"
#include "paracool/rng.hpp"

namespace paracool {

/// Initial state of every trajectory: a coherent state of mean quanta `value`
/// on the real axis, or a thermal state of occupation `value`.
struct InitialState {
    enum class Kind { coherent, thermal };
    Kind kind = Kind::coherent;
    double value = 80.0;

    GaussianState state() const;
    double mean_quanta() const { return value; }
};

struct TrajectoryConfig {
    DriveParams drive{0.01};
    int n_cycles = 16;
    InitialState initial;
    /// Standard deviation of the pump-phase error per cycle [rad].
    double phase_noise_sigma = 0.0;
    std::uint64_t seed = 0;
    /// Intra-cycle occupation sampling step; 0 disables sampling.
    double sample_interval = 0.0;
    /// Fixed drive duration for every cycle; unset means the optimal duration.
    std::optional<double> fixed_duration;
    SolverSettings ode;

    /// Throws InvalidParameter when a field is out of range.
    void validate() const;
};

struct CycleRecord {
    int cycle_index = 0;
    /// Heterodyne outcome before rotation.
    CoherentState outcome;
    double t_drive = 0.0;
    /// Pump phase actually applied (after phase noise).
    double phi_p = 0.0;
    /// Mean quanta of the post-measurement coherent state.
    double n_before = 0.0;
    double n_after = 0.0;
    /// (t, n) pairs inside the drive segment when sampling is enabled.
    std::vector<std::pair<double, double>> samples;
};

/// Mean, standard error and sample count per bin.
struct EnsembleStats {
    std::vector<double> x;
    std::vector<double> mean;
    std::vector<double> stderr_;
    std::size_t n_samples = 0;
};

/// Per-trajectory values from an ensemble run, row-major [trajectory][bin].
struct EnsembleResult {
    std::vector<double> x;
    std::vector<std::vector<double>> values;

    EnsembleStats stats() const;
    /// Pools bins from `first_bin` on: mean of the per-trajectory averages and its standard error.
    std::pair<double, double> pooled_mean(std::size_t first_bin) const;
};

/// Nearest multiple of pi to `t_op`, ties rounding down; below pi/2 gives 0.
double round_drive_time(double t_op);

/// round_drive_time(optimal_time(r, drive)); 0 for r = 0.
double drive_duration(double r, const DriveParams &drive);

/// phi_p + sigma z with z standard normal. One normal is always drawn so that
/// streams stay aligned across sigma values; sigma = 0 returns phi_p exactly.
double sample_phase_error(double phi_p, double sigma, RngStream &rng);

/// Bogoliubov pairs for the nominal drive, precomputed up to a horizon and
/// shared read-only across workers. Requests beyond the horizon or for a
/// different pump phase are solved on demand.
class BogoliubovSource {
  public:
    BogoliubovSource(const DriveParams &nominal, double horizon, const SolverSettings &ode);

    BogoliubovPair at(double t, double phi_p) const;
    /// Pairs at several times for one drive phase (one solve when uncached).
    std::vector<BogoliubovPair> at(const std::vector<double> &times, double phi_p) const;

  private:
    DriveParams nominal_;
    SolverSettings ode_;
    std::shared_ptr<const PQSolution> cache_;
};

/// Suggested cache horizon for a configuration.
double cache_horizon(const TrajectoryConfig &cfg);

/// One measure-rotate-drive cycle.
std::pair<GaussianState, CycleRecord> run_cycle(const GaussianState &state, const TrajectoryConfig &cfg,
                                                RngStream &rng, const BogoliubovSource &source, int cycle_index = 1);
std::pair<GaussianState, CycleRecord> run_cycle(const GaussianState &state, const TrajectoryConfig &cfg,
                                                RngStream &rng);

/// Trajectory `index` of the ensemble defined by cfg.seed.
std::vector<CycleRecord> run_trajectory(const TrajectoryConfig &cfg, std::uint64_t index,
                                        const BogoliubovSource &source);
std::vector<CycleRecord> run_trajectory(const TrajectoryConfig &cfg, std::uint64_t index = 0);

/// Per-cycle n_after for n_traj trajectories; bin 0 holds the initial mean quanta.
/// `workers` <= 0 uses the OpenMP default. Output does not depend on `workers`.
EnsembleResult run_ensemble(const TrajectoryConfig &cfg, std::size_t n_traj, int workers = 0);

/// Serial reference implementation of run_ensemble.
EnsembleResult run_ensemble_serial(const TrajectoryConfig &cfg, std::size_t n_traj);

/// Time-resolved occupation inside the first cycle, sampled every
/// cfg.sample_interval (required > 0).
EnsembleResult run_ensemble_timeseries(const TrajectoryConfig &cfg, std::size_t n_traj, int workers = 0);

/// 1 + nbar (1 - 2 lambda t).
double thermal_cycle_average_analytic(double nbar, double t, const DriveParams &drive);

/// Runs f(i) for i in [0, n) across OpenMP threads and rethrows the first
/// exception by index once all tasks finish.
template <typename F>
void parallel_for_indexed(std::size_t n, int workers, F &&f);

}  // namespace paracool

#include "paracool/detail/parallel.hpp"
