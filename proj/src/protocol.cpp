#include "paracool/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "paracool/errors.hpp"
#include "paracool/measurement.hpp"
#include "paracool/squeezing.hpp"

namespace paracool {

GaussianState InitialState::state() const {
    if (kind == Kind::thermal) {
        return GaussianState::thermal(value);
    }
    return GaussianState::coherent(CoherentState(std::sqrt(value), 0.0));
}

void TrajectoryConfig::validate() const {
    if (n_cycles < 1) {
        throw InvalidParameter("n_cycles must be >= 1");
    }
    if (!(phase_noise_sigma >= 0.0)) {
        throw InvalidParameter("phase_noise_sigma must be >= 0");
    }
    if (!(initial.value >= 0.0)) {
        throw InvalidParameter("initial mean quanta must be >= 0");
    }
    if (!(sample_interval >= 0.0)) {
        throw InvalidParameter("sample_interval must be >= 0");
    }
    if (fixed_duration && !(*fixed_duration >= 0.0)) {
        throw InvalidParameter("fixed drive duration must be >= 0");
    }
    if (!(drive.lambda() > 0.0)) {
        throw InvalidParameter("feedback protocol requires lambda > 0");
    }
    ode.validate();
}

EnsembleStats EnsembleResult::stats() const {
    EnsembleStats s;
    s.x = x;
    s.n_samples = values.size();
    const std::size_t bins = x.size();
    s.mean.assign(bins, 0.0);
    s.stderr_.assign(bins, 0.0);
    const double n = static_cast<double>(values.size());
    if (values.empty()) {
        return s;
    }
    for (std::size_t b = 0; b < bins; ++b) {
        double sum = 0.0;
        for (const auto &row : values) {
            sum += row[b];
        }
        double mean = sum / n;
        double ss = 0.0;
        for (const auto &row : values) {
            ss += (row[b] - mean) * (row[b] - mean);
        }
        s.mean[b] = mean;
        s.stderr_[b] = values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    }
    return s;
}

std::pair<double, double> EnsembleResult::pooled_mean(std::size_t first_bin) const {
    if (values.empty() || first_bin >= x.size()) {
        throw InvalidParameter("pooled_mean: no bins at or after first_bin");
    }
    std::vector<double> per;
    per.reserve(values.size());
    for (const auto &row : values) {
        double s = 0.0;
        for (std::size_t b = first_bin; b < row.size(); ++b) {
            s += row[b];
        }
        per.push_back(s / static_cast<double>(row.size() - first_bin));
    }
    const double n = static_cast<double>(per.size());
    double mean = 0.0;
    for (double v : per) {
        mean += v;
    }
    mean /= n;
    double ss = 0.0;
    for (double v : per) {
        ss += (v - mean) * (v - mean);
    }
    double se = per.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return {mean, se};
}

double round_drive_time(double t_op) {
    if (!(t_op >= 0.0)) {
        throw InvalidParameter("drive time must be >= 0");
    }
    double k = t_op / kPi;
    double kf = std::floor(k);
    if (k - kf > 0.5) {
        kf += 1.0;
    }
    return kf * kPi;
}

double drive_duration(double r, const DriveParams &drive) { return round_drive_time(optimal_time(r, drive)); }

double sample_phase_error(double phi_p, double sigma, RngStream &rng) {
    if (!(sigma >= 0.0)) {
        throw InvalidParameter("phase noise sigma must be >= 0");
    }
    double z = rng.normal();
    return sigma == 0.0 ? phi_p : phi_p + sigma * z;
}

BogoliubovSource::BogoliubovSource(const DriveParams &nominal, double horizon, const SolverSettings &ode)
    : nominal_(nominal), ode_(ode) {
    horizon = std::min(horizon, pq_horizon_limit(nominal));
    if (horizon > 0.0) {
        cache_ = std::make_shared<const PQSolution>(solve_pq(nominal, horizon, ode));
    }
}

BogoliubovPair BogoliubovSource::at(double t, double phi_p) const { return at(std::vector<double>{t}, phi_p)[0]; }

std::vector<BogoliubovPair> BogoliubovSource::at(const std::vector<double> &times, double phi_p) const {
    std::vector<BogoliubovPair> out(times.size());
    double tmax = times.empty() ? 0.0 : *std::max_element(times.begin(), times.end());
    if (tmax <= 0.0) {
        return out;
    }
    const PQSolution *sol = nullptr;
    std::optional<PQSolution> local;
    if (cache_ && phi_p == nominal_.phi_p() && tmax <= cache_->t_end()) {
        sol = cache_.get();
    } else {
        local.emplace(solve_pq(nominal_.with_phase(phi_p), tmax, ode_));
        sol = &*local;
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        out[i] = times[i] > 0.0 ? bogoliubov_from_pq(sol->at(times[i])) : BogoliubovPair{};
    }
    return out;
}

double cache_horizon(const TrajectoryConfig &cfg) {
    if (cfg.fixed_duration) {
        return *cfg.fixed_duration;
    }
    double r2 = 10.0 * (cfg.initial.mean_quanta() + 1.0) + 20.0;
    return drive_duration(std::sqrt(r2), cfg.drive);
}

std::pair<GaussianState, CycleRecord> run_cycle(const GaussianState &state, const TrajectoryConfig &cfg,
                                                RngStream &rng, const BogoliubovSource &source, int cycle_index) {
    CycleRecord rec;
    rec.cycle_index = cycle_index;
    rec.outcome = sample_heterodyne(state, rng);
    rec.phi_p = reduce_angle(sample_phase_error(kPi / 2, cfg.phase_noise_sigma, rng));
    CoherentState aligned(rec.outcome.r(), 0.0);
    rec.n_before = aligned.mean_quanta();
    rec.t_drive = cfg.fixed_duration ? *cfg.fixed_duration : drive_duration(aligned.r(), cfg.drive);

    std::vector<double> times;
    if (cfg.sample_interval > 0.0) {
        for (long k = 0;; ++k) {
            double t = static_cast<double>(k) * cfg.sample_interval;
            if (t >= rec.t_drive * (1.0 - 1e-12)) {
                break;
            }
            times.push_back(t);
        }
    }
    times.push_back(rec.t_drive);

    auto bogs = source.at(times, rec.phi_p);
    if (cfg.sample_interval > 0.0) {
        for (std::size_t i = 0; i < times.size(); ++i) {
            rec.samples.emplace_back(times[i], occupation_coherent_exact(bogs[i], aligned));
        }
    }
    const BogoliubovPair &bog = bogs.back();
    rec.n_after = occupation_coherent_exact(bog, aligned);
    return {apply_bogoliubov(GaussianState::coherent(aligned), bog), rec};
}

std::pair<GaussianState, CycleRecord> run_cycle(const GaussianState &state, const TrajectoryConfig &cfg,
                                                RngStream &rng) {
    cfg.validate();
    BogoliubovSource source(cfg.drive, cache_horizon(cfg), cfg.ode);
    return run_cycle(state, cfg, rng, source);
}

std::vector<CycleRecord> run_trajectory(const TrajectoryConfig &cfg, std::uint64_t index,
                                        const BogoliubovSource &source) {
    RngStream rng(cfg.seed, index);
    GaussianState state = cfg.initial.state();
    std::vector<CycleRecord> records;
    records.reserve(static_cast<std::size_t>(cfg.n_cycles));
    for (int c = 1; c <= cfg.n_cycles; ++c) {
        auto [next, rec] = run_cycle(state, cfg, rng, source, c);
        state = next;
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<CycleRecord> run_trajectory(const TrajectoryConfig &cfg, std::uint64_t index) {
    cfg.validate();
    BogoliubovSource source(cfg.drive, cache_horizon(cfg), cfg.ode);
    return run_trajectory(cfg, index, source);
}

namespace {

std::vector<double> cycle_row(const TrajectoryConfig &cfg, const std::vector<CycleRecord> &recs) {
    std::vector<double> row;
    row.reserve(recs.size() + 1);
    row.push_back(cfg.initial.mean_quanta());
    for (const auto &r : recs) {
        row.push_back(r.n_after);
    }
    return row;
}

std::vector<double> cycle_axis(const TrajectoryConfig &cfg) {
    std::vector<double> x;
    for (int c = 0; c <= cfg.n_cycles; ++c) {
        x.push_back(c);
    }
    return x;
}

}  // namespace

EnsembleResult run_ensemble(const TrajectoryConfig &cfg, std::size_t n_traj, int workers) {
    cfg.validate();
    if (n_traj < 1) {
        throw InvalidParameter("n_traj must be >= 1");
    }
    BogoliubovSource source(cfg.drive, cache_horizon(cfg), cfg.ode);
    EnsembleResult res;
    res.x = cycle_axis(cfg);
    res.values.resize(n_traj);
    parallel_for_indexed(n_traj, workers, [&](std::size_t i) {
        res.values[i] = cycle_row(cfg, run_trajectory(cfg, i, source));
    });
    return res;
}

EnsembleResult run_ensemble_serial(const TrajectoryConfig &cfg, std::size_t n_traj) {
    cfg.validate();
    if (n_traj < 1) {
        throw InvalidParameter("n_traj must be >= 1");
    }
    BogoliubovSource source(cfg.drive, cache_horizon(cfg), cfg.ode);
    EnsembleResult res;
    res.x = cycle_axis(cfg);
    for (std::size_t i = 0; i < n_traj; ++i) {
        res.values.push_back(cycle_row(cfg, run_trajectory(cfg, i, source)));
    }
    return res;
}

EnsembleResult run_ensemble_timeseries(const TrajectoryConfig &cfg, std::size_t n_traj, int workers) {
    cfg.validate();
    if (!(cfg.sample_interval > 0.0)) {
        throw InvalidParameter("time-resolved ensemble needs sample_interval > 0");
    }
    if (!cfg.fixed_duration) {
        throw InvalidParameter("time-resolved ensemble needs a fixed drive duration");
    }
    if (n_traj < 1) {
        throw InvalidParameter("n_traj must be >= 1");
    }
    TrajectoryConfig one = cfg;
    one.n_cycles = 1;
    BogoliubovSource source(cfg.drive, cache_horizon(one), cfg.ode);
    EnsembleResult res;
    res.values.resize(n_traj);
    parallel_for_indexed(n_traj, workers, [&](std::size_t i) {
        RngStream rng(one.seed, i);
        auto rec = run_cycle(one.initial.state(), one, rng, source, 1).second;
        std::vector<double> row;
        row.reserve(rec.samples.size());
        for (const auto &s : rec.samples) {
            row.push_back(s.second);
        }
        res.values[i] = std::move(row);
    });
    RngStream probe(one.seed, 0);
    for (const auto &s : run_cycle(one.initial.state(), one, probe, source, 1).second.samples) {
        res.x.push_back(s.first);
    }
    return res;
}

double thermal_cycle_average_analytic(double nbar, double t, const DriveParams &drive) {
    return 1.0 + nbar * (1.0 - 2.0 * drive.lambda() * t);
}

}  // namespace paracool
