#include "paracool/open_system.hpp"

#include <cmath>
#include <sstream>

#include "paracool/errors.hpp"
#include "paracool/measurement.hpp"
#include "paracool/squeezing.hpp"

namespace paracool {

void BathParams::validate() const {
    if (!(gamma >= 0.0)) {
        throw InvalidParameter("bath gamma must be >= 0");
    }
    if (!(nbar_B >= 0.0)) {
        throw InvalidParameter("bath nbar_B must be >= 0");
    }
}

double bath_occupation(double omega_B, double T_B) {
    if (!(omega_B > 0.0) || !(T_B > 0.0)) {
        throw InvalidParameter("bath_occupation needs omega_B > 0 and T_B > 0");
    }
    return 1.0 / std::expm1(omega_B / T_B);
}

double omega_t(double t, const DriveParams &drive) {
    double w2 = 1.0 + 4.0 * drive.f(t);
    if (!(w2 > 0.0)) {
        std::ostringstream msg;
        msg << "trap potential inverts at t = " << t << " (lambda = " << drive.lambda() << " must be < 1/4)";
        throw InvalidParameter(msg.str());
    }
    return std::sqrt(w2);
}

namespace {

std::array<double, 5> pack(const GaussianState &g) { return {g.mean_x, g.mean_p, g.s_xx, g.s_xp, g.s_pp}; }

GaussianState unpack(const std::array<double, 5> &y) { return {y[0], y[1], y[2], y[3], y[4]}; }

}  // namespace

GaussianState moment_derivatives(const GaussianState &g, double t, const DriveParams &drive, const BathParams &bath) {
    double w = omega_t(t, drive);
    double w2 = w * w;
    double gm = bath.gamma;
    double noise = 2.0 * bath.nbar_B + 1.0;
    GaussianState d;
    d.mean_x = g.mean_p - 0.5 * gm * g.mean_x;
    d.mean_p = -w2 * g.mean_x - 0.5 * gm * g.mean_p;
    d.s_xx = -gm * g.s_xx + gm * noise / (2.0 * w) + 2.0 * g.s_xp;
    d.s_xp = -gm * g.s_xp + g.s_pp - g.s_xx * w2;
    d.s_pp = -gm * g.s_pp + gm * noise * w / 2.0 - 2.0 * g.s_xp * w2;
    return d;
}

GaussianState MomentTrajectory::at(double t) const { return unpack(dense_(t)); }

MomentTrajectory integrate_moments_dense(const GaussianState &g, double t0, double t1, const DriveParams &drive,
                                         const BathParams &bath, const SolverSettings &settings) {
    bath.validate();
    auto rhs = [&](double t, const std::array<double, 5> &y, std::array<double, 5> &dy) {
        dy = pack(moment_derivatives(unpack(y), t, drive, bath));
    };
    return MomentTrajectory(integrate_dop853<5>(rhs, t0, pack(g), t1, settings));
}

GaussianState integrate_moments(const GaussianState &g, double t0, double t1, const DriveParams &drive,
                                const BathParams &bath, const SolverSettings &settings) {
    if (!(t1 > t0)) {
        throw InvalidParameter("integrate_moments needs t1 > t0");
    }
    return integrate_moments_dense(g, t0, t1, drive, bath, settings).at(t1);
}

StopResult optimal_stop_search(const GaussianState &g, const DriveParams &drive, const BathParams &bath,
                               double horizon, const SolverSettings &settings) {
    if (!(horizon >= kPi)) {
        throw InvalidParameter("optimal_stop_search needs horizon >= pi");
    }
    auto kmax = static_cast<long>(std::floor(horizon / kPi + 1e-12));
    auto traj = integrate_moments_dense(g, 0.0, kmax * kPi, drive, bath, settings);
    StopResult best{0.0, occupation_from_moments(g), g};
    for (long k = 1; k <= kmax; ++k) {
        double t = k * kPi;
        GaussianState s = traj.at(t);
        double n = occupation_from_moments(s);
        if (n < best.n_min) {
            best = {t, n, s};
        }
    }
    return best;
}

double stop_search_horizon(double r, const DriveParams &drive) {
    return std::min(1.25 * optimal_time(r, drive) + kTwoPi, pq_horizon_limit(drive));
}

namespace {

std::vector<double> dissipative_trajectory(const TrajectoryConfig &cfg, const BathParams &bath, std::uint64_t index) {
    RngStream rng(cfg.seed, index);
    GaussianState state = cfg.initial.state();
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(cfg.n_cycles) + 1);
    row.push_back(cfg.initial.mean_quanta());
    for (int c = 1; c <= cfg.n_cycles; ++c) {
        CoherentState xi = sample_heterodyne(state, rng);
        double phi_p = sample_phase_error(kPi / 2, cfg.phase_noise_sigma, rng);
        GaussianState aligned = GaussianState::coherent(CoherentState(xi.r(), 0.0));
        DriveParams drive = cfg.drive.with_phase(phi_p);
        double horizon = stop_search_horizon(xi.r(), cfg.drive);
        if (horizon >= kPi) {
            state = optimal_stop_search(aligned, drive, bath, horizon, cfg.ode).state;
        } else {
            state = aligned;
        }
        row.push_back(occupation_from_moments(state));
    }
    return row;
}

std::vector<double> cycle_axis(int n_cycles) {
    std::vector<double> x;
    for (int c = 0; c <= n_cycles; ++c) {
        x.push_back(c);
    }
    return x;
}

}  // namespace

EnsembleResult run_dissipative_protocol(const TrajectoryConfig &cfg, const BathParams &bath, std::size_t n_traj,
                                        int workers) {
    cfg.validate();
    bath.validate();
    if (n_traj < 1) {
        throw InvalidParameter("n_traj must be >= 1");
    }
    EnsembleResult res;
    res.x = cycle_axis(cfg.n_cycles);
    res.values.resize(n_traj);
    parallel_for_indexed(n_traj, workers, [&](std::size_t i) { res.values[i] = dissipative_trajectory(cfg, bath, i); });
    return res;
}

EnsembleResult run_dissipative_protocol_serial(const TrajectoryConfig &cfg, const BathParams &bath,
                                               std::size_t n_traj) {
    cfg.validate();
    bath.validate();
    if (n_traj < 1) {
        throw InvalidParameter("n_traj must be >= 1");
    }
    EnsembleResult res;
    res.x = cycle_axis(cfg.n_cycles);
    for (std::size_t i = 0; i < n_traj; ++i) {
        res.values.push_back(dissipative_trajectory(cfg, bath, i));
    }
    return res;
}

}  // namespace paracool
