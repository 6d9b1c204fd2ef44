// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "paracool/commands.hpp"
#include "paracool/config.hpp"
#include "paracool/dynamics.hpp"
#include "paracool/measurement.hpp"
#include "paracool/open_system.hpp"
#include "paracool/protocol.hpp"
#include "paracool/squeezing.hpp"
#include "paracool/steady_state.hpp"

using namespace paracool;

namespace {

// Criterion 1
constexpr double kNfTarget = 0.83;
constexpr double kNfTol = 0.02;
constexpr double kRootIterTol = 0.02;
constexpr double kC1Budget = 60.0;
// Criterion 2
constexpr double kC2Tol = 1e-12;
// Criterion 3
constexpr std::size_t kC3Realizations = 10000;
constexpr double kC3Sigmas = 3.0;
constexpr double kC3TMax = 10.0;
constexpr double kC3Budget = 120.0;
// Criterion 4
constexpr std::size_t kC4Trajectories = 1000;
constexpr double kC4Low = 0.75;
constexpr double kC4High = 0.95;
constexpr double kC4Sigmas = 3.0;
constexpr double kC4Budget = 300.0;
// Criterion 5
constexpr std::size_t kC5Trajectories = 2000;
constexpr double kC5Budget = 180.0;
// Criterion 6
constexpr double kC6TwoTimescaleTol = 1e-4;
constexpr double kC6EnvelopeFactor = 3.0;
// Criterion 7
constexpr double kC7Budget = 300.0;
// Criterion 8
constexpr std::size_t kC8Trajectories = 1000;
constexpr double kC8Sigmas = 3.0;
constexpr double kC8Budget = 600.0;
// Criterion 9
constexpr double kC9BogTol = 1e-9;
constexpr double kC9WronskianTol = 1e-8;
constexpr double kC9KernelTol = 1e-6;
constexpr double kC9HeisenbergTol = 1e-9;
constexpr double kC9HeisenbergDenseRelTol = 1e-8;
constexpr double kC9Budget = 120.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 6) {
    std::ostringstream s;
    s.precision(prec);
    s << v;
    return s.str();
}

// Shared between criteria 1, 4 and 8.
double g_nf = 0.0;

Outcome criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    QuadratureGrid grid;
    CycleMap map(6.0 + grid.r_extra + 4.0, grid);
    double nf = map.stationary_occupation();
    g_nf = nf;
    FixedPoint fp = find_fixed_point(grid);

    bool agree = true;
    std::ostringstream d;
    auto from_root = map.iterate(fp.r_star, 4);
    for (std::size_t k = 1; k < from_root.size(); ++k) {
        agree = agree && std::abs(from_root[k] - fp.n_f) <= kRootIterTol;
    }
    d << "n_f=" << fmt(nf) << " root=" << fmt(fp.n_f) << " r*=" << fmt(fp.r_star)
      << " 4-cycle from r*: " << fmt(from_root.back());
    for (double r0 : {0.0, 3.0, 6.0}) {
        auto seq = map.iterate(r0, 40);
        agree = agree && std::abs(seq.back() - fp.n_f) <= kRootIterTol;
        d << " | r0=" << r0 << " N_c=4: " << fmt(seq[4]) << " N_c=40: " << fmt(seq.back());
    }
    double secs = seconds_since(t0);
    d << " | " << fmt(secs, 3) << "s";
    return {std::abs(nf - kNfTarget) <= kNfTol && agree && secs <= kC1Budget, d.str()};
}

Outcome criterion2() {
    DriveParams drive(0.01);
    double rop = optimal_rsq(1.0);
    double nmin = min_quanta(1.0);
    double top = optimal_time(1.0, drive);
    bool pass = std::abs(rop - std::log(5.0) / 4) <= kC2Tol && std::abs(nmin - (std::sqrt(5.0) - 1) / 2) <= kC2Tol &&
                top >= 40.0 && top <= 41.0;
    return {pass, "r_op=" + fmt(rop, 15) + " n_min=" + fmt(nmin, 15) + " t_op=" + fmt(top)};
}

Outcome criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::ostringstream d;
    for (double nbar : {6.0, 8.0, 10.0}) {
        TrajectoryConfig cfg;
        cfg.drive = DriveParams(0.01);
        cfg.initial = {InitialState::Kind::thermal, nbar};
        cfg.fixed_duration = 45 * kPi / 2;
        cfg.sample_interval = kPi / 8;
        cfg.seed = 3;
        auto res = run_ensemble_timeseries(cfg, kC3Realizations);
        auto st = res.stats();
        double worst = 0.0;
        for (std::size_t i = 0; i < st.x.size() && st.x[i] <= kC3TMax + 1e-12; ++i) {
            double ref = thermal_cycle_average_analytic(nbar, st.x[i], cfg.drive);
            worst = std::max(worst, std::abs(st.mean[i] - ref) / st.stderr_[i]);
        }
        pass = pass && worst <= kC3Sigmas;
        d << "nbar=" << nbar << " max|dev|/se=" << fmt(worst, 3) << " ";
    }
    double secs = seconds_since(t0);
    d << "| " << fmt(secs, 3) << "s";
    return {pass && secs <= kC3Budget, d.str()};
}

Outcome criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    TrajectoryConfig cfg;
    cfg.drive = DriveParams(0.01);
    cfg.initial = {InitialState::Kind::coherent, 80.0};
    cfg.n_cycles = 16;
    cfg.seed = 4;
    auto res = run_ensemble(cfg, kC4Trajectories);
    auto [m, se] = res.pooled_mean(8);
    double secs = seconds_since(t0);
    bool pass = m >= kC4Low && m <= kC4High && std::abs(m - g_nf) <= kC4Sigmas * se && secs <= kC4Budget;
    return {pass, "mean(cycles 8-16)=" + fmt(m) + " se=" + fmt(se, 3) + " n_f=" + fmt(g_nf) + " | " +
                      fmt(secs, 3) + "s"};
}

Outcome criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<double> finals;
    std::ostringstream d;
    for (double frac : {0.0, 0.05, 0.1, 0.2}) {
        TrajectoryConfig cfg;
        cfg.drive = DriveParams(0.01);
        cfg.initial = {InitialState::Kind::coherent, 10.0};
        cfg.n_cycles = 10;
        cfg.phase_noise_sigma = frac * kPi / 2;
        cfg.seed = 5;
        auto st = run_ensemble(cfg, kC5Trajectories).stats();
        finals.push_back(st.mean.back());
        d << "dphi=" << frac << ": " << fmt(st.mean.back()) << " +- " << fmt(st.stderr_.back(), 3) << " ";
    }
    bool monotone = std::is_sorted(finals.begin(), finals.end());
    double secs = seconds_since(t0);
    d << "| " << fmt(secs, 3) << "s";
    return {finals.back() < 10.0 && monotone && secs <= kC5Budget, d.str()};
}

Outcome criterion6() {
    double worst_tt = 0.0;
    double worst_env = 0.0;
    for (double lam : {0.005, 0.01, 0.02}) {
        DriveParams drive(lam, 2.0, kPi / 2);
        for (int k = 0; k <= 30; ++k) {
            worst_tt = std::max(worst_tt, std::abs(bogoliubov_from_pq(pq_two_timescale(k * kPi, drive)).defect()));
        }
        for (int i = 0; i <= 5000; ++i) {
            double t = 0.01 * i;
            double dev = std::abs(bogoliubov_perturbative(t, drive).defect() + lam * lam * t * t);
            worst_env = std::max(worst_env, dev / (kC6EnvelopeFactor * lam));
        }
    }
    return {worst_tt <= kC6TwoTimescaleTol && worst_env <= 1.0,
            "max two-timescale |defect| at k pi=" + fmt(worst_tt, 3) +
                " max perturbative deviation / (3 lambda)=" + fmt(worst_env, 3)};
}

Outcome criterion7() {
    auto t0 = std::chrono::steady_clock::now();
    auto occ = oracle_occupation_checks();
    auto ov = oracle_overlap_checks();
    double worst_occ = 0.0;
    double worst_ov = 0.0;
    bool pass = true;
    for (const auto &c : occ) {
        worst_occ = std::max(worst_occ, std::abs(c.value - c.reference));
        pass = pass && c.pass;
    }
    for (const auto &c : ov) {
        worst_ov = std::max(worst_ov, std::abs(c.value - c.reference));
        pass = pass && c.pass;
    }
    double secs = seconds_since(t0);
    return {pass && secs <= kC7Budget, std::to_string(occ.size()) + " occupation checks max|dev|=" +
                                           fmt(worst_occ, 3) + ", " + std::to_string(ov.size()) +
                                           " overlap checks max|dev|=" + fmt(worst_ov, 3) + " | " + fmt(secs, 3) +
                                           "s"};
}

Outcome criterion8() {
    auto t0 = std::chrono::steady_clock::now();
    TrajectoryConfig cfg;
    cfg.drive = DriveParams(0.01);
    cfg.initial = {InitialState::Kind::coherent, 80.0};
    cfg.n_cycles = 16;
    cfg.seed = 8;
    double nbar_b = bath_occupation(0.5, 10.0);
    std::vector<double> means;
    std::ostringstream d;
    bool pass = true;
    for (double gamma : {0.0, 1e-5, 1e-4, 1e-3}) {
        auto [m, se] = run_dissipative_protocol(cfg, BathParams{gamma, nbar_b}, kC8Trajectories).pooled_mean(8);
        if (gamma == 0.0) {
            pass = pass && std::abs(m - g_nf) <= kC8Sigmas * se;
        }
        if (gamma <= 1e-4) {
            pass = pass && m < nbar_b;
        }
        means.push_back(m);
        d << "gamma=" << gamma << ": " << fmt(m) << " +- " << fmt(se, 3) << " ";
    }
    for (std::size_t i = 1; i < means.size(); ++i) {
        pass = pass && means[i] > means[i - 1];
    }
    double secs = seconds_since(t0);
    d << "nbar_B=" << fmt(nbar_b) << " | " << fmt(secs, 3) << "s";
    return {pass && secs <= kC8Budget, d.str()};
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome criterion9() {
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream d;
    bool pass = true;

    double worst_bog = 0.0;
    double worst_w = 0.0;
    bool no_cooling = true;
    for (double lam : {0.001, 0.01, 0.02, 0.05}) {
        for (double php : {0.0, kPi / 2, 1.0, 3 * kPi / 2}) {
            DriveParams drive(lam, 2.0, php);
            double t_end = std::min(100.0, pq_horizon_limit(drive));
            PQSolution pq = solve_pq(drive, t_end);
            for (double t : pq.grid()) {
                PQSample s = pq.at(t);
                worst_bog = std::max(worst_bog, std::abs(bogoliubov_from_pq(s).defect()));
                worst_w = std::max(worst_w, std::abs(s.wronskian() - 1.0));
                for (double nbar : {0.0, 0.5, 10.0}) {
                    no_cooling = no_cooling && occupation_thermal(bogoliubov_from_pq(s), {nbar}) >= nbar;
                }
            }
        }
    }
    pass = pass && worst_bog <= kC9BogTol && worst_w <= kC9WronskianTol && no_cooling;
    d << "bog=" << fmt(worst_bog, 3) << " wronskian=" << fmt(worst_w, 3) << " thermal=" << (no_cooling ? "ok" : "BAD");

    double worst_step = 1.0;
    double worst_dense = 1.0;
    for (double gamma : {0.0, 1e-4, 1e-2}) {
        for (const GaussianState &g0 : {GaussianState::coherent({4.0, 0.3}), GaussianState::thermal(3.0)}) {
            DriveParams drive(0.02, 2.0, kPi / 2);
            auto traj = integrate_moments_dense(g0, 0.0, 120.0, drive, BathParams{gamma, 19.5});
            for (double t : traj.grid()) {
                GaussianState g = traj.at(t);
                worst_step = std::min(worst_step, g.covariance_det() - 0.25);
                pass = pass && g.s_xx > 0.0 && g.s_pp > 0.0 && g.covariance_det() >= 0.25 - kC9HeisenbergTol;
            }
            // between steps the interpolant is accurate relative to the variances, not to det
            for (int i = 0; i <= 1200; ++i) {
                GaussianState g = traj.at(0.1 * i);
                double rel = (g.covariance_det() - 0.25) / (g.s_xx * g.s_pp);
                worst_dense = std::min(worst_dense, rel);
                pass = pass && g.s_xx > 0.0 && g.s_pp > 0.0 && rel >= -kC9HeisenbergDenseRelTol;
            }
        }
    }
    d << " min(det-1/4) at steps=" << fmt(worst_step, 3) << " dense rel=" << fmt(worst_dense, 3);

    double worst_k = 0.0;
    for (int i = 0; i <= 24; ++i) {
        worst_k = std::max(worst_k, std::abs(kernel_normalization(0.25 * i) - 1.0));
    }
    pass = pass && worst_k <= kC9KernelTol;
    d << " kernel=" << fmt(worst_k, 3);

    auto dir = std::filesystem::temp_directory_path() / "paracool_acceptance";
    std::filesystem::create_directories(dir);
    bool same = true;
    for (const std::string sub : {"ensemble", "dissipative", "trajectory"}) {
        std::map<std::string, std::string> ov{{"seed", "11"}, {"protocol.n_traj", "64"}};
        if (sub == "dissipative") {
            ov["bath.gamma"] = "1e-4";
        }
        RunConfig cfg = parse_config("", sub, ov);
        std::ostringstream sink;
        std::vector<std::string> outputs;
        for (int w : {1, 4, 1}) {
            auto p = dir / (sub + "_" + std::to_string(outputs.size()) + ".csv");
            run_subcommand(cfg, p.string(), w, sink);
            outputs.push_back(slurp(p));
        }
        same = same && !outputs[0].empty() && outputs[0] == outputs[1] && outputs[1] == outputs[2];
    }
    std::filesystem::remove_all(dir);
    pass = pass && same;
    d << " determinism=" << (same ? "ok" : "BAD");

    double secs = seconds_since(t0);
    d << " | " << fmt(secs, 3) << "s";
    return {pass && secs <= kC9Budget, d.str()};
}

Outcome criterion10() {
    bool pass = true;
    std::ostringstream d;
    for (double php : {3 * kPi / 2, kPi / 2}) {
        DriveParams drive(0.02, 2.0, php);
        double n0 = occupation_homodyne_firstorder(0.5, 0.0, 0.0, drive);
        double n1 = occupation_homodyne_firstorder(0.5, 0.0, kPi, drive);
        bool ok = php > kPi ? n1 < n0 : n1 > n0;
        pass = pass && ok;
        d << "phi_p=" << fmt(php, 4) << ": n(0)=" << fmt(n0) << " n(pi)=" << fmt(n1) << " ";
    }
    HomodyneMoments lo = xbar_theta(0.1);
    HomodyneMoments hi = xbar_theta(3.0);
    pass = pass && lo.converged && hi.converged && lo.xbar < 0.0 && hi.xbar > 0.0;
    d << "xbar(0.1)=" << fmt(lo.xbar) << " xbar(3)=" << fmt(hi.xbar);
    return {pass, d.str()};
}

}  // namespace

int main() {
    std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                      criterion6, criterion7, criterion8, criterion9, criterion10};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << o.detail << std::endl;
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
