#include "paracool/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "paracool/dynamics.hpp"
#include "paracool/errors.hpp"
#include "paracool/measurement.hpp"
#include "paracool/oracle.hpp"
#include "paracool/squeezing.hpp"

namespace paracool {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

ValidationCheck make_check(std::string name, double value, double reference, double tol) {
    return {std::move(name), value, reference, tol, std::abs(value - reference) <= tol};
}

}  // namespace

std::vector<ValidationCheck> oracle_occupation_checks() {
    std::vector<ValidationCheck> out;
    OracleSettings os;
    os.N = 200;
    for (double lam : {0.01, 0.02}) {
        for (double php : {kPi / 2, 3 * kPi / 2}) {
            DriveParams drive(lam, 2.0, php);
            PQSolution pq = solve_pq(drive, 20.0);
            for (double r : {0.0, 1.0, 2.0}) {
                for (double phi : {0.0, kPi / 3}) {
                    if (r == 0.0 && phi != 0.0) {
                        continue;
                    }
                    CoherentState xi(r, phi);
                    FockVector v0 = coherent_fock(xi, os.N);
                    for (double t : {5.0, 20.0}) {
                        double fock = evolve_fock(v0, drive, t, os).occupation();
                        double gauss = occupation_coherent_exact(bogoliubov_from_pq(pq.at(t)), xi);
                        std::ostringstream name;
                        name << "occupation lambda=" << lam << " phi_p=" << php << " |xi|=" << r << " phi=" << phi
                             << " t=" << t;
                        out.push_back(make_check(name.str(), gauss, fock, 1e-3));
                    }
                }
            }
        }
    }
    return out;
}

std::vector<ValidationCheck> oracle_overlap_checks() {
    std::vector<ValidationCheck> out;
    const std::size_t N = 200;
    for (double r_sq : {0.2, 0.6, 1.0}) {
        for (double xi0 : {0.5, 1.0, 2.0}) {
            FockVector sq = squeeze_fock(coherent_fock(CoherentState(xi0, 0.0), N), cplx(-r_sq, 0.0));
            for (cplx xi1 : {cplx(0.0, 0.0), cplx(0.4, 0.3), cplx(1.0, -0.8), cplx(-0.7, 1.5), cplx(1.8, 0.2)}) {
                double fock = std::norm(sq.overlap(coherent_fock(CoherentState::from_complex(xi1), N))) / kPi;
                double closed = squeezed_coherent_prob(xi1, xi0, r_sq);
                std::ostringstream name;
                name << "overlap r_sq=" << r_sq << " xi0=" << xi0 << " xi1=" << xi1;
                out.push_back(make_check(name.str(), closed, fock, 1e-6));
            }
        }
    }
    return out;
}

std::vector<ValidationCheck> oracle_convention_checks() {
    std::vector<ValidationCheck> out;
    const std::size_t N = 200;
    // S(z) from the Fock oracle against quanta_after_squeeze with phase arg(z) + pi
    struct Case {
        double r, phi, rs, th;
    };
    for (Case c : {Case{1.0, 0.0, std::log(5.0) / 4, kPi}, Case{1.0, 0.0, 0.3, 0.0}, Case{1.2, 0.3, 0.4, 0.7},
                   Case{2.0, 2.0, 0.8, 4.0}}) {
        CoherentState xi(c.r, c.phi);
        double fock = squeeze_fock(coherent_fock(xi, N), std::polar(c.rs, c.th)).occupation();
        std::ostringstream name;
        name << "squeeze convention r=" << c.r << " phi=" << c.phi << " r_sq=" << c.rs << " theta=" << c.th;
        out.push_back(make_check(name.str(), quanta_after_squeeze(xi, c.rs, c.th + kPi), fock, 1e-9));
        // the opposite convention must disagree
        ValidationCheck other = make_check(name.str() + " (opposite phase rejected)",
                                           quanta_after_squeeze(xi, c.rs, c.th), fock, 1e-3);
        other.pass = !other.pass;
        out.push_back(other);
    }
    out.push_back(make_check("squeezed vacuum r=0.3",
                             squeeze_fock(number_fock(0, N), cplx(0.3, 0.0)).occupation(),
                             std::pow(std::sinh(0.3), 2), 1e-9));
    {
        DriveParams drive(0.01);
        double fock = evolve_fock(number_fock(0, N), drive, 50.0).occupation();
        double beta2 = std::norm(bogoliubov_from_pq(solve_pq(drive, 50.0).at(50.0)).beta);
        out.push_back(make_check("vacuum heating lambda=0.01 t=50", beta2, fock, 1e-4));
    }
    {
        DriveParams drive(0.02);
        double t = 13 * kPi;
        double fock = evolve_fock(coherent_fock(CoherentState(1.0, 0.0), N), drive, t).occupation();
        double gauss = occupation_coherent_exact(bogoliubov_from_pq(solve_pq(drive, t).at(t)), CoherentState(1.0, 0.0));
        out.push_back(make_check("cycle lambda=0.02 xi=1 t=13pi", gauss, fock, 1e-3));
    }
    return out;
}

std::vector<ValidationCheck> run_validation_suite() {
    std::vector<ValidationCheck> all = oracle_occupation_checks();
    for (auto &c : oracle_overlap_checks()) {
        all.push_back(std::move(c));
    }
    for (auto &c : oracle_convention_checks()) {
        all.push_back(std::move(c));
    }
    return all;
}

namespace {

struct CsvWriter {
    std::ofstream file;

    CsvWriter(const std::string &path, const RunConfig &cfg, const std::string &header) : file(path) {
        if (!file) {
            throw ConfigError("cannot open output file '" + path + "'");
        }
        file << "# subcommand=" << cfg.subcommand << "\n";
        for (const auto &[k, v] : cfg.resolved) {
            file << "# " << k << "=" << v << "\n";
        }
        file << header << "\n";
    }

    template <typename... T>
    void row(const T &...vals) {
        bool first = true;
        ((file << (first ? "" : ",") << cell(vals), first = false), ...);
        file << "\n";
    }

    static std::string cell(double v) { return format_double(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(std::size_t v) { return std::to_string(v); }
};

void write_plot_script(const std::string &csv, const std::string &title, const std::string &xlabel,
                       const std::string &ylabel, const std::string &plot_cmd) {
    std::ofstream gp(csv + ".gp");
    gp << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set title '" << title << "'\n"
       << "set xlabel '" << xlabel << "'\n"
       << "set ylabel '" << ylabel << "'\n"
       << "set terminal pngcairo size 900,600\n"
       << "set output '" << csv << ".png'\n"
       << "plot '" << csv << "' " << plot_cmd << "\n";
}

void write_ensemble(const std::string &path, const RunConfig &cfg, const EnsembleResult &res, const std::string &xlabel) {
    EnsembleStats st = res.stats();
    CsvWriter w(path, cfg, "cycle_or_t,mean_n,stderr_n,n_samples");
    for (std::size_t i = 0; i < st.x.size(); ++i) {
        w.row(st.x[i], st.mean[i], st.stderr_[i], st.n_samples);
    }
    write_plot_script(path, "ensemble mean occupation", xlabel, "<n>", "using 1:2:3 with yerrorbars");
}

int cmd_trajectory(const RunConfig &cfg, const std::string &path, std::ostream &out) {
    auto recs = run_trajectory(cfg.trajectory, 0);
    CsvWriter w(path, cfg, "cycle,t,xi_r,xi_phi,t_drive,n");
    double clock = 0.0;
    w.row(0, 0.0, std::sqrt(cfg.trajectory.initial.value), 0.0, 0.0, cfg.trajectory.initial.value);
    for (const auto &r : recs) {
        if (r.samples.empty()) {
            w.row(r.cycle_index, clock + r.t_drive, r.outcome.r(), r.outcome.phi(), r.t_drive, r.n_after);
        } else {
            for (const auto &[t, n] : r.samples) {
                w.row(r.cycle_index, clock + t, r.outcome.r(), r.outcome.phi(), r.t_drive, n);
            }
        }
        clock += r.t_drive;
    }
    write_plot_script(path, "single feedback trajectory", "omega0 t", "<n>", "using 2:6 with linespoints");
    out << "cycles=" << recs.size() << " final_n=" << format_double(recs.back().n_after) << "\n";
    return kExitOk;
}

int cmd_ensemble(const RunConfig &cfg, const std::string &path, int workers, std::ostream &out) {
    if (cfg.trajectory.fixed_duration) {
        TrajectoryConfig tc = cfg.trajectory;
        if (!(tc.sample_interval > 0.0)) {
            throw ConfigError("sample.interval: value 0 outside accepted range (0, inf) for a fixed-duration ensemble");
        }
        auto res = run_ensemble_timeseries(tc, cfg.n_traj, workers);
        write_ensemble(path, cfg, res, "omega0 t");
        out << "time-resolved single cycle: bins=" << res.x.size() << " n_traj=" << cfg.n_traj << "\n";
    } else {
        auto res = run_ensemble(cfg.trajectory, cfg.n_traj, workers);
        write_ensemble(path, cfg, res, "cycle");
        auto st = res.stats();
        out << "final mean_n=" << format_double(st.mean.back()) << " stderr=" << format_double(st.stderr_.back())
            << "\n";
    }
    return kExitOk;
}

int cmd_dissipative(const RunConfig &cfg, const std::string &path, int workers, std::ostream &out) {
    auto res = run_dissipative_protocol(cfg.trajectory, cfg.bath, cfg.n_traj, workers);
    write_ensemble(path, cfg, res, "cycle");
    std::size_t first = std::min<std::size_t>(8, res.x.size() - 1);
    auto [m, se] = res.pooled_mean(first);
    out << "steady mean_n (cycles >= " << first << ")=" << format_double(m) << " stderr=" << format_double(se)
        << " nbar_B=" << format_double(cfg.bath.nbar_B) << "\n";
    return kExitOk;
}

int cmd_steady_state(const RunConfig &cfg, const std::string &path, std::ostream &out) {
    CycleMap map(cfg.steady_r0_max + cfg.quad.r_extra + 4.0, cfg.quad);
    CsvWriter w(path, cfg, "r0,n_cycles,n_expected");
    for (long i = 0;; ++i) {
        double r0 = static_cast<double>(i) * cfg.steady_r0_step;
        if (r0 > cfg.steady_r0_max + 1e-12) {
            break;
        }
        auto seq = map.iterate(r0, cfg.steady_n_cycles);
        for (std::size_t k = 0; k < seq.size(); ++k) {
            w.row(r0, k, seq[k]);
        }
    }
    write_plot_script(path, "occupation after repeated cycles", "|xi|", "<n>",
                      "using 1:($2==1?$3:1/0) title 'N_c=1', '' using 1:($2==4?$3:1/0) title 'N_c=4'");
    double n_f = map.stationary_occupation();
    FixedPoint fp = find_fixed_point(cfg.quad);
    out << "n_f=" << format_double(n_f) << "\n";
    out << "invariant_cycle r_star=" << format_double(fp.r_star) << " n_root=" << format_double(fp.n_f) << "\n";
    return kExitOk;
}

int cmd_errors(const RunConfig &cfg, const std::string &path, std::ostream &out) {
    DriveParams drive(cfg.trajectory.drive.lambda(), 2.0, cfg.phi_p);
    PQSolution pq = solve_pq(drive, cfg.sweep_t_end, cfg.trajectory.ode);
    CsvWriter w(path, cfg,
                "t,delta_P,delta_Q,defect_numeric,defect_two_timescale,defect_predicted,defect_perturbative");
    double worst = 0.0;
    for (long i = 0;; ++i) {
        double t = static_cast<double>(i) * cfg.sweep_dt;
        if (t > cfg.sweep_t_end + 1e-12) {
            break;
        }
        t = std::min(t, cfg.sweep_t_end);
        PQSample num = pq.at(t);
        PQSample tts = pq_two_timescale(t, drive);
        double dn = bogoliubov_from_pq(num).defect();
        worst = std::max(worst, std::abs(dn));
        w.row(t, tts.P - num.P, tts.Q - num.Q, dn, bogoliubov_from_pq(tts).defect(),
              defect_predicted_two_timescale(t, drive), bogoliubov_perturbative(t, drive).defect());
    }
    write_plot_script(path, "approximation error", "omega0 t", "error",
                      "using 1:2 with lines, '' using 1:3 with lines");
    out << "max |numeric defect|=" << format_double(worst) << "\n";
    return kExitOk;
}

int cmd_squeezing(const RunConfig &cfg, const std::string &path, std::ostream &out) {
    DriveParams drive(cfg.trajectory.drive.lambda(), 2.0, cfg.phi_p);
    PQSolution pq = solve_pq(drive, cfg.sweep_t_end, cfg.trajectory.ode);
    CsvWriter w(path, cfg, "t,lambda_t,r_sq,theta_sq,varphi");
    SqueezeDecomp last;
    for (long i = 0;; ++i) {
        double t = static_cast<double>(i) * cfg.sweep_dt;
        if (t > cfg.sweep_t_end + 1e-12) {
            break;
        }
        last = decompose(pq.at(std::min(t, cfg.sweep_t_end)));
        w.row(t, rsq_linear(t, drive), last.r_sq, last.theta_sq, last.varphi);
    }
    write_plot_script(path, "squeezing magnitude", "lambda t", "r_sq", "using 2:3 with lines, '' using 2:2 with lines");
    out << "final r_sq=" << format_double(last.r_sq) << "\n";
    return kExitOk;
}

int cmd_validate(std::ostream &out) {
    auto checks = run_validation_suite();
    int failed = 0;
    for (const auto &c : checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << format_double(c.value)
            << " reference=" << format_double(c.reference) << " tol=" << c.tolerance << "\n";
        failed += c.pass ? 0 : 1;
    }
    out << checks.size() - static_cast<std::size_t>(failed) << "/" << checks.size() << " checks passed\n";
    return failed == 0 ? kExitOk : kExitValidation;
}

}  // namespace

int run_subcommand(const RunConfig &cfg, const std::string &output, int workers, std::ostream &out) {
    const std::string &sub = cfg.subcommand;
    std::string path = output.empty() ? sub + ".csv" : output;
    if (sub == "trajectory") return cmd_trajectory(cfg, path, out);
    if (sub == "ensemble") return cmd_ensemble(cfg, path, workers, out);
    if (sub == "dissipative") return cmd_dissipative(cfg, path, workers, out);
    if (sub == "steady-state") return cmd_steady_state(cfg, path, out);
    if (sub == "errors") return cmd_errors(cfg, path, out);
    if (sub == "squeezing") return cmd_squeezing(cfg, path, out);
    if (sub == "validate") return cmd_validate(out);
    throw ConfigError("unknown subcommand '" + sub + "'");
}

}  // namespace paracool
