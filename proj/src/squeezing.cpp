#include "paracool/squeezing.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "paracool/errors.hpp"

namespace paracool {

JCoeffs JTrajectory::at(double t) const {
    auto a = j0p_(t);
    auto b = jm_(t);
    return {a[0], a[1], b[0]};
}

JTrajectory solve_j_odes(const DriveParams &drive, double t_end, const SolverSettings &settings) {
    if (!(t_end > 0.0)) {
        throw InvalidParameter("solve_j_odes needs t_end > 0");
    }
    if (t_end > pq_horizon_limit(drive)) {
        std::ostringstream msg;
        msg << "t_end = " << t_end << " exceeds the horizon guard 200/lambda = " << pq_horizon_limit(drive);
        throw InvalidParameter(msg.str());
    }
    auto rhs = [&drive](double t, const std::array<double, 2> &y, std::array<double, 2> &dy) {
        double f = drive.f(t);
        dy[0] = 1.0 + 2.0 * f * (1.0 - std::sin(2.0 * y[0]) * std::tanh(4.0 * y[1]));
        dy[1] = f * std::cos(2.0 * y[0]);
    };
    auto j0p = integrate_dop853<2>(rhs, 0.0, {0.0, 0.0}, t_end, settings);
    auto rhs_m = [&drive, &j0p](double t, const std::array<double, 1> &, std::array<double, 1> &dy) {
        auto y = j0p(t);
        dy[0] = drive.f(t) * std::sin(2.0 * y[0]) / std::cosh(4.0 * y[1]);
    };
    // J- has no feedback on (J0, J+); its steps must still resolve the drive period
    SolverSettings sm = settings;
    sm.max_step = sm.max_step > 0.0 ? std::min(sm.max_step, 0.5) : 0.5;
    auto jm = integrate_dop853<1>(rhs_m, 0.0, {0.0}, t_end, sm);
    return JTrajectory(std::move(j0p), std::move(jm));
}

JCoeffs j_from_bogoliubov(const BogoliubovPair &bog, double j0_reference) {
    cplx ab = bog.alpha * std::conj(bog.beta);
    JCoeffs j;
    j.Jp = 0.25 * std::asinh(2.0 * ab.imag());
    j.Jm = 0.25 * std::asinh(2.0 * ab.real() / std::cosh(4.0 * j.Jp));
    double base = -0.5 * std::arg(bog.alpha * bog.alpha - bog.beta * bog.beta);
    j.J0 = base + kPi * std::round((j0_reference - base) / kPi);
    return j;
}

JCoeffs j_from_pq(const PQSolution &pq, double t) {
    if (t < 0.0 || t > pq.t_end() * (1.0 + 1e-12)) {
        throw InvalidParameter("j_from_pq: time outside the solved range");
    }
    int n = static_cast<int>(std::ceil(t / 0.25));
    double ref = 0.0;
    for (int k = 1; k < n; ++k) {
        double tk = t * k / n;
        ref = j_from_bogoliubov(bogoliubov_from_pq(pq.at(tk)), ref).J0;
    }
    return j_from_bogoliubov(bogoliubov_from_pq(pq.at(t)), ref);
}

BogoliubovPair bogoliubov_from_j(const JCoeffs &j) {
    const cplx i(0.0, 1.0);
    double cp = std::cosh(2.0 * j.Jp), sp = std::sinh(2.0 * j.Jp);
    double cm = std::cosh(2.0 * j.Jm), sm = std::sinh(2.0 * j.Jm);
    cplx ph = std::exp(-i * j.J0);
    return {ph * cplx(cp * cm, -sp * sm), ph * cplx(cp * sm, -sp * cm)};
}

SqueezeDecomp decompose(const BogoliubovPair &bog) {
    double s = 2.0 * (std::norm(bog.alpha) + std::norm(bog.beta));
    double x2 = 1.0 - 4.0 / (2.0 + s);
    double x = std::sqrt(std::max(0.0, x2));
    if (x >= 1.0) {
        if (x - 1.0 <= 1e-12) {
            std::cerr << "warning: squeeze arctanh argument " << x << " clamped below 1\n";
            x = std::nextafter(1.0, 0.0);
        } else {
            throw ConvergenceError("squeeze arctanh argument exceeds 1");
        }
    }
    SqueezeDecomp d;
    d.r_sq = std::atanh(x);
    d.varphi = reduce_angle(-std::arg(bog.alpha));
    d.theta_sq = std::abs(bog.beta) > 0.0 ? reduce_angle(std::arg(bog.beta) - std::arg(bog.alpha)) : 0.0;
    return d;
}

SqueezeDecomp decompose(const PQSample &pq) { return decompose(bogoliubov_from_pq(pq)); }

SqueezeDecomp decompose(const JCoeffs &j) { return decompose(bogoliubov_from_j(j)); }

BogoliubovPair reconstruct(const SqueezeDecomp &d) {
    cplx rot = std::polar(1.0, -d.varphi);
    return {rot * std::cosh(d.r_sq), rot * std::polar(std::sinh(d.r_sq), d.theta_sq)};
}

double rsq_linear(double t, const DriveParams &drive) { return drive.lambda() * t; }

double quanta_after_squeeze(const CoherentState &xi, double r_sq, double theta_sq) {
    if (!(r_sq >= 0.0)) {
        throw InvalidParameter("r_sq must be >= 0");
    }
    double r2 = xi.mean_quanta();
    double c = std::cosh(r_sq), s = std::sinh(r_sq);
    return r2 * c * c - 2.0 * r2 * std::cos(2.0 * xi.phi() - theta_sq) * c * s + (r2 + 1.0) * s * s;
}

double optimal_rsq(double r) {
    if (!(r >= 0.0)) {
        throw InvalidParameter("amplitude r must be >= 0");
    }
    return 0.25 * std::log1p(4.0 * r * r);
}

double optimal_time(double r, const DriveParams &drive) {
    if (!(drive.lambda() > 0.0)) {
        throw InvalidParameter("optimal_time requires lambda > 0");
    }
    return optimal_rsq(r) / drive.lambda();
}

double min_quanta(double r) {
    if (!(r >= 0.0)) {
        throw InvalidParameter("amplitude r must be >= 0");
    }
    // (sqrt(1+4r^2) - 1)/2 without cancellation at small r
    double u = 4.0 * r * r;
    return 0.5 * u / (std::sqrt(1.0 + u) + 1.0);
}

}  // namespace paracool
