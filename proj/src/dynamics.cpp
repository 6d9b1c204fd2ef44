#include "paracool/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "paracool/errors.hpp"

namespace paracool {

void require_parametric(const DriveParams &drive, const char *op) {
    if (!drive.is_parametric()) {
        std::ostringstream msg;
        msg << op << " requires omega_p = 2, got " << drive.omega_p();
        throw InvalidParameter(msg.str());
    }
}

PQSolution::PQSolution(DenseSolution<4> dense, DriveParams drive) : dense_(std::move(dense)), drive_(drive) {}

PQSample PQSolution::at(double t) const {
    double end = t_end();
    double slack = 1e-12 * std::max(1.0, end);
    if (t < -slack || t > end + slack) {
        std::ostringstream msg;
        msg << "time " << t << " outside solved range [0, " << end << "]";
        throw InvalidParameter(msg.str());
    }
    auto y = dense_(t);
    return {t, y[0], y[1], y[2], y[3]};
}

double pq_horizon_limit(const DriveParams &drive) {
    return drive.lambda() > 0.0 ? 200.0 / drive.lambda() : std::numeric_limits<double>::infinity();
}

PQSolution solve_pq(const DriveParams &drive, double t_end, const SolverSettings &settings) {
    if (!(t_end > 0.0)) {
        throw InvalidParameter("solve_pq needs t_end > 0");
    }
    if (t_end > pq_horizon_limit(drive)) {
        std::ostringstream msg;
        msg << "t_end = " << t_end << " exceeds the horizon guard 200/lambda = " << pq_horizon_limit(drive);
        throw InvalidParameter(msg.str());
    }
    auto rhs = [&drive](double t, const std::array<double, 4> &y, std::array<double, 4> &dy) {
        double w2 = 1.0 + 4.0 * drive.f(t);
        dy[0] = y[1];
        dy[1] = -w2 * y[0];
        dy[2] = y[3];
        dy[3] = -w2 * y[2];
    };
    auto dense = integrate_dop853<4>(rhs, 0.0, {1.0, 0.0, 0.0, 1.0}, t_end, settings);
    return PQSolution(std::move(dense), drive);
}

PQSample pq_two_timescale(double t, const DriveParams &drive) {
    require_parametric(drive, "pq_two_timescale");
    double lam = drive.lambda();
    double ph = drive.phi_p();
    double den = lam * std::cos(ph) - 1.0;
    if (std::abs(den) <= 1e-9) {
        throw InvalidParameter("two-timescale denominator lambda cos(phi_p) - 1 vanishes");
    }
    double C = std::cosh(lam * t);
    double S = std::sinh(lam * t);
    double ct = std::cos(t), st = std::sin(t);
    double cp = std::cos(t + ph), sp = std::sin(t + ph);

    double u = lam * cp - ct;   // multiplies C in P
    double v = sp - lam * st;   // multiplies S in P
    PQSample out;
    out.t = t;
    out.P = (u * C + v * S) / den;
    out.dP = ((-lam * sp + st) * C + lam * u * S + (cp - lam * ct) * S + lam * v * C) / den;
    out.Q = (cp * S - st * C) / den;
    out.dQ = (-sp * S + lam * cp * C - ct * C - lam * st * S) / den;
    return out;
}

BogoliubovPair bogoliubov_from_pq(const PQSample &pq) {
    const cplx i(0.0, 1.0);
    BogoliubovPair b;
    b.alpha = 0.5 * (pq.P - i * pq.Q + i * pq.dP + pq.dQ);
    b.beta = 0.5 * (pq.P + i * pq.Q + i * pq.dP - pq.dQ);
    return b;
}

PQSample pq_from_bogoliubov(const BogoliubovPair &bog, double t) {
    cplx sum = bog.alpha + bog.beta;
    cplx diff = bog.alpha - bog.beta;
    return {t, sum.real(), sum.imag(), -diff.imag(), diff.real()};
}

BogoliubovPair bogoliubov_two_timescale(double t, const DriveParams &drive) {
    require_parametric(drive, "bogoliubov_two_timescale");
    const cplx i(0.0, 1.0);
    double lam = drive.lambda();
    double ph = drive.phi_p();
    BogoliubovPair b;
    b.alpha = std::exp(-i * t) - i * lam * std::exp(i * ph) * std::sin(t);
    b.beta = -i * lam * t * std::exp(-i * (t + ph));
    return b;
}

BogoliubovPair bogoliubov_perturbative(double t, const DriveParams &drive) {
    require_parametric(drive, "bogoliubov_perturbative");
    const cplx i(0.0, 1.0);
    double lam = drive.lambda();
    double ph = drive.phi_p();
    BogoliubovPair b;
    b.alpha = std::exp(-i * t) * (1.0 - 2.0 * i * lam * std::cos(t + ph) * std::sin(t));
    b.beta = -i * (lam / 2.0) * std::exp(-i * (t + ph)) * (2.0 * t + std::exp(2.0 * i * (t + ph)) * std::sin(2.0 * t));
    return b;
}

double defect_predicted_two_timescale(double t, const DriveParams &drive) {
    require_parametric(drive, "defect_predicted_two_timescale");
    double lam = drive.lambda();
    double ph = drive.phi_p();
    return (1.0 - lam * std::cos(2.0 * t + ph)) / (1.0 - lam * std::cos(ph)) - 1.0;
}

std::pair<double, double> mathieu_params(const DriveParams &drive) {
    require_parametric(drive, "mathieu_params");
    return {1.0, -2.0 * drive.lambda()};
}

}  // namespace paracool
