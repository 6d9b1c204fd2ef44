#include "paracool/core.hpp"

#include <cmath>
#include <sstream>

#include "paracool/errors.hpp"

namespace paracool {

double reduce_angle(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // fmod of a value just below a multiple of 2 pi can round up to 2 pi
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r;
}

double circular_distance(double a, double b) {
    double d = reduce_angle(a - b);
    return d > kPi ? kTwoPi - d : d;
}

bool angles_equal(double a, double b, double tol) { return circular_distance(a, b) <= tol; }

DriveParams::DriveParams(double lambda, double omega_p, double phi_p)
    : lambda_(lambda), omega_p_(omega_p), phi_p_(reduce_angle(phi_p)) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        std::ostringstream msg;
        msg << "drive strength lambda must be finite and >= 0, got " << lambda;
        throw InvalidParameter(msg.str());
    }
    if (!(omega_p > 0.0) || !std::isfinite(omega_p)) {
        std::ostringstream msg;
        msg << "pump frequency omega_p must be finite and > 0, got " << omega_p;
        throw InvalidParameter(msg.str());
    }
    if (!std::isfinite(phi_p)) {
        throw InvalidParameter("pump phase phi_p must be finite");
    }
}

double DriveParams::f(double t) const { return lambda_ * std::cos(omega_p_ * t + phi_p_); }

bool DriveParams::is_parametric() const { return std::abs(omega_p_ - 2.0) <= 1e-12; }

CoherentState::CoherentState(double r, double phi) : r_(r), phi_(reduce_angle(phi)) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw InvalidParameter("coherent amplitude r must be finite and >= 0");
    }
}

CoherentState CoherentState::from_complex(cplx xi) {
    double r = std::abs(xi);
    return CoherentState(r, r > 0.0 ? std::arg(xi) : 0.0);
}

GaussianState GaussianState::coherent(const CoherentState &xi) {
    GaussianState g;
    cplx v = xi.value();
    g.mean_x = std::sqrt(2.0) * v.real();
    g.mean_p = std::sqrt(2.0) * v.imag();
    return g;
}

GaussianState GaussianState::thermal(double nbar) {
    if (!(nbar >= 0.0)) {
        throw InvalidParameter("thermal occupation must be >= 0");
    }
    GaussianState g;
    g.s_xx = nbar + 0.5;
    g.s_pp = nbar + 0.5;
    return g;
}

cplx GaussianState::mean_a() const { return cplx(mean_x, mean_p) / std::sqrt(2.0); }

cplx GaussianState::second_moment_a2() const {
    cplx m = mean_a();
    return m * m + 0.5 * cplx(s_xx - s_pp, 2.0 * s_xp);
}

bool GaussianState::is_physical(double tol) const {
    return s_xx > 0.0 && s_pp > 0.0 && covariance_det() >= 0.25 - tol;
}

double occupation_general(const BogoliubovPair &bog, double n0, cplx a2) {
    double a = std::norm(bog.alpha);
    double b = std::norm(bog.beta);
    return a * n0 + b * (n0 + 1.0) + 2.0 * std::real(bog.alpha * std::conj(bog.beta) * a2);
}

double occupation_coherent_exact(const BogoliubovPair &bog, const CoherentState &xi) {
    cplx v = xi.value();
    double r2 = xi.mean_quanta();
    double a = std::norm(bog.alpha);
    double b = std::norm(bog.beta);
    cplx cross = std::conj(bog.alpha) * bog.beta * std::conj(v * v);
    return (a + b) * r2 + b + 2.0 * cross.real();
}

double occupation_coherent_firstorder(double t, const DriveParams &drive, double phi) {
    double lam = drive.lambda();
    double php = drive.phi_p();
    return 1.0 + lam * (std::cos(php) - std::cos(2.0 * t + php) - 2.0 * t * std::sin(2.0 * phi + php));
}

double occupation_thermal(const BogoliubovPair &bog, const ThermalParams &th) {
    return th.nbar + (1.0 + 2.0 * th.nbar) * std::norm(bog.beta);
}

double cooling_phase(double phi) { return reduce_angle(kPi / 2 - 2.0 * phi); }

double occupation_from_moments(const GaussianState &g) {
    return 0.5 * (g.s_xx + g.s_pp + g.mean_x * g.mean_x + g.mean_p * g.mean_p - 1.0);
}

GaussianState rotate_state(const GaussianState &g, double angle) {
    double c = std::cos(angle);
    double s = std::sin(angle);
    // x' = c x + s p, p' = -s x + c p
    GaussianState out;
    out.mean_x = c * g.mean_x + s * g.mean_p;
    out.mean_p = -s * g.mean_x + c * g.mean_p;
    out.s_xx = c * c * g.s_xx + 2.0 * c * s * g.s_xp + s * s * g.s_pp;
    out.s_pp = s * s * g.s_xx - 2.0 * c * s * g.s_xp + c * c * g.s_pp;
    out.s_xp = -c * s * g.s_xx + (c * c - s * s) * g.s_xp + c * s * g.s_pp;
    return out;
}

CoherentState rotate_state(const CoherentState &xi, double angle) {
    return CoherentState(xi.r(), xi.phi() - angle);
}

double modulation_depth(const DriveParams &drive) { return 4.0 * drive.lambda(); }

GaussianState apply_bogoliubov(const GaussianState &g, const BogoliubovPair &bog) {
    // Heisenberg-picture quadratures: x(t) = P x + Q p, p(t) = dP x + dQ p.
    cplx sum = bog.alpha + bog.beta;
    cplx diff = bog.alpha - bog.beta;
    double p = sum.real();
    double dp = sum.imag();
    double q = -diff.imag();
    double dq = diff.real();

    GaussianState out;
    out.mean_x = p * g.mean_x + q * g.mean_p;
    out.mean_p = dp * g.mean_x + dq * g.mean_p;
    out.s_xx = p * p * g.s_xx + 2.0 * p * q * g.s_xp + q * q * g.s_pp;
    out.s_pp = dp * dp * g.s_xx + 2.0 * dp * dq * g.s_xp + dq * dq * g.s_pp;
    out.s_xp = p * dp * g.s_xx + (p * dq + q * dp) * g.s_xp + q * dq * g.s_pp;
    return out;
}

}  // namespace paracool
