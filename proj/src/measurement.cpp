#include "paracool/measurement.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "paracool/errors.hpp"

namespace paracool {

bool HusimiParams::is_valid(double tol) const {
    if (sigma[0][1] != sigma[1][0]) {
        return false;
    }
    double a = sigma[0][0], b = sigma[0][1], c = sigma[1][1];
    double mean = 0.5 * (a + c);
    double rad = std::hypot(0.5 * (a - c), b);
    return mean - rad >= 0.5 - tol;
}

HusimiParams husimi_params(const GaussianState &g) {
    HusimiParams h;
    h.mu = {g.mean_x / std::sqrt(2.0), g.mean_p / std::sqrt(2.0)};
    h.sigma[0][0] = 0.5 * (g.s_xx + 0.5);
    h.sigma[0][1] = 0.5 * g.s_xp;
    h.sigma[1][0] = 0.5 * g.s_xp;
    h.sigma[1][1] = 0.5 * (g.s_pp + 0.5);
    return h;
}

CoherentState sample_heterodyne(const GaussianState &g, RngStream &rng) {
    HusimiParams h = husimi_params(g);
    double l11 = std::sqrt(h.sigma[0][0]);
    double l21 = h.sigma[1][0] / l11;
    double l22 = std::sqrt(std::max(0.0, h.sigma[1][1] - l21 * l21));
    double z1 = rng.normal();
    double z2 = rng.normal();
    return CoherentState::from_complex(cplx(h.mu[0] + l11 * z1, h.mu[1] + l21 * z1 + l22 * z2));
}

double squeezed_coherent_prob(cplx xi1, double xi0, double r_sq) {
    if (!(r_sq >= 0.0)) {
        throw InvalidParameter("r_sq must be >= 0");
    }
    if (!(xi0 >= 0.0)) {
        throw InvalidParameter("xi0 must be real and >= 0");
    }
    double ch = std::cosh(r_sq);
    double th = std::tanh(r_sq);
    double re2 = xi1.real() * xi1.real() - xi1.imag() * xi1.imag();
    double expo = -xi0 * xi0 - std::norm(xi1) - th * re2 + th * xi0 * xi0 + 2.0 * xi0 * xi1.real() / ch;
    return std::exp(expo) / (kPi * ch);
}

cplx homodyne_fock_overlap(double x, double theta, int n) {
    if (n < 0 || n > kMaxHermiteIndex) {
        std::ostringstream msg;
        msg << "Fock index " << n << " outside the stable range [0, " << kMaxHermiteIndex << "]";
        throw InvalidParameter(msg.str());
    }
    double prev = 0.0;
    double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    for (int k = 0; k < n; ++k) {
        double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur * std::polar(1.0, -n * theta);
}

double default_homodyne_damping() { return std::sqrt(std::tanh(1.0)); }

HomodyneMoments homodyne_moments(double x, int n_max, double damping, double tol) {
    if (n_max < 2 || n_max > kMaxHermiteIndex) {
        throw InvalidParameter("n_max must lie in [2, 100000]");
    }
    if (!(damping > 0.0 && damping <= 1.0)) {
        throw InvalidParameter("damping must lie in (0, 1]");
    }
    // damped Hermite functions c_n = damping^n psi_n(x), n = 0..n_max+2
    std::vector<double> c(static_cast<std::size_t>(n_max) + 3);
    c[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    c[1] = damping * std::sqrt(2.0) * x * c[0];
    for (std::size_t k = 1; k + 1 < c.size(); ++k) {
        double kk = static_cast<double>(k);
        c[k + 1] = damping * std::sqrt(2.0 / (kk + 1)) * x * c[k] - damping * damping * std::sqrt(kk / (kk + 1)) * c[k - 1];
    }
    const bool normalize = damping < 1.0;
    double z = 0.0, nsum = 0.0, xsum = 0.0;
    double prev_n = 0.0, prev_x = 0.0;
    for (int k = 0; k <= n_max; ++k) {
        double kk = static_cast<double>(k);
        z += c[k] * c[k];
        nsum += kk * c[k] * c[k];
        xsum += c[k] * c[k + 2] * std::sqrt((kk + 1) * (kk + 2));
        if (k == n_max - 1) {
            prev_n = normalize ? nsum / z : nsum;
            prev_x = normalize ? xsum / z : xsum;
        }
    }
    HomodyneMoments m;
    m.n = normalize ? nsum / z : nsum;
    m.xbar = normalize ? xsum / z : xsum;
    m.converged = std::abs(m.n - prev_n) <= tol * std::max(1.0, std::abs(m.n)) &&
                  std::abs(m.xbar - prev_x) <= tol * std::max(1.0, std::abs(m.xbar));
    return m;
}

HomodyneMoments xbar_theta(double x, int n_max, double damping) { return homodyne_moments(x, n_max, damping); }

double occupation_homodyne_firstorder(double x, double theta, double t, const DriveParams &drive, int n_max,
                                      double damping) {
    HomodyneMoments m = homodyne_moments(x, n_max, damping);
    if (!m.converged) {
        throw ConvergenceError("homodyne Hermite series did not converge; lower the damping or raise n_max");
    }
    double lam = drive.lambda();
    double ph = drive.phi_p();
    return m.n + lam * (m.n * (std::cos(ph) - std::cos(2.0 * t + ph)) - 2.0 * t * m.xbar * std::sin(2.0 * theta + ph));
}

double homodyne_cooling_phase(double x, double theta, int n_max, double damping) {
    HomodyneMoments m = homodyne_moments(x, n_max, damping);
    return reduce_angle((m.xbar < 0.0 ? 1.5 * kPi : 0.5 * kPi) - 2.0 * theta);
}

}  // namespace paracool
