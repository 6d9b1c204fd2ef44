#include "paracool/steady_state.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>

#include "paracool/core.hpp"
#include "paracool/errors.hpp"
#include "paracool/measurement.hpp"
#include "paracool/squeezing.hpp"

namespace paracool {

void QuadratureGrid::validate() const {
    if (!(r_extra > 0.0)) {
        throw InvalidParameter("quad.r_extra must be > 0");
    }
    if (n_angular < 8) {
        throw InvalidParameter("quad.n_angular must be >= 8");
    }
    if (!(panel_width > 0.0)) {
        throw InvalidParameter("quad.panel_width must be > 0");
    }
    if (!(tolerance > 0.0)) {
        throw InvalidParameter("quad.tolerance must be > 0");
    }
}

void radial_rule(double r_max, const QuadratureGrid &grid, std::vector<double> &nodes, std::vector<double> &weights) {
    using rule = boost::math::quadrature::gauss<double, 20>;
    const auto &x = rule::abscissa();
    const auto &w = rule::weights();
    auto panels = static_cast<int>(std::ceil(r_max / grid.panel_width));
    double width = r_max / panels;
    nodes.clear();
    weights.clear();
    for (int p = 0; p < panels; ++p) {
        double mid = (p + 0.5) * width;
        double half = 0.5 * width;
        // abscissa() holds the non-negative half of a symmetric rule
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (x[k] == 0.0) {
                nodes.push_back(mid);
                weights.push_back(half * w[k]);
                continue;
            }
            nodes.push_back(mid - half * x[k]);
            weights.push_back(half * w[k]);
            nodes.push_back(mid + half * x[k]);
            weights.push_back(half * w[k]);
        }
    }
}

namespace {

// 2 pi-periodic trapezoid of the outcome density around a circle of radius rho
double ring_density(double rho, double r0, double r_sq, int n_angular) {
    double s = 0.0;
    double dth = kTwoPi / n_angular;
    for (int k = 0; k < n_angular; ++k) {
        s += squeezed_coherent_prob(std::polar(rho, k * dth), r0, r_sq);
    }
    return s * dth * rho;
}

double outcome_radius(double r0) { return r0 * std::exp(optimal_rsq(r0)); }

}  // namespace

KernelIntegral expected_next_n(double r0, const QuadratureGrid &grid) {
    grid.validate();
    if (!(r0 >= 0.0)) {
        throw InvalidParameter("r0 must be >= 0");
    }
    double r_sq = optimal_rsq(r0);
    std::vector<double> nodes, weights;
    radial_rule(outcome_radius(r0) + grid.r_extra, grid, nodes, weights);
    KernelIntegral out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        double m = weights[i] * ring_density(nodes[i], r0, r_sq, grid.n_angular);
        out.normalization += m;
        out.value += m * min_quanta(nodes[i]);
    }
    out.converged = std::abs(out.normalization - 1.0) <= grid.tolerance;
    return out;
}

double kernel_normalization(double r0, const QuadratureGrid &grid) { return expected_next_n(r0, grid).normalization; }

CycleMap::CycleMap(double r_cover, const QuadratureGrid &grid) : r_cover_(r_cover), grid_(grid) {
    grid.validate();
    if (!(r_cover > 0.0)) {
        throw InvalidParameter("cycle map radius must be > 0");
    }
    radial_rule(r_cover, grid, nodes_, weights_);
    const std::size_t n = nodes_.size();
    T_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double r_sq = optimal_rsq(nodes_[i]);
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double m = weights_[j] * ring_density(nodes_[j], nodes_[i], r_sq, grid.n_angular);
            T_[i * n + j] = m;
            row += m;
        }
        max_row_defect_ = std::max(max_row_defect_, std::abs(row - 1.0));
    }
}

std::vector<double> CycleMap::outcome_distribution(double r0) const {
    double r_sq = optimal_rsq(r0);
    std::vector<double> p(nodes_.size());
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        p[j] = weights_[j] * ring_density(nodes_[j], r0, r_sq, grid_.n_angular);
    }
    return p;
}

std::vector<double> CycleMap::push(const std::vector<double> &p) const {
    const std::size_t n = nodes_.size();
    std::vector<double> q(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i] == 0.0) {
            continue;
        }
        const double *row = &T_[i * n];
        for (std::size_t j = 0; j < n; ++j) {
            q[j] += p[i] * row[j];
        }
    }
    return q;
}

double CycleMap::expected_min_quanta(const std::vector<double> &p) const {
    double s = 0.0;
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        s += p[j] * min_quanta(nodes_[j]);
    }
    return s;
}

std::vector<double> CycleMap::iterate(double r0, int n_cycles) const {
    if (n_cycles < 1) {
        throw InvalidParameter("n_cycles must be >= 1");
    }
    if (!(r0 >= 0.0)) {
        throw InvalidParameter("r0 must be >= 0");
    }
    if (r0 > r_cover_ - grid_.r_extra + 1e-12) {
        std::ostringstream msg;
        msg << "r0 = " << r0 << " is outside the cycle map coverage";
        throw InvalidParameter(msg.str());
    }
    std::vector<double> out{min_quanta(r0)};
    std::vector<double> p = outcome_distribution(r0);
    out.push_back(expected_min_quanta(p));
    for (int k = 2; k <= n_cycles; ++k) {
        p = push(p);
        out.push_back(expected_min_quanta(p));
    }
    return out;
}

double CycleMap::stationary_occupation(double tol, int max_iter) const {
    std::vector<double> p = outcome_distribution(0.0);
    double prev = expected_min_quanta(p);
    for (int k = 0; k < max_iter; ++k) {
        p = push(p);
        double total = 0.0;
        for (double v : p) {
            total += v;
        }
        for (double &v : p) {
            v /= total;
        }
        double cur = expected_min_quanta(p);
        if (std::abs(cur - prev) <= tol) {
            return cur;
        }
        prev = cur;
    }
    throw ConvergenceError("stationary distribution of the cycle map did not converge");
}

std::vector<double> iterate_cycles(double r0, int n_cycles, const QuadratureGrid &grid) {
    return CycleMap(r0 + grid.r_extra + 4.0, grid).iterate(r0, n_cycles);
}

FixedPoint find_fixed_point(const QuadratureGrid &grid, int n_scan) {
    auto g = [&](double r) {
        KernelIntegral k = expected_next_n(r, grid);
        if (!k.converged) {
            std::ostringstream msg;
            msg << "kernel normalization " << k.normalization << " missed tolerance at r = " << r;
            throw ConvergenceError(msg.str());
        }
        return k.value - min_quanta(r);
    };
    const double lo = 0.0, hi = 10.0;
    double a = lo, ga = g(a);
    int changes = 0;
    double bl = 0.0, bh = 0.0, gbl = 0.0;
    for (int k = 1; k <= n_scan; ++k) {
        double b = lo + (hi - lo) * k / n_scan;
        double gb = g(b);
        if ((ga < 0.0) != (gb < 0.0)) {
            ++changes;
            bl = a;
            bh = b;
            gbl = ga;
        }
        a = b;
        ga = gb;
    }
    if (changes != 1) {
        std::ostringstream msg;
        msg << "expected one sign change of the invariant-cycle residual on [0, 10], found " << changes;
        throw ConvergenceError(msg.str());
    }
    for (int it = 0; it < 200 && bh - bl > 1e-12; ++it) {
        double m = 0.5 * (bl + bh);
        double gm = g(m);
        if ((gm < 0.0) == (gbl < 0.0)) {
            bl = m;
            gbl = gm;
        } else {
            bh = m;
        }
    }
    FixedPoint fp;
    fp.r_star = 0.5 * (bl + bh);
    fp.n_f = min_quanta(fp.r_star);
    return fp;
}

}  // namespace paracool
