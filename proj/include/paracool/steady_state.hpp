#pragma once

// Invariant-cycle analysis: expected occupation after measure-and-squeeze
// cycles and the self-consistent steady-state occupation.

#include <vector>

namespace paracool {

/// Polar quadrature: composite 20-point Gauss-Legendre radial panels and
/// uniform angular nodes.
struct QuadratureGrid {
    /// Radial cutoff beyond the squeezed outcome scale.
    double r_extra = 6.0;
    int n_angular = 64;
    /// Radial panel width.
    double panel_width = 1.0;
    /// Target for the kernel normalization check.
    double tolerance = 1e-6;

    void validate() const;
};

struct KernelIntegral {
    double value = 0.0;
    /// Integral of the kernel alone over the same grid.
    double normalization = 0.0;
    bool converged = false;
};

/// Radial nodes and weights of the composite Gauss-Legendre rule on [0, r_max].
void radial_rule(double r_max, const QuadratureGrid &grid, std::vector<double> &nodes, std::vector<double> &weights);

/// E[min_quanta(|xi_1|)] for outcomes of the state S(-r_op(r0)) |r0>.
KernelIntegral expected_next_n(double r0, const QuadratureGrid &grid = {});

/// Same integral with a unit integrand.
double kernel_normalization(double r0, const QuadratureGrid &grid = {});

/// Radial Markov kernel of one measure-and-squeeze cycle, discretized on a
/// fixed radial grid so the full outcome distribution can be pushed forward.
class CycleMap {
  public:
    /// Covers starting amplitudes r0 <= r_cover - grid.r_extra.
    CycleMap(double r_cover, const QuadratureGrid &grid = {});

    /// Element 0 is min_quanta(r0); element k the expected occupation after k cycles.
    std::vector<double> iterate(double r0, int n_cycles) const;
    /// Expected occupation of the stationary outcome distribution.
    double stationary_occupation(double tol = 1e-12, int max_iter = 10000) const;
    /// Largest deviation of a row sum from 1.
    double max_row_defect() const { return max_row_defect_; }
    double r_cover() const { return nodes_.empty() ? 0.0 : r_cover_; }

  private:
    std::vector<double> outcome_distribution(double r0) const;
    std::vector<double> push(const std::vector<double> &p) const;
    double expected_min_quanta(const std::vector<double> &p) const;

    double r_cover_;
    QuadratureGrid grid_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    /// row-major T[i][j]: probability mass at node j given previous outcome node i
    std::vector<double> T_;
    double max_row_defect_ = 0.0;
};

/// CycleMap(r0 + r_extra + 4, grid).iterate(r0, n_cycles).
std::vector<double> iterate_cycles(double r0, int n_cycles, const QuadratureGrid &grid = {});

struct FixedPoint {
    double r_star = 0.0;
    double n_f = 0.0;
};

/// Root of expected_next_n(r) - min_quanta(r) on [0, 10]; throws
/// ConvergenceError unless exactly one sign change is found on the scan.
FixedPoint find_fixed_point(const QuadratureGrid &grid = {}, int n_scan = 40);

}  // namespace paracool
