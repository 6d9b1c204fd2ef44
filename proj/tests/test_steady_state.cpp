#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "paracool/errors.hpp"
#include "paracool/squeezing.hpp"
#include "paracool/steady_state.hpp"

using namespace paracool;

TEST(Kernel, NormalizationOnDefaultGrid) {
    for (double r0 = 0.0; r0 <= 10.0; r0 += 0.5) {
        EXPECT_NEAR(kernel_normalization(r0), 1.0, 1e-6) << r0;
    }
}

TEST(Kernel, NormalizationOnCoarserGrids) {
    QuadratureGrid g;
    g.n_angular = 48;
    g.panel_width = 0.75;
    for (double r0 : {0.0, 2.0, 5.0}) {
        EXPECT_NEAR(kernel_normalization(r0, g), 1.0, 1e-6);
    }
}

TEST(Kernel, ExpectedNextFromVacuum) {
    KernelIntegral k = expected_next_n(0.0);
    EXPECT_TRUE(k.converged);
    // independent 1-D radial check: int_0^inf 2 r e^{-r^2} (sqrt(1 + 4 r^2) - 1) / 2 dr
    double s = 0.0;
    double h = 1e-4;
    for (double r = h / 2; r < 12.0; r += h) {
        s += 2.0 * r * std::exp(-r * r) * min_quanta(r) * h;
    }
    EXPECT_NEAR(k.value, s, 1e-7);
    EXPECT_NEAR(k.value, 0.5456413608, 1e-9);
}

TEST(Kernel, GridValidation) {
    QuadratureGrid g;
    g.n_angular = 2;
    EXPECT_THROW(expected_next_n(1.0, g), InvalidParameter);
    EXPECT_THROW(expected_next_n(-1.0), InvalidParameter);
}

TEST(FixedPoint, FrozenRoot) {
    FixedPoint fp = find_fixed_point();
    EXPECT_NEAR(fp.n_f, 0.85140, 1e-3);
    EXPECT_NEAR(fp.r_star, 1.2555040, 1e-5);
    EXPECT_NEAR(expected_next_n(fp.r_star).value, min_quanta(fp.r_star), 1e-3);
    EXPECT_NEAR(fp.n_f, min_quanta(fp.r_star), 1e-12);
}

TEST(CycleMap, RowsSumToOne) {
    CycleMap map(16.0);
    EXPECT_LE(map.max_row_defect(), 1e-6);
}

TEST(CycleMap, StationaryOccupation) {
    CycleMap map(16.0);
    EXPECT_NEAR(map.stationary_occupation(), 0.837123, 1e-5);
}

TEST(CycleMap, SingleCycleCurveMonotone) {
    CycleMap map(16.0);
    double prev = -1.0;
    for (double r0 = 0.0; r0 <= 6.0; r0 += 0.25) {
        auto seq = map.iterate(r0, 1);
        EXPECT_NEAR(seq[0], min_quanta(r0), 1e-15);
        EXPECT_GT(seq[1], prev);
        prev = seq[1];
    }
}

TEST(CycleMap, ContractionOverSweep) {
    CycleMap map(16.0);
    std::vector<std::vector<double>> rows;
    for (double r0 = 0.0; r0 <= 6.0; r0 += 0.25) {
        rows.push_back(map.iterate(r0, 8));
    }
    double prev_spread = 1e300;
    for (std::size_t k = 1; k <= 8; ++k) {
        double lo = 1e300;
        double hi = -1e300;
        for (const auto &r : rows) {
            lo = std::min(lo, r[k]);
            hi = std::max(hi, r[k]);
        }
        EXPECT_LT(hi - lo, prev_spread) << k;
        prev_spread = hi - lo;
    }
}

TEST(CycleMap, FrozenIterates) {
    CycleMap map(16.0);
    auto a = map.iterate(0.0, 4);
    auto b = map.iterate(6.0, 4);
    EXPECT_NEAR(a[1], 0.5456414, 1e-6);
    EXPECT_NEAR(a[4], 0.8274610, 1e-6);
    EXPECT_NEAR(b[3], 0.9395224, 1e-6);
    EXPECT_NEAR(b[4], 0.8694600, 1e-6);
}

TEST(CycleMap, CoverageEnforced) {
    CycleMap map(10.0);
    EXPECT_THROW(map.iterate(6.0, 1), InvalidParameter);
    EXPECT_THROW(map.iterate(1.0, 0), InvalidParameter);
    EXPECT_NO_THROW(iterate_cycles(6.0, 1));
}
