#include <gtest/gtest.h>

#include <cmath>

#include "paracool/dynamics.hpp"
#include "paracool/errors.hpp"
#include "paracool/ode.hpp"

using namespace paracool;

TEST(Dop853, HarmonicOscillator) {
    auto rhs = [](double, const std::array<double, 2> &y, std::array<double, 2> &dy) {
        dy = {y[1], -y[0]};
    };
    auto sol = integrate_dop853<2>(rhs, 0.0, {1.0, 0.0}, 100.0, SolverSettings{});
    EXPECT_NEAR(sol.final_state()[0], std::cos(100.0), 1e-8);
    for (double t : {0.37, 12.5, 77.7}) {
        EXPECT_NEAR(sol(t)[0], std::cos(t), 1e-8);
        EXPECT_NEAR(sol(t)[1], -std::sin(t), 1e-8);
    }
}

TEST(Dop853, StepBudgetRaisesIntegrationFailure) {
    auto rhs = [](double, const std::array<double, 1> &y, std::array<double, 1> &dy) { dy = {-y[0]}; };
    SolverSettings s;
    s.max_steps = 3;
    try {
        integrate_dop853<1>(rhs, 0.0, {1.0}, 1000.0, s);
        FAIL() << "expected IntegrationFailure";
    } catch (const IntegrationFailure &e) {
        EXPECT_GT(e.last_good_time(), 0.0);
    }
}

TEST(SolvePq, FreeLimit) {
    PQSolution pq = solve_pq(DriveParams(0.0), 20.0);
    for (double t : {0.0, 1.0, 7.3, 20.0}) {
        PQSample s = pq.at(t);
        EXPECT_NEAR(s.P, std::cos(t), 1e-9);
        EXPECT_NEAR(s.Q, std::sin(t), 1e-9);
        BogoliubovPair b = bogoliubov_from_pq(s);
        EXPECT_NEAR(std::abs(b.alpha - std::exp(cplx(0, -t))), 0.0, 1e-9);
        EXPECT_NEAR(std::abs(b.beta), 0.0, 1e-9);
    }
}

TEST(SolvePq, WronskianAndNormalization) {
    for (double lam : {0.005, 0.01, 0.02, 0.05}) {
        for (double php : {0.0, kPi / 2, 2.0}) {
            PQSolution pq = solve_pq(DriveParams(lam, 2.0, php), 100.0);
            for (double t : pq.grid()) {
                PQSample s = pq.at(t);
                ASSERT_NEAR(s.wronskian(), 1.0, 1e-8) << "lambda=" << lam << " t=" << t;
                ASSERT_LE(std::abs(bogoliubov_from_pq(s).defect()), 1e-9);
            }
        }
    }
}

TEST(SolvePq, UnstableAboveThreshold) {
    PQSolution pq = solve_pq(DriveParams(0.1), 60.0);
    EXPECT_GT(std::hypot(pq.at(60.0).P, pq.at(60.0).Q), 50.0);
}

TEST(SolvePq, RangeChecks) {
    PQSolution pq = solve_pq(DriveParams(0.01), 10.0);
    EXPECT_THROW(pq.at(11.0), InvalidParameter);
    EXPECT_THROW(solve_pq(DriveParams(0.01), 1e6), InvalidParameter);
    EXPECT_THROW(pq_two_timescale(1.0, DriveParams(0.01, 1.5)), InvalidParameter);
}

TEST(TwoTimescale, Examples) {
    DriveParams d(0.01, 2.0, kPi / 2);
    PQSample s0 = pq_two_timescale(0.0, d);
    EXPECT_NEAR(s0.P, 1.0, 1e-15);
    EXPECT_NEAR(s0.dP, 0.0, 1e-15);
    EXPECT_NEAR(s0.Q, 0.0, 1e-15);
    EXPECT_NEAR(s0.dQ, 1.0, 1e-15);

    PQSample f = pq_two_timescale(2.0, DriveParams(0.0));
    EXPECT_NEAR(f.P, std::cos(2.0), 1e-15);
    EXPECT_NEAR(f.dP, -std::sin(2.0), 1e-15);
    EXPECT_NEAR(f.Q, std::sin(2.0), 1e-15);
    EXPECT_NEAR(f.dQ, std::cos(2.0), 1e-15);

    PQSolution pq = solve_pq(d, 40.0);
    for (double t = 0.0; t <= 40.0; t += 0.25) {
        EXPECT_LE(std::abs(pq_two_timescale(t, d).P - pq.at(t).P), 0.05) << t;
    }
}

TEST(TwoTimescale, DerivativesMatchFiniteDifference) {
    DriveParams d(0.02, 2.0, 0.7);
    double h = 1e-6;
    for (double t : {0.5, 13.0, 40.0}) {
        PQSample s = pq_two_timescale(t, d);
        EXPECT_NEAR(s.dP, (pq_two_timescale(t + h, d).P - pq_two_timescale(t - h, d).P) / (2 * h), 1e-7);
        EXPECT_NEAR(s.dQ, (pq_two_timescale(t + h, d).Q - pq_two_timescale(t - h, d).Q) / (2 * h), 1e-7);
    }
}

TEST(TwoTimescale, DenominatorGuard) {
    // lambda cos(phi_p) - 1 = 0 needs lambda = 1 at phi_p = 0
    EXPECT_THROW(pq_two_timescale(1.0, DriveParams(1.0, 2.0, 0.0)), InvalidParameter);
}

TEST(TwoTimescale, ExactnessPoints) {
    for (double lam : {0.005, 0.01, 0.02}) {
        DriveParams d(lam, 2.0, kPi / 2);
        for (int k = 0; k <= 30; ++k) {
            EXPECT_LE(std::abs(bogoliubov_from_pq(pq_two_timescale(k * kPi, d)).defect()), 1e-4);
        }
    }
}

TEST(TwoTimescale, PredictedDefectMatchesPair) {
    for (double php : {0.0, 1.0, kPi / 2}) {
        DriveParams d(0.01, 2.0, php);
        for (double t = 0.0; t <= 60.0; t += 0.7) {
            double actual = bogoliubov_from_pq(pq_two_timescale(t, d)).defect();
            EXPECT_NEAR(actual, defect_predicted_two_timescale(t, d), 1e-3) << t;
        }
    }
}

TEST(BogoliubovApprox, Examples) {
    DriveParams d(0.01, 2.0, kPi / 2);
    BogoliubovPair b0 = bogoliubov_two_timescale(0.0, d);
    EXPECT_NEAR(std::abs(b0.alpha - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(b0.beta), 0.0, 1e-15);
    EXPECT_NEAR(defect_predicted_two_timescale(kPi, d), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(bogoliubov_two_timescale(50.0, d).beta), 0.5, 1e-12);
    EXPECT_NEAR(defect_predicted_two_timescale(kPi / 4, d), 0.01, 1e-15);
    EXPECT_NEAR(defect_predicted_two_timescale(0.0, DriveParams(0.01, 2.0, 0.0)), 0.0, 1e-15);

    BogoliubovPair p0 = bogoliubov_perturbative(0.0, d);
    EXPECT_NEAR(std::abs(p0.alpha - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p0.beta), 0.0, 1e-15);
    EXPECT_NEAR(bogoliubov_perturbative(30.0, d).defect(), -0.09, 3 * 0.01);
}

TEST(BogoliubovApprox, PerturbativeEnvelope) {
    for (double lam : {0.005, 0.01, 0.02}) {
        DriveParams d(lam, 2.0, kPi / 2);
        for (double t = 0.0; t <= 50.0; t += 0.05) {
            EXPECT_LE(std::abs(bogoliubov_perturbative(t, d).defect() + lam * lam * t * t), 3 * lam);
        }
    }
}

TEST(BogoliubovApprox, PerturbativeBetterAtShortTimes) {
    DriveParams d(0.02, 2.0, kPi / 2);
    PQSolution pq = solve_pq(d, 5.0);
    double err_pert = 0.0;
    double err_tt = 0.0;
    for (double t = 0.1; t <= 5.0; t += 0.1) {
        BogoliubovPair exact = bogoliubov_from_pq(pq.at(t));
        BogoliubovPair p = bogoliubov_perturbative(t, d);
        BogoliubovPair tt = bogoliubov_two_timescale(t, d);
        err_pert = std::max(err_pert, std::abs(p.alpha - exact.alpha) + std::abs(p.beta - exact.beta));
        err_tt = std::max(err_tt, std::abs(tt.alpha - exact.alpha) + std::abs(tt.beta - exact.beta));
    }
    EXPECT_LT(err_pert, err_tt);
}

TEST(BogoliubovApprox, FreeLimit) {
    DriveParams d(0.0);
    SolverSettings tight;
    tight.rel_tol = 1e-12;
    tight.abs_tol = 1e-14;
    for (double t : {0.3, 4.0, 25.0}) {
        cplx free = std::exp(cplx(0, -t));
        for (BogoliubovPair b : {bogoliubov_two_timescale(t, d), bogoliubov_perturbative(t, d),
                                 bogoliubov_from_pq(solve_pq(d, t, tight).at(t))}) {
            EXPECT_NEAR(std::abs(b.alpha - free), 0.0, 1e-10);
            EXPECT_NEAR(std::abs(b.beta), 0.0, 1e-10);
        }
    }
}

TEST(PqFromBogoliubov, RoundTrip) {
    PQSolution pq = solve_pq(DriveParams(0.02, 2.0, 0.4), 30.0);
    PQSample s = pq.at(17.0);
    PQSample back = pq_from_bogoliubov(bogoliubov_from_pq(s), 17.0);
    EXPECT_NEAR(back.P, s.P, 1e-14);
    EXPECT_NEAR(back.dP, s.dP, 1e-14);
    EXPECT_NEAR(back.Q, s.Q, 1e-14);
    EXPECT_NEAR(back.dQ, s.dQ, 1e-14);
}

TEST(MathieuParams, Examples) {
    EXPECT_EQ(mathieu_params(DriveParams(0.01)), std::make_pair(1.0, -0.02));
    EXPECT_EQ(mathieu_params(DriveParams(0.5)), std::make_pair(1.0, -1.0));
    EXPECT_EQ(mathieu_params(DriveParams(0.25)), std::make_pair(1.0, -0.5));
}
