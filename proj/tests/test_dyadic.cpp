#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "mixsmooth/dyadic.hpp"
#include "mixsmooth/error.hpp"

using namespace mixsmooth;

TEST(Cutoff, PlateauSupportAndTransition) {
    const auto phi0 = make_cutoff_1d();
    EXPECT_EQ(phi0(0.0), 1.0);
    EXPECT_EQ(phi0(1.0), 1.0);
    EXPECT_EQ(phi0(-1.0), 1.0);
    EXPECT_EQ(phi0(2.0), 0.0);
    EXPECT_EQ(phi0(1.5), 0.0);
    const double mid = phi0(1.25);
    EXPECT_GT(mid, 0.0);
    EXPECT_LT(mid, 1.0);
}

// The flat C-infinity tails round to 0 or 1 in double near the transition
// ends, so strict decrease is checked where the profile is resolvable.
TEST(Cutoff, EvenAndDecreasingOnTransition) {
    const auto phi0 = make_cutoff_1d();
    double prev = phi0(1.0);
    for (int i = 1; i < 500; ++i) {
        const double x = 1.0 + 0.5 * i / 500.0;
        const double v = phi0(x);
        if (x > 1.05 && x < 1.45) EXPECT_LT(v, prev) << "x=" << x;
        else EXPECT_LE(v, prev) << "x=" << x;
        EXPECT_EQ(v, phi0(-x));
        prev = v;
    }
}

TEST(Phi, SpecValues) {
    EXPECT_DOUBLE_EQ(phi(1, 1.75), 1.0);
    EXPECT_EQ(phi(2, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(phi(0, 0.0), 1.0);
    EXPECT_THROW(phi(-1, 0.0), InvalidParams);
}

TEST(Phi, PlateauOfEachBand) {
    // phi_j = 1 on 3/4 2^j <= |xi| <= 2^j for j >= 1.
    for (int j = 1; j <= 12; ++j)
        for (double s : {0.75, 0.8, 0.9, 1.0}) {
            EXPECT_DOUBLE_EQ(phi(j, s * std::ldexp(1.0, j)), 1.0);
            EXPECT_DOUBLE_EQ(phi(j, -s * std::ldexp(1.0, j)), 1.0);
        }
}

TEST(Phi, SupportInDyadicAnnulus) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5000.0, 5000.0);
    for (int i = 0; i < 2000; ++i) {
        const double xi = u(rng);
        for (int j = 1; j <= 10; ++j) {
            const double a = std::abs(xi);
            if (a <= std::ldexp(1.0, j - 1) || a >= 1.5 * std::ldexp(1.0, j)) EXPECT_EQ(phi(j, xi), 0.0);
        }
    }
}

TEST(Phi, TelescopingPartitionOfUnity) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-80.0, 80.0);
    for (int i = 0; i < 1000; ++i) {
        const double xi = u(rng);
        double s = 0.0;
        for (int j = 0; j <= 5; ++j) s += phi(j, xi);
        EXPECT_NEAR(s - make_cutoff_1d()(std::ldexp(xi, -5)), 0.0, 1e-14);
    }
}

TEST(Phi, SumsToOneInsideRange) {
    for (double xi = -1000.0; xi <= 1000.0; xi += 0.37) {
        double s = 0.0;
        for (int j = 0; j <= 12; ++j) s += phi(j, xi);
        EXPECT_NEAR(s, 1.0, 1e-14);
    }
}

TEST(Psi, SpecValues) {
    const std::array<double, 3> half{0.5, 0.5, 0.5};
    EXPECT_DOUBLE_EQ(psi(0, half), 1.0);
    const std::array<double, 3> x{1.75, 0.0, 0.0};
    EXPECT_DOUBLE_EQ(psi(1, x), 1.0);
    const std::array<double, 2> far{4.0, -0.3};
    EXPECT_EQ(psi(1, far), 0.0);
    EXPECT_THROW(psi(-2, half), InvalidParams);
}

TEST(Psi, CubeSystemSumsToOne) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-300.0, 300.0);
    for (int i = 0; i < 500; ++i) {
        const std::array<double, 2> x{u(rng), u(rng)};
        double s = 0.0;
        for (int j = 0; j <= 12; ++j) s += psi(j, x);
        EXPECT_NEAR(s, 1.0, 1e-14);
        EXPECT_DOUBLE_EQ(psi0(x, 12), 1.0);
    }
}

TEST(PhiTensor, SpecValues) {
    const std::array<int, 2> k00{0, 0}, k10{1, 0}, k22{2, 2};
    const std::array<double, 2> o{0.0, 0.0}, a{1.75, 0.0}, b{1.0, 5.0};
    EXPECT_DOUBLE_EQ(phi_tensor(k00, o), 1.0);
    EXPECT_DOUBLE_EQ(phi_tensor(k10, a), 1.0);
    EXPECT_EQ(phi_tensor(k22, b), 0.0);
    const std::array<int, 2> bad{-1, 0};
    EXPECT_THROW(phi_tensor(bad, o), InvalidParams);
    const std::array<int, 3> k3{0, 0, 0};
    EXPECT_THROW(phi_tensor(k3, o), InvalidParams);
}

TEST(PhiTensor, ProductOfFactors) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    std::uniform_int_distribution<int> lvl(0, 5);
    for (int i = 0; i < 1000; ++i) {
        const std::array<int, 3> k{lvl(rng), lvl(rng), lvl(rng)};
        const std::array<double, 3> x{u(rng), u(rng), u(rng)};
        EXPECT_DOUBLE_EQ(phi_tensor(k, x), phi(k[0], x[0]) * phi(k[1], x[1]) * phi(k[2], x[2]));
    }
}

TEST(PhiFattened, SpecValues) {
    EXPECT_DOUBLE_EQ(phi_fattened(0, 0.0), 1.0);
    EXPECT_EQ(phi_fattened(3, 100.0), 0.0);
    EXPECT_THROW(phi_fattened(-1, 0.0), InvalidParams);
}

TEST(PhiFattened, OneOnSupportOfBand) {
    std::mt19937_64 rng(21);
    for (int j : {0, 1, 4}) {
        std::uniform_real_distribution<double> u(-1.6 * std::ldexp(1.0, j), 1.6 * std::ldexp(1.0, j));
        int hits = 0;
        while (hits < 1000) {
            const double xi = u(rng);
            if (phi(j, xi) <= 0.0) continue;
            ++hits;
            EXPECT_NEAR(phi_fattened(j, xi), 1.0, 1e-15) << "j=" << j << " xi=" << xi;
        }
    }
}

TEST(NyquistLevel, SmallestCoveringPower) {
    EXPECT_EQ(nyquist_level(0.5), 0);
    EXPECT_EQ(nyquist_level(1.0), 0);
    EXPECT_EQ(nyquist_level(1.01), 1);
    EXPECT_EQ(nyquist_level(16.0), 4);
    EXPECT_EQ(nyquist_level(17.0), 5);
    // Every band above the level vanishes on frequencies up to omega_max.
    for (double om : {3.0, 20.0, 100.0}) {
        const int J = nyquist_level(om);
        for (double xi = -om; xi <= om; xi += om / 97.0) EXPECT_EQ(phi(J + 2, xi), 0.0);
    }
}
