#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hexagauss/transcend.hpp"
#include "oracles.hpp"

using namespace hexagauss;

namespace {

const double kPi = std::numbers::pi;

Multivector random_a2(Rng& rng, double r) {
    return Multivector::a2(rng.uniform(-r, r), rng.uniform(-r, r), rng.uniform(-r, r), rng.uniform(-r, r));
}

double rel(const Multivector& a, const Multivector& b) { return (a - b).max_abs() / (1.0 + std::max(a.max_abs(), b.max_abs())); }

}  // namespace

TEST(Exp, Examples) {
    EXPECT_EQ(exp(Multivector(2)), Multivector::scalar(1.0));
    EXPECT_LT((exp(Multivector::e(1) * kPi) - Multivector::scalar(-1.0)).max_abs(), 1e-15);
    Multivector x = Multivector::a2(0.3, 0.7, -0.2, 0.1);
    EXPECT_LT((exp(x) - oracle::exp_taylor(x)).max_abs(), 1e-15);
}

TEST(Exp, MatchesExtendedPrecisionTaylor) {
    Rng rng(31);
    for (int it = 0; it < 300; ++it) {
        auto x = random_a2(rng, 2.0);
        EXPECT_LT(rel(exp(x), oracle::exp_taylor(x, 60)), 1e-14) << to_string(x);
    }
    for (int n = 1; n <= 4; ++n) {
        Multivector x(n);
        for (unsigned k = 0; k < x.size(); ++k) x[k] = rng.uniform(-0.8, 0.8);
        EXPECT_LT(rel(exp(x), oracle::exp_taylor(x, 60)), 1e-14);
    }
}

TEST(Exp, ClosedFormOnRealAndPureParts) {
    Rng rng(32);
    for (int it = 0; it < 200; ++it) {
        const double t = rng.uniform(-4, 4), th = rng.uniform(-6, 6);
        EXPECT_NEAR(exp(Multivector::scalar(t))[0], std::exp(t), 1e-14 * std::exp(std::abs(t)));
        auto w = Multivector::a2(0, rng.normal(), rng.normal(), rng.normal());
        w = w / w.norm();
        EXPECT_LT((exp(w * th) - (std::cos(th) + w * std::sin(th))).max_abs(), 1e-14);
    }
}

TEST(Exp, InverseIsExpOfNegative) {
    Rng rng(33);
    for (int it = 0; it < 500; ++it) {
        auto x = random_a2(rng, 2.0);
        const double bound = 1e-12 * std::exp(2.0 * x.norm());
        EXPECT_LT((exp(x) * exp(-x) - Multivector::scalar(1.0)).max_abs(), bound);
    }
}

TEST(Exp, NotAHomomorphism) {
    auto e1 = Multivector::e(1), e2 = Multivector::e(2);
    EXPECT_GT((exp(e1) * exp(e2) - exp(e2) * exp(e1)).max_abs(), 0.1);
    EXPECT_GT((exp(e1) * exp(e2) - exp(e1 + e2)).max_abs(), 0.1);
}

TEST(CoshSinh, Examples) {
    EXPECT_EQ(cosh(Multivector(2)), Multivector::scalar(1.0));
    EXPECT_EQ(sinh(Multivector(2)), Multivector(2));
    for (double t : {-2.5, -0.1, 0.7, 3.0}) {
        EXPECT_NEAR(cosh(Multivector::scalar(t))[0], std::cosh(t), 1e-14 * std::cosh(t));
        EXPECT_NEAR(sinh(Multivector::scalar(t))[0], std::sinh(t), 1e-14 * std::cosh(t));
    }
}

TEST(CoshSinh, ParityAndPythagoras) {
    Rng rng(34);
    for (int it = 0; it < 2000; ++it) {
        auto x = random_a2(rng, 1.5);
        EXPECT_LT(rel(cosh(-x), cosh(x.star())), 1e-11);
        EXPECT_LT(rel(sinh(-x), -sinh(x.star())), 1e-11);
        EXPECT_LT(rel(cosh(x) * cosh(x.star()) - sinh(x) * sinh(x.star()), Multivector::scalar(1.0)), 1e-11);
    }
}

TEST(CoshSinh, AdditionTheorems) {
    Rng rng(35);
    for (int it = 0; it < 2000; ++it) {
        auto x = random_a2(rng, 1.5), y = random_a2(rng, 1.5);
        auto s = oplus(x, y).principal, d = ominus(x, y).principal;
        EXPECT_LT(rel(cosh(s), cosh(x) * cosh(y) + sinh(x) * sinh(y)), 1e-11);
        EXPECT_LT(rel(sinh(s), sinh(x) * cosh(y) + cosh(x) * sinh(y)), 1e-11);
        EXPECT_LT(rel(cosh(d), cosh(x) * cosh(y.star()) - sinh(x) * sinh(y.star())), 1e-11);
        EXPECT_LT(rel(sinh(d), sinh(x) * cosh(y.star()) - cosh(x) * sinh(y.star())), 1e-11);
    }
}

TEST(Polar, Examples) {
    auto p = polar(Multivector::e(1));
    EXPECT_NEAR(p.radius, 1.0, 1e-15);
    EXPECT_NEAR(p.theta, kPi / 2, 1e-15);
    ASSERT_TRUE(p.u);
    EXPECT_EQ(*p.u, Multivector::e(1));
    p = polar(Multivector::scalar(-3.0));
    EXPECT_EQ(p.radius, 3.0);
    EXPECT_NEAR(p.theta, kPi, 1e-15);
    EXPECT_FALSE(p.u);
    p = polar(Multivector::a2(1, 0, 0, 1));
    EXPECT_NEAR(p.radius, std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(p.theta, kPi / 4, 1e-15);
    EXPECT_EQ(*p.u, Multivector::blade(3u, 2));
    EXPECT_THROW(polar(Multivector(2)), Error);
    EXPECT_THROW(polar(Multivector(3)), Error);
}

TEST(Polar, Reconstructs) {
    Rng rng(36);
    for (int it = 0; it < 500; ++it) {
        auto a = random_a2(rng, 3.0);
        auto p = polar(a);
        EXPECT_GE(p.theta, 0.0);
        EXPECT_LE(p.theta, kPi);
        EXPECT_NEAR(p.u->norm(), 1.0, 1e-14);
        EXPECT_EQ((*p.u)[0], 0.0);
        EXPECT_LT((p.radius * (std::cos(p.theta) + *p.u * std::sin(p.theta)) - a).max_abs(), 1e-14 * p.radius);
    }
}

TEST(Log, Examples) {
    auto v = log(Multivector::scalar(1.0));
    EXPECT_EQ(v.principal, Multivector(2));
    EXPECT_FALSE(v.period_generator);
    EXPECT_NEAR(log(Multivector::scalar(std::exp(2.0))).principal[0], 2.0, 1e-15);
    auto x = Multivector::a2(0.4, 1.1, 0.3, 0.0);
    EXPECT_LT((log(exp(x)).principal - x).max_abs(), 1e-14);
    auto n = log(Multivector::scalar(-1.0));
    EXPECT_FALSE(n.canonical);
    EXPECT_LT((exp(n.principal) - Multivector::scalar(-1.0)).max_abs(), 1e-15);
}

TEST(Log, RoundTripsAndBranches) {
    Rng rng(37);
    for (int it = 0; it < 500; ++it) {
        auto a = random_a2(rng, 3.0);
        auto v = log(a);
        EXPECT_LT(rel(exp(v.principal), a), 1e-14);
        ASSERT_TRUE(v.period_generator);
        for (int k = -3; k <= 3; ++k) EXPECT_LT(rel(exp(log_branch(a, k)), a), 1e-13);
        // principal values have imaginary norm below pi and invert exp there
        auto x = random_a2(rng, 1.0);
        if (Multivector::a2(0, x[1], x[2], x[3]).norm() < kPi * 0.99) EXPECT_LT((log(exp(x)).principal - x).max_abs(), 1e-13);
    }
}

TEST(Oplus, Examples) {
    Rng rng(38);
    for (int it = 0; it < 100; ++it) {
        auto x = Multivector::a2(rng.uniform(-2, 2), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        EXPECT_LT((oplus(x, Multivector(2)).principal - x).max_abs(), 1e-14);
        const double s = rng.uniform(-3, 3), t = rng.uniform(-3, 3);
        EXPECT_NEAR(oplus(Multivector::scalar(s), Multivector::scalar(t)).principal[0], s + t, 1e-14);
        EXPECT_LT((exp(ominus(x, x).principal) - Multivector::scalar(1.0)).max_abs(), 1e-14);
    }
}
