#pragma once

#include <cmath>
#include <numbers>
#include <optional>

#include "clifford.hpp"

namespace hexagauss {

// Scaling and squaring: halve until |x| <= 1/2, Taylor to order 16, square back.
inline Multivector exp(const Multivector& x) {
    int s = 0;
    double r = x.norm();
    while (r > 0.5) {
        r *= 0.5;
        ++s;
    }
    Multivector y = x / std::ldexp(1.0, s);
    Multivector term = Multivector::scalar(1.0, x.dim());
    Multivector sum = term;
    for (int k = 1; k <= 16; ++k) {
        term = term * y / static_cast<double>(k);
        sum += term;
    }
    for (int k = 0; k < s; ++k) sum = sum * sum;
    return sum;
}

inline Multivector cosh(const Multivector& x) { return (exp(x) + exp(-x.star())) * 0.5; }
inline Multivector sinh(const Multivector& x) { return (exp(x) - exp(-x.star())) * 0.5; }

// a = |a| (cos theta + u sin theta), theta in [0, pi]. u is empty for real a.
struct PolarForm {
    double radius = 0.0;
    double theta = 0.0;
    std::optional<Multivector> u;
};

inline void require_quaternionic(const Multivector& a, const char* who) {
    if (a.dim() > 2) throw Error(std::string(who) + ": defined on A_2 and its subalgebras only");
}

inline PolarForm polar(const Multivector& a) {
    require_quaternionic(a, "polar");
    const double r = a.norm();
    if (r == 0.0) throw Error("polar: zero element");
    Multivector w = a;
    w[0] = 0.0;
    const double wn = w.norm();
    PolarForm p;
    p.radius = r;
    p.theta = std::atan2(wn, a.scalar_part());
    if (wn > 0.0) p.u = w / wn;
    return p;
}

struct LogValue {
    Multivector principal;
    // 2 pi u; empty when u is free (positive real argument).
    std::optional<Multivector> period_generator;
    bool canonical = true;
};

inline LogValue log(const Multivector& a) {
    PolarForm p = polar(a);
    LogValue v;
    v.principal = Multivector::scalar(std::log(p.radius), a.dim());
    if (p.u) {
        v.principal += *p.u * p.theta;
        v.period_generator = *p.u * (2.0 * std::numbers::pi);
    } else if (p.theta != 0.0) {
        if (a.dim() < 2) throw Error("log: negative real has no logarithm in A_1 without a chosen unit");
        Multivector e12 = Multivector::blade(3u, a.dim());
        v.principal += e12 * std::numbers::pi;
        v.period_generator = e12 * (2.0 * std::numbers::pi);
        v.canonical = false;
    }
    return v;
}

// Log a + 2 k pi u; a free unit is taken as e1e2.
inline Multivector log_branch(const Multivector& a, int k) {
    LogValue v = log(a);
    if (k == 0) return v.principal;
    Multivector gen = v.period_generator ? *v.period_generator
                                         : Multivector::blade(3u, a.dim()) * (2.0 * std::numbers::pi);
    return v.principal + gen * static_cast<double>(k);
}

// x (+) y = log(exp x exp y), x (-) y = x (+) (-y)
inline LogValue oplus(const Multivector& x, const Multivector& y) { return log(exp(x) * exp(y)); }
inline LogValue ominus(const Multivector& x, const Multivector& y) { return log(exp(x) * exp(-y)); }

}  // namespace hexagauss
