#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "hexagon.hpp"
#include "random.hpp"
#include "rotations.hpp"

namespace hexagauss {

// Sides a, b, c opposite the angles alpha, beta, gamma.
struct Triangle {
    double a, b, c, alpha, beta, gamma;
};

using Residuals = std::vector<std::pair<std::string, double>>;

inline double rel(double l, double r) { return std::abs(l - r) / (1.0 + std::max(std::abs(l), std::abs(r))); }

inline double vec_angle(const Vec3& x, const Vec3& y) { return std::atan2(norm(cross(x, y)), dot(x, y)); }

inline Triangle spherical_triangle(const Vec3& A, const Vec3& B, const Vec3& C) {
    auto ang = [](const Vec3& p, const Vec3& q, const Vec3& r) {
        Vec3 tq = sub(q, scale(p, dot(p, q))), tr = sub(r, scale(p, dot(p, r)));
        return vec_angle(tq, tr);
    };
    return {vec_angle(B, C), vec_angle(C, A), vec_angle(A, B), ang(A, B, C), ang(B, C, A), ang(C, A, B)};
}

inline std::array<Vec3, 3> random_spherical_vertices(Rng& rng) {
    for (;;) {
        std::array<Vec3, 3> p;
        for (auto& v : p) v = normalized({rng.normal(), rng.normal(), rng.normal()});
        Triangle t = spherical_triangle(p[0], p[1], p[2]);
        if (t.alpha + t.beta + t.gamma - std::numbers::pi > 1e-6) return p;
    }
}

inline Triangle random_spherical_triangle(Rng& rng) {
    auto p = random_spherical_vertices(rng);
    return spherical_triangle(p[0], p[1], p[2]);
}

// Hyperboloid model: points (cosh r, sinh r cos th, sinh r sin th).
inline Triangle hyperbolic_triangle(const std::array<double, 3>& A, const std::array<double, 3>& B,
                                    const std::array<double, 3>& C) {
    auto in = [](const std::array<double, 3>& x, const std::array<double, 3>& y) {
        return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    };
    auto dist = [&](const std::array<double, 3>& x, const std::array<double, 3>& y) {
        std::array<double, 3> d{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
        return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, in(d, d))));
    };
    auto ang = [&](const std::array<double, 3>& p, const std::array<double, 3>& q, const std::array<double, 3>& r) {
        std::array<double, 3> tq, tr;
        for (int i = 0; i < 3; ++i) {
            tq[i] = q[i] + in(p, q) * p[i];
            tr[i] = r[i] + in(p, r) * p[i];
        }
        const double c = in(tq, tr), nn = in(tq, tq) * in(tr, tr);
        return std::atan2(std::sqrt(std::max(0.0, nn - c * c)), c);
    };
    return {dist(B, C), dist(C, A), dist(A, B), ang(A, B, C), ang(B, C, A), ang(C, A, B)};
}

inline std::array<std::array<double, 3>, 3> random_hyperbolic_vertices(Rng& rng) {
    for (;;) {
        std::array<std::array<double, 3>, 3> p;
        for (auto& v : p) {
            double r = rng.uniform(0.0, 2.0), th = rng.uniform(0.0, 2.0 * std::numbers::pi);
            v = {std::cosh(r), std::sinh(r) * std::cos(th), std::sinh(r) * std::sin(th)};
        }
        Triangle t = hyperbolic_triangle(p[0], p[1], p[2]);
        if (std::numbers::pi - t.alpha - t.beta - t.gamma > 1e-6) return p;
    }
}

inline Triangle random_hyperbolic_triangle(Rng& rng) {
    auto p = random_hyperbolic_vertices(rng);
    return hyperbolic_triangle(p[0], p[1], p[2]);
}

// Trigonometric functions of the sides: circular on the sphere, hyperbolic in the plane.
struct SideTrig {
    bool hyperbolic;
    double c(double x) const { return hyperbolic ? std::cosh(x) : std::cos(x); }
    double s(double x) const { return hyperbolic ? std::sinh(x) : std::sin(x); }
};

// Delambre-Gauss, the analogies of Napier (denominators cleared) and the three laws of tangents.
inline Residuals triangle_formulas(const Triangle& t, bool hyperbolic) {
    const SideTrig f{hyperbolic};
    const double a = t.a / 2, b = t.b / 2, c = t.c / 2, al = t.alpha / 2, be = t.beta / 2, ga = t.gamma / 2;
    Residuals r;
    r.emplace_back("dg_1", rel(f.c(a + b) * std::sin(ga), std::cos(al + be) * f.c(c)));
    r.emplace_back("dg_2", rel(f.s(a + b) * std::sin(ga), std::cos(al - be) * f.s(c)));
    r.emplace_back("dg_3", rel(f.c(a - b) * std::cos(ga), std::sin(al + be) * f.c(c)));
    r.emplace_back("dg_4", rel(f.s(a - b) * std::cos(ga), std::sin(al - be) * f.s(c)));
    // sin(al-be)/sin(al+be) = tan(a-b)/tan c, and so on, multiplied out
    r.emplace_back("napier_1", rel(std::sin(al - be) * f.s(c) * f.c(a - b), std::sin(al + be) * f.s(a - b) * f.c(c)));
    r.emplace_back("napier_2", rel(std::cos(al - be) * f.s(c) * f.c(a + b), std::cos(al + be) * f.s(a + b) * f.c(c)));
    r.emplace_back("napier_3", rel(f.s(a - b) * std::cos(al - be) * std::cos(ga), f.s(a + b) * std::sin(al - be) * std::sin(ga)));
    r.emplace_back("napier_4", rel(f.c(a - b) * std::cos(al + be) * std::cos(ga), f.c(a + b) * std::sin(al + be) * std::sin(ga)));
    const double sides[3] = {a, b, c}, angles[3] = {al, be, ga};
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        const double x = sides[i], y = sides[j], p = angles[i], q = angles[j];
        // tan(x-y)/tan(x+y) = tan(p-q)/tan(p+q)
        r.emplace_back("tangents_" + std::to_string(i + 1),
                       rel(f.s(x - y) * f.c(x + y) * std::cos(p - q) * std::sin(p + q),
                           f.s(x + y) * f.c(x - y) * std::sin(p - q) * std::cos(p + q)));
    }
    return r;
}

// Convex right-angled hexagon of the hyperbolic plane with side lengths l1..l6.
inline Residuals planar_hexagon_formulas(const std::array<double, 6>& l) {
    auto h = [&](int n) { return 0.5 * l[static_cast<std::size_t>(n - 1)]; };
    using std::cosh, std::sinh;
    Residuals r;
    r.emplace_back("planar_1", rel(cosh(h(1) + h(3)) * sinh(h(2)), cosh(h(4) + h(6)) * sinh(h(5))));
    r.emplace_back("planar_2", rel(sinh(h(1) + h(3)) * sinh(h(2)), cosh(h(4) - h(6)) * cosh(h(5))));
    r.emplace_back("planar_3", rel(cosh(h(1) - h(3)) * cosh(h(2)), sinh(h(4) + h(6)) * sinh(h(5))));
    r.emplace_back("planar_4", rel(sinh(h(1) - h(3)) * cosh(h(2)), sinh(h(4) - h(6)) * cosh(h(5))));
    for (int n = 1; n <= 6; ++n) {
        auto L = [&](int k) { return l[static_cast<std::size_t>((k - 1) % 6)]; };
        r.emplace_back("cosine_" + std::to_string(n),
                       rel(std::cosh(L(n)), -std::cosh(L(n + 2)) * std::cosh(L(n + 4)) +
                                                std::sinh(L(n + 2)) * std::sinh(L(n + 4)) * std::cosh(L(n + 3))));
    }
    r.emplace_back("sine_13", rel(std::sinh(l[0]) * std::sinh(l[5]), std::sinh(l[2]) * std::sinh(l[3])));
    r.emplace_back("sine_35", rel(std::sinh(l[2]) * std::sinh(l[1]), std::sinh(l[4]) * std::sinh(l[5])));
    return r;
}

// The four identities with cosh and sinh of l5/2 exchanged; these do not hold.
inline Residuals planar_hexagon_formulas_swapped(const std::array<double, 6>& l) {
    auto h = [&](int n) { return 0.5 * l[static_cast<std::size_t>(n - 1)]; };
    using std::cosh, std::sinh;
    Residuals r;
    r.emplace_back("planar_1", rel(cosh(h(1) + h(3)) * sinh(h(2)), cosh(h(4) + h(6)) * cosh(h(5))));
    r.emplace_back("planar_2", rel(sinh(h(1) + h(3)) * sinh(h(2)), cosh(h(4) - h(6)) * sinh(h(5))));
    r.emplace_back("planar_3", rel(cosh(h(1) - h(3)) * cosh(h(2)), sinh(h(4) + h(6)) * cosh(h(5))));
    r.emplace_back("planar_4", rel(sinh(h(1) - h(3)) * cosh(h(2)), sinh(h(4) - h(6)) * sinh(h(5))));
    return r;
}

// Side lengths of a planar hexagon given by its six lines.
inline std::array<double, 6> planar_lengths(const std::array<OrientedLine, 6>& l) {
    auto v = hexagon_vertices(l);
    std::array<double, 6> len;
    for (int n = 0; n < 6; ++n) len[idx(n)] = distance(v[idx(n - 1)], v[idx(n)]);
    return len;
}

inline double max_of(const Residuals& r) {
    double m = 0.0;
    for (const auto& x : r) m = std::max(m, x.second);
    return m;
}

}  // namespace hexagauss
