#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "clifford.hpp"
#include "transcend.hpp"

namespace hexagauss {

using Vec3 = std::array<double, 3>;  // coordinates on the basis (1, e1, e2)

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 scale(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
inline Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 normalized(const Vec3& a) {
    double n = norm(a);
    if (n == 0.0) throw Error("normalized: zero vector");
    return scale(a, 1.0 / n);
}

inline Vec3 to_vec3(const Multivector& x) { return {x[0], x[1], x[2]}; }
inline Multivector from_vec3(const Vec3& v) { return Multivector::paravector(v[0], v[1], v[2]); }

// x -> a x a* for unit a in A_2.
inline Vec3 rotate(const Multivector& a, const Vec3& x) { return to_vec3(a * from_vec3(x) * a.star()); }

struct AxisAngle {
    Vec3 axis;     // unit para-vector v
    double theta;  // a = cos theta + v e12 sin theta, rotation angle 2 theta
};

inline AxisAngle axis_angle(const Multivector& a, double tol = 1e-12) {
    require_quaternionic(a, "axis_angle");
    if (std::abs(a.norm() - 1.0) > 1e-9) throw Error("axis_angle: element is not a unit");
    Multivector w = a;
    w[0] = 0.0;
    const double s = w.norm();
    if (s <= tol) throw Error("axis_angle: a = +-1 has no axis");
    Multivector e12 = Multivector::blade(3u, 2);
    Multivector v = -(w * e12) / s;
    return {to_vec3(v), std::atan2(s, a.scalar_part())};
}

// exp(alpha e1) exp(beta e12) exp(gamma e1), expanded.
inline Multivector euler_compose(double alpha, double beta, double gamma) {
    return Multivector::a2(std::cos(beta) * std::cos(gamma + alpha), std::cos(beta) * std::sin(gamma + alpha),
                           std::sin(beta) * std::sin(gamma - alpha), std::sin(beta) * std::cos(gamma - alpha));
}

inline double wrap_2pi(double x) {
    const double t = 2.0 * std::numbers::pi;
    double r = std::fmod(x, t);
    if (r < 0.0) r += t;
    if (r >= t) r -= t;
    return r;
}

struct EulerTriple {
    double alpha, beta, gamma;
};

// Degenerate inputs fix only one of alpha+gamma or gamma-alpha.
struct EulerFamily {
    enum class Kind { SumFixed, DifferenceFixed } kind;
    // (beta, fixed combination) pairs, all mod 2 pi
    std::vector<std::pair<double, double>> members;
};

struct EulerDecomposition {
    std::vector<EulerTriple> solutions;  // eight triples, regular case
    std::optional<EulerFamily> family;   // degenerate case
    bool regular() const { return !family.has_value(); }
};

inline EulerDecomposition euler_decompose(const Multivector& a, double regular_tol = 1e-8) {
    require_quaternionic(a, "euler_decompose");
    if (std::abs(a.norm() - 1.0) > 1e-9) throw Error("euler_decompose: element is not a unit");
    const double a0 = a[0], a1 = a[1], a2 = a[2], a12 = a[3];
    const double cb = std::hypot(a0, a1), sb = std::hypot(a2, a12);
    const double beta0 = std::atan2(sb, cb);
    const double pi = std::numbers::pi;
    const double betas[4] = {beta0, pi - beta0, pi + beta0, 2.0 * pi - beta0};
    EulerDecomposition out;
    if (std::abs(std::sin(2.0 * beta0)) < regular_tol) {
        EulerFamily fam;
        if (sb <= cb) {
            fam.kind = EulerFamily::Kind::SumFixed;
            for (double b : {0.0, pi}) {
                double c = std::cos(b);
                fam.members.emplace_back(b, wrap_2pi(std::atan2(a1 * c, a0 * c)));
            }
        } else {
            fam.kind = EulerFamily::Kind::DifferenceFixed;
            for (double b : {pi / 2.0, 3.0 * pi / 2.0}) {
                double s = std::sin(b);
                fam.members.emplace_back(b, wrap_2pi(std::atan2(a2 * s, a12 * s)));
            }
        }
        out.family = fam;
        return out;
    }
    for (double b : betas) {
        const double c = std::cos(b), s = std::sin(b);
        const double sum = std::atan2(a1 / c, a0 / c);    // gamma + alpha
        const double diff = std::atan2(a2 / s, a12 / s);  // gamma - alpha
        const double alpha = 0.5 * (sum - diff), gamma = 0.5 * (sum + diff);
        out.solutions.push_back({wrap_2pi(alpha), wrap_2pi(b), wrap_2pi(gamma)});
        out.solutions.push_back({wrap_2pi(alpha + pi), wrap_2pi(b), wrap_2pi(gamma + pi)});
    }
    return out;
}

// The eight parameter triples representing the same element as (alpha, beta, gamma).
inline std::array<EulerTriple, 8> euler_equivalents(double al, double be, double ga) {
    const double pi = std::numbers::pi, h = pi / 2.0;
    return {{{al, be, ga},
             {al + pi, be, ga + pi},
             {al + pi, be + pi, ga},
             {al, be + pi, ga + pi},
             {al + h, -be, ga - h},
             {al - h, -be, ga + h},
             {al - h, -be + pi, ga - h},
             {al + h, -be + pi, ga + h}}};
}

// (alpha, beta, gamma) -> (alpha + pi/2, -beta, gamma + pi/2)
inline EulerTriple psi_pairing(const EulerTriple& t) {
    const double h = std::numbers::pi / 2.0;
    return {t.alpha + h, -t.beta, t.gamma + h};
}

struct IdentitySides {
    Multivector lhs, rhs;
    double residual() const { return (lhs - rhs).max_abs(); }
};

// exp(s e1) exp(t e12) exp(-s e1) against exp(t exp(2 s e1) e12)
inline IdentitySides arnold_conjugate(double s, double t) {
    Multivector e1 = Multivector::e(1), e12 = Multivector::blade(3u, 2);
    return {exp(e1 * s) * exp(e12 * t) * exp(e1 * (-s)), exp(exp(e1 * (2.0 * s)) * e12 * t)};
}

// exp(alpha e1) exp(beta e12) exp(gamma e1) rewritten with one conjugated factor:
// first = exp(beta exp(2 alpha e1) e12) exp((alpha + gamma) e1)
// second = exp((alpha + gamma) e1) exp(beta exp(-2 gamma e1) e12)
struct ArnoldForms {
    Multivector product, first, second;
};

inline ArnoldForms arnold_forms(double alpha, double beta, double gamma) {
    Multivector e1 = Multivector::e(1), e12 = Multivector::blade(3u, 2);
    ArnoldForms f;
    f.product = exp(e1 * alpha) * exp(e12 * beta) * exp(e1 * gamma);
    f.first = exp(exp(e1 * (2.0 * alpha)) * e12 * beta) * exp(e1 * (alpha + gamma));
    f.second = exp(e1 * (alpha + gamma)) * exp(exp(e1 * (-2.0 * gamma)) * e12 * beta);
    return f;
}

struct Tangent {
    Vec3 point;      // unit vector x
    Vec3 direction;  // unit vector u orthogonal to x
};

// a -> (rho_a(1), rho_a(e1))
inline Tangent tangent_transport(const Multivector& a) {
    return {rotate(a, {1.0, 0.0, 0.0}), rotate(a, {0.0, 1.0, 0.0})};
}

// Recover +-a from the image tangent by intersecting the great circles
// through (1, e1) and (x, u).
inline void check_tangent(const Tangent& t, double tol) {
    if (std::abs(norm(t.point) - 1.0) > tol || std::abs(norm(t.direction) - 1.0) > tol ||
        std::abs(dot(t.point, t.direction)) > tol)
        throw Error("invalid unit tangent");
}

inline std::array<Multivector, 2> read_euler_from_tangent(const Tangent& t, double tol = 1e-12) {
    check_tangent(t, 1e-9);
    Vec3 x = normalized(t.point);
    Vec3 u = normalized(sub(t.direction, scale(x, dot(t.direction, x))));
    const Vec3 one{1.0, 0.0, 0.0}, e1{0.0, 1.0, 0.0};
    const Vec3 n1 = cross(one, e1);
    const Vec3 n2 = cross(x, u);
    Multivector E1 = Multivector::e(1), E12 = Multivector::blade(3u, 2);
    Vec3 z = cross(n1, n2);
    Multivector a;
    if (norm(z) <= tol) {
        if (dot(n1, n2) > 0.0) {
            double g = 0.5 * std::atan2(dot(x, e1), dot(x, one));
            a = exp(E1 * g);
        } else {
            double g = 0.5 * std::atan2(-dot(x, e1), dot(x, one));
            a = exp(E12 * (std::numbers::pi / 2.0)) * exp(E1 * g);
        }
    } else {
        z = normalized(z);
        const double alpha = 0.5 * std::atan2(dot(z, e1), dot(z, one));
        const Vec3 w = cross(n1, z);
        const Vec3 v = cross(n2, z);
        const double beta = 0.5 * std::atan2(dot(cross(w, v), z), dot(w, v));
        const double gamma = 0.5 * std::atan2(dot(x, v), dot(x, z));
        a = exp(E1 * alpha) * exp(E12 * beta) * exp(E1 * gamma);
    }
    return {a, -a};
}

// Unit a with rho_a(1) = x and rho_a(e1) = u, from the rotation matrix [x, u, x × u].
inline Multivector rotation_from_frame(const Tangent& t) {
    check_tangent(t, 1e-9);
    const Vec3 x = normalized(t.point);
    const Vec3 u = normalized(sub(t.direction, scale(x, dot(t.direction, x))));
    const Vec3 y = cross(x, u);
    // R[i][j]: component i of the image of basis vector j
    const double R[3][3] = {{x[0], u[0], y[0]}, {x[1], u[1], y[1]}, {x[2], u[2], y[2]}};
    const double tr = R[0][0] + R[1][1] + R[2][2];
    double w, qx, qy, qz;
    if (tr > 0.0) {
        double s = 2.0 * std::sqrt(1.0 + tr);
        w = 0.25 * s;
        qx = (R[2][1] - R[1][2]) / s;
        qy = (R[0][2] - R[2][0]) / s;
        qz = (R[1][0] - R[0][1]) / s;
    } else if (R[0][0] > R[1][1] && R[0][0] > R[2][2]) {
        double s = 2.0 * std::sqrt(1.0 + R[0][0] - R[1][1] - R[2][2]);
        w = (R[2][1] - R[1][2]) / s;
        qx = 0.25 * s;
        qy = (R[0][1] + R[1][0]) / s;
        qz = (R[0][2] + R[2][0]) / s;
    } else if (R[1][1] > R[2][2]) {
        double s = 2.0 * std::sqrt(1.0 + R[1][1] - R[0][0] - R[2][2]);
        w = (R[0][2] - R[2][0]) / s;
        qx = (R[0][1] + R[1][0]) / s;
        qy = 0.25 * s;
        qz = (R[1][2] + R[2][1]) / s;
    } else {
        double s = 2.0 * std::sqrt(1.0 + R[2][2] - R[0][0] - R[1][1]);
        w = (R[1][0] - R[0][1]) / s;
        qx = (R[0][2] + R[2][0]) / s;
        qy = (R[1][2] + R[2][1]) / s;
        qz = 0.25 * s;
    }
    // axis v = qx + qy e1 + qz e2 enters as v e12
    Multivector a = Multivector::a2(w, qz, -qy, qx);
    return a / a.norm();
}

}  // namespace hexagauss
