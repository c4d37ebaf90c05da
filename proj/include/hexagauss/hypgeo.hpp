#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>

#include "clifford.hpp"
#include "points.hpp"
#include "rotations.hpp"
#include "transcend.hpp"
#include "vahlen.hpp"

namespace hexagauss {

struct OrientedLine {
    BoundaryPoint src, dst;

    OrientedLine() = default;
    OrientedLine(const BoundaryPoint& s, const BoundaryPoint& d) : src(s), dst(d) {
        if (boundary_distance(s, d) == 0.0) throw Error("OrientedLine: endpoints coincide");
    }
    OrientedLine reversed() const { return {dst, src}; }
};

// Oriented half-plane through `line`; its ideal circle passes through p, and the
// in-plane normal of the line points toward the arc of that circle containing p.
struct OrientedFlag {
    OrientedLine line;
    BoundaryPoint p;

    OrientedFlag() = default;
    OrientedFlag(const OrientedLine& l, const BoundaryPoint& q) : line(l), p(q) {
        if (boundary_distance(q, l.src) == 0.0 || boundary_distance(q, l.dst) == 0.0)
            throw Error("OrientedFlag: third point lies on the line");
    }
};

// A flag and a line orthogonal to it, meeting on the flag's line.
struct FlagLineCross {
    OrientedFlag flag;
    OrientedLine line;
};

struct OrthoFrame {
    InteriorPoint base;
    std::array<std::array<double, 4>, 4> v{};  // Euclidean unit vectors at base
};

inline BoundaryPoint bp(double x0, double x1 = 0.0, double x2 = 0.0) { return {x0, x1, x2}; }
inline BoundaryPoint bp_inf() { return BoundaryPoint::infinity(); }

inline OrientedLine line_h() { return {bp(-1), bp(1)}; }
inline OrientedLine line_v() { return {bp(0), bp_inf()}; }
inline OrientedLine line_e1() { return {bp(0, -1), bp(0, 1)}; }
inline OrientedLine line_e2() { return {bp(0, 0, -1), bp(0, 0, 1)}; }
inline OrientedFlag flag_h() { return {line_h(), bp(0, 1)}; }
inline OrientedFlag flag_v() { return {line_v(), bp(0, 0, -1)}; }
inline FlagLineCross standard_cross() { return {flag_h(), line_v()}; }

inline OrientedLine apply(const VahlenMatrix& m, const OrientedLine& l) { return {mobius_apply(m, l.src), mobius_apply(m, l.dst)}; }
inline OrientedFlag apply(const VahlenMatrix& m, const OrientedFlag& f) { return {apply(m, f.line), mobius_apply(m, f.p)}; }
inline FlagLineCross apply(const VahlenMatrix& m, const FlagLineCross& c) { return {apply(m, c.flag), apply(m, c.line)}; }

inline bool approx_equal(const BoundaryPoint& a, const BoundaryPoint& b, double tol) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
    return boundary_distance(a, b) <= tol * std::max(1.0, std::max(a.norm(), b.norm()));
}
inline bool approx_equal(const OrientedLine& a, const OrientedLine& b, double tol) {
    return approx_equal(a.src, b.src, tol) && approx_equal(a.dst, b.dst, tol);
}

// src -> 0, dst -> inf
inline VahlenMatrix line_to_vertical(const OrientedLine& l, int n = 2) {
    if (l.dst.is_infinity()) return translation(-l.src.to_multivector(n));
    if (l.src.is_infinity()) return inversion_j(n) * translation(-l.dst.to_multivector(n));
    Multivector s = l.src.to_multivector(n), d = l.dst.to_multivector(n);
    Multivector q = -inverse(s - d);
    return translation(-q) * inversion_j(n) * translation(-d);
}

inline VahlenMatrix dilation(double k, int n = 2) {
    const double r = std::sqrt(k);
    return VahlenMatrix::from(Multivector::scalar(r, n), Multivector::scalar(0.0, n), Multivector::scalar(0.0, n),
                              Multivector::scalar(1.0 / r, n));
}

// Other arc of the flag's ideal circle: the flag with opposite plane orientation.
inline BoundaryPoint opposite_arc_point(const OrientedFlag& f) {
    VahlenMatrix m = line_to_vertical(f.line);
    BoundaryPoint q = mobius_apply(m, f.p);
    if (q.is_infinity()) throw Error("opposite_arc_point: degenerate flag");
    return mobius_apply(m.inverse(), bp(-q[0], -q[1], -q[2]));
}

// F^{+-}: same line, opposite plane orientation.
inline OrientedFlag flip_plane(const OrientedFlag& f) { return {f.line, opposite_arc_point(f)}; }
// F^{-+}: line reversed, plane orientation kept.
inline OrientedFlag flip_line(const OrientedFlag& f) { return {f.line.reversed(), opposite_arc_point(f)}; }
// F^{--}: both reversed.
inline OrientedFlag flip_both(const OrientedFlag& f) { return {f.line.reversed(), f.p}; }

struct CrossNormalization {
    VahlenMatrix n;              // sends the cross to (F_h, L_v)
    double orthogonality = 0.0;  // dimensionless defect, 0 for a genuine cross
};

inline Vec3 vec(const BoundaryPoint& p) { return p.coords(); }

// Sends a cross to the standard cross (F_h, L_v). With strict = false the
// normal form is built even for a slightly non-orthogonal input, and the
// defect is reported instead of thrown.
inline CrossNormalization normalize_cross(const FlagLineCross& c, bool strict = true, double tol = 1e-8) {
    VahlenMatrix m1 = line_to_vertical(c.line);
    BoundaryPoint u = mobius_apply(m1, c.flag.line.src);
    BoundaryPoint v = mobius_apply(m1, c.flag.line.dst);
    BoundaryPoint p = mobius_apply(m1, c.flag.p);
    if (u.is_infinity() || v.is_infinity() || p.is_infinity())
        throw Error("normalize_cross: flag meets the line at an ideal point");
    const double h = std::sqrt(u.norm() * v.norm());
    if (!(h > 0.0)) throw Error("normalize_cross: flag line meets the line at an ideal point");
    Vec3 uu = scale(vec(u), 1.0 / h), vv = scale(vec(v), 1.0 / h), pp = scale(vec(p), 1.0 / h);
    double defect = std::max({norm(add(uu, vv)) / 2.0, std::abs(norm(vv) - 1.0), std::abs(norm(pp) - 1.0)});
    if (strict && defect > tol) throw Error("normalize_cross: flag and line are not orthogonal");
    Vec3 pd = normalized(sub(vv, uu));
    Vec3 n2 = sub(pp, scale(pd, dot(pp, pd)));
    if (norm(n2) < 1e-9) throw Error("normalize_cross: degenerate flag");
    n2 = normalized(n2);
    Multivector g = rotation_from_frame({pd, n2});
    VahlenMatrix r = diagonal(g.bar());
    return {r * dilation(1.0 / h) * m1, defect};
}

inline VahlenMatrix isometry_between_crosses(const FlagLineCross& c1, const FlagLineCross& c2) {
    return normalize_cross(c2).n.inverse() * normalize_cross(c1).n;
}

// Tangent direction of an oriented line at a point on it (Euclidean unit vector).
inline std::array<double, 4> tangent_at(const OrientedLine& l, const InteriorPoint& x) {
    if (l.dst.is_infinity()) return {0, 0, 0, 1};
    if (l.src.is_infinity()) return {0, 0, 0, -1};
    Vec3 s = vec(l.src), d = vec(l.dst);
    Vec3 c = scale(add(s, d), 0.5);
    Vec3 hh = normalized(sub(d, s));
    std::array<double, 4> h4{hh[0], hh[1], hh[2], 0.0};
    std::array<double, 4> r{x[0] - c[0], x[1] - c[1], x[2] - c[2], x[3]};
    double rn = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2] + r[3] * r[3]);
    for (auto& t : r) t /= rn;
    double k = 0.0;
    for (int i = 0; i < 4; ++i) k += h4[i] * r[i];
    std::array<double, 4> t{};
    double tn = 0.0;
    for (int i = 0; i < 4; ++i) {
        t[i] = h4[i] - k * r[i];
        tn += t[i] * t[i];
    }
    tn = std::sqrt(tn);
    for (auto& q : t) q /= tn;
    return t;
}

// Geodesic through x with initial direction w.
inline OrientedLine geodesic_from_point_direction(const InteriorPoint& x, const std::array<double, 4>& w) {
    Vec3 h{w[0], w[1], w[2]};
    const double hn = norm(h);
    const double wn = std::sqrt(hn * hn + w[3] * w[3]);
    if (wn == 0.0) throw Error("geodesic_from_point_direction: zero direction");
    Vec3 foot{x[0], x[1], x[2]};
    if (hn <= 1e-14 * wn) {
        return w[3] > 0.0 ? OrientedLine{BoundaryPoint(foot), bp_inf()} : OrientedLine{bp_inf(), BoundaryPoint(foot)};
    }
    Vec3 hu = scale(h, 1.0 / hn);
    const double s = x[3] * w[3] / hn;
    Vec3 c = add(foot, scale(hu, s));
    const double r = std::hypot(s, x[3]);
    return {BoundaryPoint(sub(c, scale(hu, r))), BoundaryPoint(add(c, scale(hu, r)))};
}

inline double det4(const std::array<std::array<double, 4>, 4>& m) {
    auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
               m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
               m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
    };
    return m[0][0] * det3(1, 2, 3, 1, 2, 3) - m[0][1] * det3(1, 2, 3, 0, 2, 3) + m[0][2] * det3(1, 2, 3, 0, 1, 3) -
           m[0][3] * det3(1, 2, 3, 0, 1, 2);
}

// Frame (L, L2, L3, L') at the foot of the cross, positively oriented.
inline OrthoFrame cross_to_frame(const FlagLineCross& c) {
    VahlenMatrix inv = normalize_cross(c).n.inverse();
    OrthoFrame f;
    f.base = poincare_extend(inv, InteriorPoint(0, 0, 0, 1));
    const OrientedLine std_lines[4] = {line_h(), line_e1(), line_e2(), line_v()};
    for (int i = 0; i < 4; ++i) f.v[static_cast<std::size_t>(i)] = tangent_at(apply(inv, std_lines[i]), f.base);
    return f;
}

inline FlagLineCross frame_to_cross(const OrthoFrame& f, double tol = 1e-9) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double d = 0.0;
            for (int k = 0; k < 4; ++k) d += f.v[i][k] * f.v[j][k];
            if (std::abs(d - (i == j ? 1.0 : 0.0)) > tol) throw Error("frame_to_cross: frame is not orthonormal");
        }
    if (det4(f.v) <= 0.0) throw Error("frame_to_cross: frame is negatively oriented");
    OrientedLine l1 = geodesic_from_point_direction(f.base, f.v[0]);
    OrientedLine l2 = geodesic_from_point_direction(f.base, f.v[1]);
    OrientedLine l4 = geodesic_from_point_direction(f.base, f.v[3]);
    return {{l1, l2.dst}, l4};
}

namespace minkowski {

using V5 = std::array<double, 5>;

inline double inner(const V5& a, const V5& b) {
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3] + a[4] * b[4];
}

inline V5 point(const InteriorPoint& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    return {(r2 + 1.0) / (2.0 * x[3]), x[0] / x[3], x[1] / x[3], x[2] / x[3], (r2 - 1.0) / (2.0 * x[3])};
}

inline InteriorPoint to_upper(const V5& X) {
    const double h = 1.0 / (X[0] - X[4]);
    return InteriorPoint(X[1] * h, X[2] * h, X[3] * h, h);
}

inline V5 null_vector(const BoundaryPoint& p) {
    if (p.is_infinity()) return {0.5, 0.0, 0.0, 0.0, 0.5};
    const double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    return {(r2 + 1.0) / 2.0, p[0], p[1], p[2], (r2 - 1.0) / 2.0};
}

inline BoundaryPoint boundary(const V5& N) {
    const double lam = N[0] - N[4];
    const double sz = std::max({std::abs(N[0]), std::abs(N[1]), std::abs(N[2]), std::abs(N[3]), std::abs(N[4])});
    if (std::abs(lam) <= 1e-14 * sz) return BoundaryPoint::infinity();
    return {N[1] / lam, N[2] / lam, N[3] / lam};
}

inline V5 combo(double a, const V5& x, double b, const V5& y) {
    V5 r{};
    for (int i = 0; i < 5; ++i) r[i] = a * x[i] + b * y[i];
    return r;
}

// Unit-speed parametrisation of a line, s -> +inf toward dst.
struct Param {
    V5 u, v;
    double k;
    V5 at(double s) const { return combo(std::exp(-s) / k, u, std::exp(s) / k, v); }
};

inline Param param(const OrientedLine& l) {
    Param p{null_vector(l.src), null_vector(l.dst), 0.0};
    p.k = std::sqrt(-2.0 * inner(p.u, p.v));
    return p;
}

}  // namespace minkowski

// Arclength coordinate of a point on an oriented line.
inline double line_parameter(const OrientedLine& l, const InteriorPoint& x) {
    auto p = minkowski::param(l);
    auto X = minkowski::point(x);
    return 0.5 * std::log(minkowski::inner(X, p.u) / minkowski::inner(X, p.v));
}

inline InteriorPoint point_on_line(const OrientedLine& l, double s) { return minkowski::to_upper(minkowski::param(l).at(s)); }

struct CommonPerpendicular {
    OrientedLine line;  // from the foot on l1 to the foot on l2
    InteriorPoint foot1, foot2;
    double distance = 0.0;
    double s = 0.0, t = 0.0;  // arclength parameters of the feet
};

// Minimises cosh d(l1(s), l2(t)) by Newton steps, with a golden-section
// line search when a step fails to decrease it.
inline CommonPerpendicular common_perpendicular(const OrientedLine& l1, const OrientedLine& l2) {
    using namespace minkowski;
    for (const auto* a : {&l1.src, &l1.dst})
        for (const auto* b : {&l2.src, &l2.dst})
            if (approx_equal(*a, *b, 1e-12)) throw Error("common_perpendicular: lines are asymptotic");
    Param P = param(l1), Q = param(l2);
    const double kk = P.k * Q.k;
    const double A = -inner(P.u, Q.u) / kk, B = -inner(P.u, Q.v) / kk, C = -inner(P.v, Q.u) / kk,
                 D = -inner(P.v, Q.v) / kk;
    auto f = [&](double s, double t) {
        return A * std::exp(-s - t) + B * std::exp(-s + t) + C * std::exp(s - t) + D * std::exp(s + t);
    };
    double s = 0.0, t = 0.0;
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        const double a = A * std::exp(-s - t), b = B * std::exp(-s + t), c = C * std::exp(s - t), d = D * std::exp(s + t);
        const double gs = -a - b + c + d, gt = -a + b - c + d;
        const double hss = a + b + c + d, htt = hss, hst = a - b - c + d;
        const double det = hss * htt - hst * hst;
        double ds = -gs, dt = -gt;
        if (det > 1e-300 * hss * hss) {
            ds = -(htt * gs - hst * gt) / det;
            dt = -(hss * gt - hst * gs) / det;
        }
        const double f0 = a + b + c + d;
        double lam = 1.0;
        if (!(f(s + ds, t + dt) <= f0)) {
            // golden-section search for the step length on [0, 1]
            const double g = (std::sqrt(5.0) - 1.0) / 2.0;
            double lo = 0.0, hi = 1.0;
            double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
            double f1 = f(s + x1 * ds, t + x1 * dt), f2 = f(s + x2 * ds, t + x2 * dt);
            for (int k = 0; k < 200 && hi - lo > 1e-14; ++k) {
                if (f1 < f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - g * (hi - lo);
                    f1 = f(s + x1 * ds, t + x1 * dt);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + g * (hi - lo);
                    f2 = f(s + x2 * ds, t + x2 * dt);
                }
            }
            lam = 0.5 * (lo + hi);
        }
        s += lam * ds;
        t += lam * dt;
        if (!std::isfinite(s) || !std::isfinite(t) || std::abs(s) > 700.0 || std::abs(t) > 700.0)
            throw Error("common_perpendicular: minimisation diverged (asymptotic lines)");
        if (std::abs(lam * ds) < 1e-12 && std::abs(lam * dt) < 1e-12) {
            converged = true;
            break;
        }
    }
    if (!converged) throw Error("common_perpendicular: minimisation did not converge");
    const double ch = f(s, t);
    const double dist = std::acosh(std::max(1.0, ch));
    if (dist < 1e-6) throw Error("common_perpendicular: lines intersect");
    V5 X = P.at(s), Y = Q.at(t);
    const double ed = std::exp(-dist);
    V5 src = combo(1.0, X, -ed, Y), dst = combo(1.0, Y, -ed, X);
    CommonPerpendicular r;
    r.line = OrientedLine(boundary(src), boundary(dst));
    r.foot1 = to_upper(X);
    r.foot2 = to_upper(Y);
    r.distance = dist;
    r.s = s;
    r.t = t;
    return r;
}

// Intersection point of two orthogonal lines, with the orthogonality defect.
inline std::pair<InteriorPoint, double> perpendicular_foot(const OrientedLine& l, const OrientedLine& lp) {
    VahlenMatrix m = line_to_vertical(lp);
    BoundaryPoint u = mobius_apply(m, l.src), v = mobius_apply(m, l.dst);
    if (u.is_infinity() || v.is_infinity()) throw Error("perpendicular_foot: lines share an ideal point");
    const double h = std::sqrt(u.norm() * v.norm());
    if (!(h > 0.0)) throw Error("perpendicular_foot: lines share an ideal point");
    const double defect = norm(add(vec(u), vec(v))) / (2.0 * h);
    return {poincare_extend(m.inverse(), InteriorPoint(0, 0, 0, h)), defect};
}

// The two flags on l_mid orthogonal to both neighbours, one per plane orientation.
inline std::array<OrientedFlag, 2> augment(const OrientedLine& prev, const OrientedLine& mid, const OrientedLine& next) {
    VahlenMatrix m = line_to_vertical(mid);
    auto dir = [&](const OrientedLine& l) {
        BoundaryPoint a = mobius_apply(m, l.src), b = mobius_apply(m, l.dst);
        if (a.is_infinity() || b.is_infinity()) throw Error("augment: neighbour shares an ideal point with the middle line");
        return normalized(sub(vec(b), vec(a)));
    };
    Vec3 q1 = dir(prev), q2 = dir(next);
    Vec3 d = cross(q1, q2);
    if (norm(d) < 1e-8) throw Error("augment: the three lines are coplanar");
    d = normalized(d);
    VahlenMatrix mi = m.inverse();
    return {OrientedFlag(mid, mobius_apply(mi, BoundaryPoint(d))),
            OrientedFlag(mid, mobius_apply(mi, BoundaryPoint(scale(d, -1.0))))};
}

enum class HalfLengthKind { Quaternion, E1Complex, E2Complex, Complex };

// A half-length as its pair of branches {delta, delta'} with exp(delta') = -exp(delta).
struct HalfLength {
    HalfLengthKind kind = HalfLengthKind::Quaternion;
    std::array<Multivector, 2> values;

    // Index of the imaginary unit blade for the complex kinds.
    unsigned unit_mask() const { return kind == HalfLengthKind::E2Complex ? 2u : 1u; }

    static double wrap_pi(double y) {
        const double t = 2.0 * std::numbers::pi;
        double r = std::remainder(y, t);
        return r;
    }

    bool equivalent(const Multivector& x, const Multivector& y, double tol) const {
        if (kind == HalfLengthKind::Quaternion) {
            Multivector ex = exp(x), ey = exp(y);
            return (ex - ey).max_abs() <= tol * std::max({1.0, ex.max_abs(), ey.max_abs()});
        }
        const unsigned u = unit_mask();
        Multivector d = x - y;
        double other = 0.0;
        for (unsigned k = 1; k < d.size(); ++k)
            if (k != u) other = std::max(other, std::abs(d[k]));
        return std::abs(d[0]) <= tol && other <= tol && std::abs(wrap_pi(d[u])) <= tol;
    }

    bool contains(const Multivector& x, double tol = 1e-9) const {
        return equivalent(x, values[0], tol) || equivalent(x, values[1], tol);
    }

    bool same_pair(const HalfLength& o, double tol = 1e-9) const {
        return o.contains(values[0], tol) && o.contains(values[1], tol);
    }
};

// Logarithm of s in the commutative plane R + R e_u, imaginary part in (-pi, pi].
inline Multivector complex_log(const Multivector& s, unsigned u) {
    std::complex<double> z(s[0], s[u]);
    if (std::abs(z) == 0.0) throw Error("complex_log: zero argument");
    std::complex<double> w = std::log(z);
    Multivector r(s.dim());
    r[0] = w.real();
    r[u] = w.imag();
    return r;
}

inline HalfLength complex_half_length(HalfLengthKind kind, const Multivector& delta) {
    HalfLength h;
    h.kind = kind;
    const unsigned u = h.unit_mask();
    Multivector alt = delta;
    alt[u] = HalfLength::wrap_pi(alt[u] + std::numbers::pi);
    h.values = {delta, alt};
    return h;
}

struct HalfDistanceOptions {
    bool strict = true;
    double tol = 1e-8;
};

// Half-length along l between two flags orthogonal to it.
inline HalfLength quaternion_half_distance(const OrientedFlag& f1, const OrientedLine& l, const OrientedFlag& f2,
                                           HalfDistanceOptions opt = {}, double* defect = nullptr) {
    CrossNormalization n1 = normalize_cross({f1, l}, opt.strict, opt.tol);
    CrossNormalization n2 = normalize_cross({f2, l}, opt.strict, opt.tol);
    if (defect) *defect = std::max(n1.orthogonality, n2.orthogonality);
    VahlenMatrix eta = n1.n * n2.n.inverse();
    const double off = std::max(eta.b.max_abs(), eta.c.max_abs());
    if (opt.strict && off > 1e-7 * std::max(1.0, eta.max_abs())) throw Error("quaternion_half_distance: normal form is not diagonal");
    HalfLength h;
    h.kind = HalfLengthKind::Quaternion;
    h.values = {log(eta.a).principal, log(-eta.a).principal};
    return h;
}

// Half-length of the e2-complex distance between two lines orthogonal to the flag f.
inline HalfLength e2_half_distance(const OrientedLine& l1, const OrientedFlag& f, const OrientedLine& l2,
                                   HalfDistanceOptions opt = {}, double* defect = nullptr) {
    CrossNormalization n1 = normalize_cross({f, l1}, opt.strict, opt.tol);
    CrossNormalization n2 = normalize_cross({f, l2}, opt.strict, opt.tol);
    if (defect) *defect = std::max(n1.orthogonality, n2.orthogonality);
    VahlenMatrix eta = n1.n * n2.n.inverse();
    Multivector s = eta.a + eta.b;
    const double off = std::max({(eta.a - eta.d).max_abs(), (eta.b - eta.c).max_abs(), std::abs(s[1]), std::abs(s[3])});
    if (opt.strict && off > 1e-7 * std::max(1.0, eta.max_abs())) throw Error("e2_half_distance: normal form is not symmetric in R + R e2");
    return complex_half_length(HalfLengthKind::E2Complex, complex_log(s, 2u));
}

// Same pair of lines, normalised with the line to L[-1,1] and the flag to F_v.
inline HalfLength e1_half_distance(const OrientedLine& l1, const OrientedFlag& f, const OrientedLine& l2,
                                   HalfDistanceOptions opt = {}) {
    CrossNormalization n1 = normalize_cross({f, l1}, opt.strict, opt.tol);
    CrossNormalization n2 = normalize_cross({f, l2}, opt.strict, opt.tol);
    VahlenMatrix k = matrix_k();
    VahlenMatrix eta = k.inverse() * n1.n * n2.n.inverse() * k;
    const double off = std::max({eta.b.max_abs(), eta.c.max_abs(), std::abs(eta.a[2]), std::abs(eta.a[3])});
    if (opt.strict && off > 1e-7 * std::max(1.0, eta.max_abs())) throw Error("e1_half_distance: normal form is not diagonal in R + R e1");
    return complex_half_length(HalfLengthKind::E1Complex, complex_log(eta.a, 1u));
}

// chi: R + R e1 -> R + R e2, x + y e1 -> x + y e2
inline Multivector chi(const Multivector& x) { return Multivector::a2(x[0], 0.0, x[1], 0.0); }

// Lines with ideal points in R + R e1 u {inf} span the copy of H^3 at x2 = 0.
inline bool in_h3(const OrientedLine& l, double tol = 1e-12) {
    for (const auto* p : {&l.src, &l.dst})
        if (!p->is_infinity() && std::abs((*p)[2]) > tol * std::max(1.0, p->norm())) return false;
    return true;
}

struct LinePairNormalization {
    VahlenMatrix n;  // entries in R + R e1
    double orthogonality = 0.0;
};

// Sends l to L[0,inf] and the orthogonal line lp to L[-1,1] using matrices over R + R e1.
inline LinePairNormalization normalize_lines_h3(const OrientedLine& l, const OrientedLine& lp, bool strict = true,
                                                double tol = 1e-8) {
    if (!in_h3(l, 1e-9) || !in_h3(lp, 1e-9)) throw Error("normalize_lines_h3: line outside H^3");
    VahlenMatrix m1 = line_to_vertical(l);
    BoundaryPoint u = mobius_apply(m1, lp.src), v = mobius_apply(m1, lp.dst);
    if (u.is_infinity() || v.is_infinity()) throw Error("normalize_lines_h3: lines share an ideal point");
    const double h = std::sqrt(u.norm() * v.norm());
    if (!(h > 0.0)) throw Error("normalize_lines_h3: lines share an ideal point");
    const double defect = norm(add(vec(u), vec(v))) / (2.0 * h);
    if (strict && defect > tol) throw Error("normalize_lines_h3: lines are not orthogonal");
    Vec3 w = sub(vec(v), vec(u));
    const double arg = std::atan2(w[1], w[0]);
    Multivector r = Multivector::a2(std::cos(-arg / 2.0), std::sin(-arg / 2.0), 0.0, 0.0);
    return {diagonal(r) * dilation(1.0 / h) * m1, defect};
}

// Half complex distance along l_n from l_prev to l_next (lines of H^3).
inline HalfLength h3_half_length(const OrientedLine& prev, const OrientedLine& mid, const OrientedLine& next,
                                 HalfDistanceOptions opt = {}, double* defect = nullptr) {
    LinePairNormalization n = normalize_lines_h3(mid, prev, opt.strict, opt.tol);
    double d2 = 0.0;
    auto foot = perpendicular_foot(next, mid);
    d2 = foot.second;
    if (opt.strict && d2 > opt.tol) throw Error("h3_half_length: lines are not orthogonal");
    if (defect) *defect = std::max(n.orthogonality, d2);
    BoundaryPoint z = mobius_apply(n.n, next.dst);
    if (z.is_infinity()) throw Error("h3_half_length: degenerate configuration");
    Multivector zm = Multivector::a2(z[0], z[1], 0.0, 0.0);
    Multivector sigma = complex_log(zm, 1u);
    return complex_half_length(HalfLengthKind::Complex, sigma * 0.5);
}

}  // namespace hexagauss
