#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "clifford.hpp"
#include "points.hpp"
#include "transcend.hpp"

namespace hexagauss {

// 2x2 matrix over A_2 acting by x -> (ax+b)(cx+d)^{-1}.
struct VahlenMatrix {
    Multivector a = Multivector::scalar(1.0);
    Multivector b = Multivector::scalar(0.0);
    Multivector c = Multivector::scalar(0.0);
    Multivector d = Multivector::scalar(1.0);

    static VahlenMatrix identity() { return {}; }

    static VahlenMatrix from(const Multivector& a, const Multivector& b, const Multivector& c, const Multivector& d) {
        VahlenMatrix m;
        m.a = a;
        m.b = b;
        m.c = c;
        m.d = d;
        return m;
    }

    friend VahlenMatrix operator*(const VahlenMatrix& x, const VahlenMatrix& y) {
        return from(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
    }
    friend VahlenMatrix operator*(double s, const VahlenMatrix& x) { return from(s * x.a, s * x.b, s * x.c, s * x.d); }
    friend VahlenMatrix operator-(const VahlenMatrix& x) { return (-1.0) * x; }

    // Inverse of a Vahlen matrix: (d*, -b*; -c*, a*).
    VahlenMatrix inverse() const { return from(d.star(), -b.star(), -c.star(), a.star()); }

    Multivector pseudo_determinant() const { return a * d.star() - b * c.star(); }

    double max_abs() const { return std::max({a.max_abs(), b.max_abs(), c.max_abs(), d.max_abs()}); }
};

inline double distance_linf(const VahlenMatrix& x, const VahlenMatrix& y) {
    return std::max({(x.a - y.a).max_abs(), (x.b - y.b).max_abs(), (x.c - y.c).max_abs(), (x.d - y.d).max_abs()});
}

// Matrices act projectively up to sign.
inline double distance_up_to_sign(const VahlenMatrix& x, const VahlenMatrix& y) {
    return std::min(distance_linf(x, y), distance_linf(x, -y));
}

struct VahlenDiagnostics {
    double determinant_residual = 0.0;  // |ad* - bc* - 1|
    double ab_residual = 0.0;           // non-para-vector part of ab*
    double cd_residual = 0.0;           // non-para-vector part of cd*
    bool entries_in_group = true;
    bool ok = false;
    std::string reason;
};

inline bool in_group_or_zero(const Multivector& x) { return x.max_abs() == 0.0 || is_clifford_group(x); }

inline VahlenDiagnostics diagnose_vahlen(const VahlenMatrix& m, double tol = 1e-10) {
    VahlenDiagnostics g;
    g.determinant_residual = (m.pseudo_determinant() - Multivector::scalar(1.0, m.a.dim())).max_abs();
    g.ab_residual = (m.a * m.b.star()).non_paravector_size();
    g.cd_residual = (m.c * m.d.star()).non_paravector_size();
    g.entries_in_group = in_group_or_zero(m.a) && in_group_or_zero(m.b) && in_group_or_zero(m.c) && in_group_or_zero(m.d);
    double scale = std::max(1.0, m.max_abs() * m.max_abs());
    if (g.determinant_residual > tol * scale) g.reason = "pseudo-determinant ad* - bc* differs from 1";
    else if (g.ab_residual > tol * scale) g.reason = "ab* is not a para-vector";
    else if (g.cd_residual > tol * scale) g.reason = "cd* is not a para-vector";
    else if (!g.entries_in_group) g.reason = "entry outside the Clifford group";
    g.ok = g.reason.empty();
    return g;
}

inline bool is_vahlen(const VahlenMatrix& m, double tol = 1e-10) { return diagnose_vahlen(m, tol).ok; }

inline BoundaryPoint mobius_apply(const VahlenMatrix& m, const BoundaryPoint& x) {
    if (x.is_infinity()) {
        if (m.c.norm() <= 1e-9 * m.a.norm()) return BoundaryPoint::infinity();
        return BoundaryPoint::from_multivector(m.a * inverse(m.c), 1e-8);
    }
    Multivector X = x.to_multivector(m.a.dim());
    Multivector den = m.c * X + m.d;
    if (den.norm() <= 1e-9 * (m.c.norm() * X.norm() + m.d.norm())) return BoundaryPoint::infinity();
    Multivector y = (m.a * X + m.b) * inverse(den);
    return BoundaryPoint::from_multivector(y, 1e-8);
}

// Same formula in A_3 on the upper half-space.
inline InteriorPoint poincare_extend(const VahlenMatrix& m, const InteriorPoint& p) {
    Multivector X = p.to_multivector();
    Multivector a = m.a.embed(3), b = m.b.embed(3), c = m.c.embed(3), d = m.d.embed(3);
    Multivector y = (a * X + b) * inverse(c * X + d);
    if (y.non_paravector_size() > 1e-8 * std::max(1.0, y.max_abs()))
        throw Error("poincare_extend: image is not a para-vector; matrix is not Vahlen");
    if (!(y[4] > 0.0)) throw Error("poincare_extend: image left the upper half-space");
    return InteriorPoint(y[0], y[1], y[2], y[4]);
}

inline VahlenMatrix translation(const Multivector& y) {
    return VahlenMatrix::from(Multivector::scalar(1.0, y.dim()), y, Multivector::scalar(0.0, y.dim()),
                              Multivector::scalar(1.0, y.dim()));
}

// x -> -x^{-1}
inline VahlenMatrix inversion_j(int n = 2) {
    return VahlenMatrix::from(Multivector::scalar(0.0, n), Multivector::scalar(-1.0, n), Multivector::scalar(1.0, n),
                              Multivector::scalar(0.0, n));
}

// diag(a, a*^{-1}): x -> a x a*
inline VahlenMatrix diagonal(const Multivector& a) {
    return VahlenMatrix::from(a, Multivector::scalar(0.0, a.dim()), Multivector::scalar(0.0, a.dim()),
                              hexagauss::inverse(a.star()));
}

// Factorisation into translations, a diagonal and the inversion J.
inline std::vector<VahlenMatrix> decompose_elementary(const VahlenMatrix& m) {
    const int n = m.a.dim();
    const double scale = std::max(1e-300, m.max_abs());
    std::vector<VahlenMatrix> f;
    if (m.c.max_abs() > 1e-12 * scale) {
        Multivector ci = inverse(m.c);
        f.push_back(translation(m.a * ci));
        f.push_back(VahlenMatrix::from(inverse(m.c.star()), Multivector::scalar(0.0, n), Multivector::scalar(0.0, n), m.c));
        f.push_back(VahlenMatrix::from(Multivector::scalar(0.0, n), Multivector::scalar(-1.0, n),
                                       Multivector::scalar(1.0, n), Multivector::scalar(0.0, n)));
        f.push_back(translation(ci * m.d));
    } else {
        f.push_back(VahlenMatrix::from(m.a, Multivector::scalar(0.0, n), Multivector::scalar(0.0, n),
                                       inverse(m.a.star())));
        f.push_back(translation(inverse(m.a) * m.b));
    }
    return f;
}

inline VahlenMatrix product(const std::vector<VahlenMatrix>& fs) {
    VahlenMatrix r = VahlenMatrix::identity();
    if (!fs.empty()) {
        int n = fs.front().a.dim();
        r = VahlenMatrix::from(Multivector::scalar(1.0, n), Multivector::scalar(0.0, n), Multivector::scalar(0.0, n),
                               Multivector::scalar(1.0, n));
    }
    for (const auto& f : fs) r = r * f;
    return r;
}

// [[cosh x, sinh x], [sinh x, cosh x]], the isometries fixing +1 and -1.
inline VahlenMatrix normal_form_pm1(const Multivector& x) {
    Multivector ch = cosh(x), sh = sinh(x);
    return VahlenMatrix::from(ch, sh, sh, ch);
}

inline VahlenMatrix diag_exp(const Multivector& x) { return VahlenMatrix::from(exp(x), Multivector::scalar(0.0, x.dim()), Multivector::scalar(0.0, x.dim()), exp(-x.star())); }

// ((e1+e2)/2) [[1,1],[1,-1]]; K^2 = -I and K swaps the two standard crosses.
inline VahlenMatrix matrix_k() {
    Multivector e = Multivector::a2(0.0, 0.5, 0.5, 0.0);
    return VahlenMatrix::from(e, e, e, -e);
}

// Flip the overall sign so the first nonzero coefficient of a (then b, c, d) is positive.
inline VahlenMatrix canonical_sign(const VahlenMatrix& m) {
    for (const Multivector* x : {&m.a, &m.b, &m.c, &m.d}) {
        for (unsigned k = 0; k < x->size(); ++k) {
            double v = (*x)[k];
            if (v == 0.0) continue;
            return v > 0.0 ? m : -m;
        }
    }
    return m;
}

struct FixedPointClass {
    std::vector<std::string> fixed_boundary;
    bool fixes_e3 = false;
};

inline FixedPointClass classify_fixing(const VahlenMatrix& m, double tol = 1e-9) {
    struct Named {
        const char* name;
        BoundaryPoint p;
    };
    const Named pts[] = {{"0", {0, 0, 0}},   {"inf", BoundaryPoint::infinity()}, {"1", {1, 0, 0}},  {"-1", {-1, 0, 0}},
                         {"e1", {0, 1, 0}},  {"-e1", {0, -1, 0}},           {"e2", {0, 0, 1}},  {"-e2", {0, 0, -1}}};
    FixedPointClass r;
    for (const auto& q : pts) {
        BoundaryPoint y = mobius_apply(m, q.p);
        bool same = q.p.is_infinity() ? y.is_infinity() : (!y.is_infinity() && boundary_distance(y, q.p) < tol);
        if (same) r.fixed_boundary.emplace_back(q.name);
    }
    InteriorPoint z = poincare_extend(m, InteriorPoint(0, 0, 0, 1));
    r.fixes_e3 = distance(z, InteriorPoint(0, 0, 0, 1)) < tol;
    return r;
}

}  // namespace hexagauss
