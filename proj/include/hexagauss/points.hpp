#pragma once

#include <array>
#include <cmath>

#include "clifford.hpp"

namespace hexagauss {

// Point of the ideal boundary R^3 u {inf}: x0 + x1 e1 + x2 e2, or infinity.
class BoundaryPoint {
public:
    BoundaryPoint() = default;
    BoundaryPoint(double x0, double x1, double x2) : x_{x0, x1, x2} {}
    explicit BoundaryPoint(const std::array<double, 3>& x) : x_(x) {}

    static BoundaryPoint infinity() {
        BoundaryPoint p;
        p.inf_ = true;
        return p;
    }

    static BoundaryPoint from_multivector(const Multivector& m, double tol = 1e-9) {
        if (!m.is_paravector(tol)) throw Error("BoundaryPoint: not a para-vector");
        return BoundaryPoint(m[0], m.dim() >= 1 ? m[1] : 0.0, m.dim() >= 2 ? m[2] : 0.0);
    }

    bool is_infinity() const { return inf_; }
    const std::array<double, 3>& coords() const { return x_; }
    double operator[](int i) const { return x_[static_cast<std::size_t>(i)]; }

    Multivector to_multivector(int n = 2) const {
        if (inf_) throw Error("BoundaryPoint: infinity has no finite value");
        if (n < 2 && x_[2] != 0.0) throw Error("BoundaryPoint: point outside A_1");
        return Multivector::paravector(x_[0], x_[1], x_[2], n);
    }

    double norm() const { return std::sqrt(x_[0] * x_[0] + x_[1] * x_[1] + x_[2] * x_[2]); }

private:
    bool inf_ = false;
    std::array<double, 3> x_{0.0, 0.0, 0.0};
};

inline double boundary_distance(const BoundaryPoint& a, const BoundaryPoint& b) {
    if (a.is_infinity() || b.is_infinity()) return (a.is_infinity() && b.is_infinity()) ? 0.0 : INFINITY;
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

// Point x0 + x1 e1 + x2 e2 + x3 e3 of the upper half-space, x3 > 0.
struct InteriorPoint {
    std::array<double, 4> x{0.0, 0.0, 0.0, 1.0};

    InteriorPoint() = default;
    InteriorPoint(double x0, double x1, double x2, double x3) : x{x0, x1, x2, x3} {
        if (!(x3 > 0.0)) throw Error("InteriorPoint: height must be positive");
    }
    double operator[](int i) const { return x[static_cast<std::size_t>(i)]; }

    Multivector to_multivector() const {
        Multivector m(3);
        m[0] = x[0];
        m[1] = x[1];
        m[2] = x[2];
        m[4] = x[3];
        return m;
    }
};

// Hyperbolic distance in the upper half-space model.
inline double distance(const InteriorPoint& p, const InteriorPoint& q) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
    return 2.0 * std::asinh(std::sqrt(s) / (2.0 * std::sqrt(p[3] * q[3])));
}

}  // namespace hexagauss
