#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hypgeo.hpp"
#include "random.hpp"

namespace hexagauss {

struct HexagonH3 {
    std::array<OrientedLine, 6> sides;
};

using Side = std::variant<OrientedLine, OrientedFlag>;

// Sides alternate between lines and flags; the generator puts lines at S1, S3, S5.
struct AugmentedHexagonH4 {
    std::array<Side, 6> sides;
};

inline const OrientedLine& side_line(const Side& s) {
    if (const auto* l = std::get_if<OrientedLine>(&s)) return *l;
    return std::get<OrientedFlag>(s).line;
}
inline bool is_flag(const Side& s) { return std::holds_alternative<OrientedFlag>(s); }

inline std::size_t idx(int n) { return static_cast<std::size_t>(((n % 6) + 6) % 6); }

// Rotates the labels by one when S1 is a flag, so lines sit at S1, S3, S5.
inline AugmentedHexagonH4 canonical_parity(const AugmentedHexagonH4& h) {
    for (int n = 0; n < 6; ++n)
        if (is_flag(h.sides[idx(n)]) == is_flag(h.sides[idx(n + 1)]))
            throw Error("augmented hexagon: sides must alternate between lines and flags");
    if (!is_flag(h.sides[0])) return h;
    AugmentedHexagonH4 r;
    for (int n = 0; n < 6; ++n) r.sides[idx(n)] = h.sides[idx(n + 1)];
    return r;
}

// ---------------------------------------------------------------- generation

// e1/sqrt2 [[1,1],[1,-1]]: swaps L[0,inf] and L[-1,1], fixes e3, preserves H^3.
inline VahlenMatrix matrix_k3() {
    Multivector e = Multivector::a2(0.0, std::sqrt(0.5), 0.0, 0.0);
    return VahlenMatrix::from(e, e, e, -e);
}

enum class GenSpace { H4, H3, Plane };

inline VahlenMatrix random_isometry(Rng& rng, GenSpace sp) {
    auto pv = [&] {
        double x0 = rng.uniform(-1.0, 1.0);
        double x1 = sp == GenSpace::Plane ? 0.0 : rng.uniform(-1.0, 1.0);
        double x2 = sp == GenSpace::H4 ? rng.uniform(-1.0, 1.0) : 0.0;
        return Multivector::paravector(x0, x1, x2);
    };
    Multivector g;
    if (sp == GenSpace::Plane) {
        g = Multivector::scalar(1.0);
    } else if (sp == GenSpace::H3) {
        double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        g = Multivector::a2(std::cos(phi), std::sin(phi), 0.0, 0.0);
    } else {
        g = Multivector::a2(rng.normal(), rng.normal(), rng.normal(), rng.normal());
        g = g / g.norm();
    }
    g = g * std::exp(rng.uniform(-0.5, 0.5));
    return translation(pv()) * diagonal(g) * inversion_j() * translation(pv());
}

// Unit g whose rotation sends 1 to a random direction admissible in the space.
// In the plane every turn is the half-turn g = e1, which keeps the chain convex.
inline Multivector random_turn(Rng& rng, GenSpace sp) {
    if (sp == GenSpace::Plane) return Multivector::e(1);
    if (sp == GenSpace::H3) {
        double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        return Multivector::a2(std::cos(phi / 2.0), std::sin(phi / 2.0), 0.0, 0.0);
    }
    Vec3 w{rng.normal(), rng.normal(), rng.normal()};
    Vec3 u{rng.normal(), rng.normal(), rng.normal()};
    w = normalized(w);
    u = normalized(sub(u, scale(w, dot(u, w))));
    return rotation_from_frame({w, u});
}

inline BoundaryPoint clean(const BoundaryPoint& p, GenSpace sp) {
    if (p.is_infinity() || sp == GenSpace::H4) return p;
    return {p[0], sp == GenSpace::Plane ? 0.0 : p[1], 0.0};
}

// Side of a point relative to a line of the vertical half-plane over R.
inline double planar_side(const OrientedLine& l, const InteriorPoint& z) {
    if (l.src.is_infinity()) return l.dst[0] - z[0];
    if (l.dst.is_infinity()) return z[0] - l.src[0];
    const double c = 0.5 * (l.src[0] + l.dst[0]), r = 0.5 * std::abs(l.dst[0] - l.src[0]);
    const double q = (z[0] - c) * (z[0] - c) + z[3] * z[3] - r * r;
    return l.dst[0] > l.src[0] ? q : -q;
}

struct ChainResult {
    std::array<OrientedLine, 6> lines;
    std::array<InteriorPoint, 6> vertices;  // vertices[n] = L_n meets L_{n+1}
};

inline std::array<InteriorPoint, 6> hexagon_vertices(const std::array<OrientedLine, 6>& l) {
    std::array<InteriorPoint, 6> v;
    for (int n = 0; n < 6; ++n) v[idx(n)] = perpendicular_foot(l[idx(n)], l[idx(n + 1)]).first;
    return v;
}

inline ChainResult random_chain(Rng& rng, GenSpace sp, int max_attempts = 32) {
    const VahlenMatrix k3 = matrix_k3();
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        try {
            ChainResult r;
            VahlenMatrix m = random_isometry(rng, sp);
            r.lines[0] = apply(m, line_v());
            for (int k = 1; k <= 4; ++k) {
                m = m * dilation(std::exp(rng.uniform(0.5, 2.0)));
                m = m * diagonal(random_turn(rng, sp)) * k3;
                r.lines[idx(k)] = apply(m, line_v());
            }
            CommonPerpendicular cp = common_perpendicular(r.lines[4], r.lines[0]);
            if (cp.distance < 0.05) continue;
            r.lines[5] = OrientedLine(clean(cp.line.src, sp), clean(cp.line.dst, sp));
            r.vertices = hexagon_vertices(r.lines);
            bool ok = true;
            for (int n = 0; n < 6 && ok; ++n) {
                if (distance(r.vertices[idx(n - 1)], r.vertices[idx(n)]) < 0.05) ok = false;
                if (perpendicular_foot(r.lines[idx(n)], r.lines[idx(n + 1)]).second > 1e-9) ok = false;
            }
            if (!ok) continue;
            if (sp == GenSpace::Plane) {
                for (int n = 0; n < 6 && ok; ++n) {
                    double s0 = 0.0;
                    for (int j = 0; j < 6 && ok; ++j) {
                        if (j == n || j == (n + 5) % 6) continue;  // vertices on L_n
                        double s = planar_side(r.lines[idx(n)], r.vertices[idx(j)]);
                        if (std::abs(s) < 1e-6) ok = false;
                        if (s0 == 0.0) s0 = s;
                        else if ((s > 0) != (s0 > 0)) ok = false;
                    }
                }
                if (!ok) continue;
            }
            return r;
        } catch (const Error&) {
        }
    }
    throw Error("hexagon generator: no admissible configuration after retries");
}

inline HexagonH3 random_hexagon_h3(Rng& rng) {
    ChainResult c = random_chain(rng, GenSpace::H3);
    HexagonH3 h;
    for (int n = 0; n < 6; ++n) h.sides[idx(n)] = rng.coin() ? c.lines[idx(n)] : c.lines[idx(n)].reversed();
    return h;
}

inline AugmentedHexagonH4 random_augmented_hexagon_h4(Rng& rng, int max_attempts = 32) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        try {
            ChainResult c = random_chain(rng, GenSpace::H4);
            std::array<OrientedLine, 6> l;
            for (int n = 0; n < 6; ++n) l[idx(n)] = rng.coin() ? c.lines[idx(n)] : c.lines[idx(n)].reversed();
            AugmentedHexagonH4 h;
            for (int n = 0; n < 6; n += 2) h.sides[idx(n)] = l[idx(n)];
            for (int n = 1; n < 6; n += 2) {
                auto flags = augment(l[idx(n - 1)], l[idx(n)], l[idx(n + 1)]);
                h.sides[idx(n)] = flags[rng.coin() ? 0 : 1];
            }
            return h;
        } catch (const Error&) {
        }
    }
    throw Error("hexagon generator: no admissible configuration after retries");
}

// Convex right-angled hexagon of the hyperbolic plane (the vertical half-plane
// over R), sides oriented along the boundary cycle, with measured lengths.
struct PlanarHexagon {
    HexagonH3 hex;
    std::array<double, 6> lengths{};
};

inline PlanarHexagon random_planar_hexagon(Rng& rng) {
    ChainResult c = random_chain(rng, GenSpace::Plane);
    PlanarHexagon p;
    for (int n = 0; n < 6; ++n) {
        const InteriorPoint& from = c.vertices[idx(n - 1)];
        const InteriorPoint& to = c.vertices[idx(n)];
        const OrientedLine& l = c.lines[idx(n)];
        p.hex.sides[idx(n)] = line_parameter(l, to) > line_parameter(l, from) ? l : l.reversed();
        p.lengths[idx(n)] = distance(from, to);
    }
    return p;
}

// ---------------------------------------------------------------- half-lengths

struct SideDefects {
    std::array<double, 6> orthogonality{};  // defect at the junction of S_n and S_{n+1}
    double max() const { return *std::max_element(orthogonality.begin(), orthogonality.end()); }
};

inline std::array<HalfLength, 6> half_lengths(const HexagonH3& h, HalfDistanceOptions opt = {}, SideDefects* def = nullptr) {
    std::array<HalfLength, 6> r;
    for (int n = 0; n < 6; ++n) {
        r[idx(n)] = h3_half_length(h.sides[idx(n - 1)], h.sides[idx(n)], h.sides[idx(n + 1)], opt);
        if (def) def->orthogonality[idx(n)] = perpendicular_foot(h.sides[idx(n)], h.sides[idx(n + 1)]).second;
    }
    return r;
}

// Lines at S1, S3, S5 carry quaternion half-lengths, flags at S2, S4, S6 e2-complex ones.
inline std::array<HalfLength, 6> half_lengths(const AugmentedHexagonH4& hin, HalfDistanceOptions opt = {},
                                              SideDefects* def = nullptr) {
    AugmentedHexagonH4 h = canonical_parity(hin);
    std::array<HalfLength, 6> r;
    for (int n = 0; n < 6; ++n) {
        const Side& prev = h.sides[idx(n - 1)];
        const Side& mid = h.sides[idx(n)];
        const Side& next = h.sides[idx(n + 1)];
        if (n % 2 == 0) {
            double d = 0.0;
            r[idx(n)] = quaternion_half_distance(std::get<OrientedFlag>(prev), std::get<OrientedLine>(mid),
                                                 std::get<OrientedFlag>(next), opt, &d);
            if (def) {
                // defects of the crosses (S_{n-1}, S_n) and (S_{n+1}, S_n)
                double a = normalize_cross({std::get<OrientedFlag>(prev), std::get<OrientedLine>(mid)}, false).orthogonality;
                double b = normalize_cross({std::get<OrientedFlag>(next), std::get<OrientedLine>(mid)}, false).orthogonality;
                def->orthogonality[idx(n - 1)] = std::max(def->orthogonality[idx(n - 1)], a);
                def->orthogonality[idx(n)] = std::max(def->orthogonality[idx(n)], b);
            }
        } else {
            r[idx(n)] = e2_half_distance(std::get<OrientedLine>(prev), std::get<OrientedFlag>(mid),
                                         std::get<OrientedLine>(next), opt);
        }
    }
    return r;
}

// Picks one branch per side; bit n of mask selects the second value of side n+1.
inline std::array<Multivector, 6> choose_branches(const std::array<HalfLength, 6>& h, unsigned mask = 0) {
    std::array<Multivector, 6> d;
    for (int n = 0; n < 6; ++n) d[idx(n)] = h[idx(n)].values[(mask >> n) & 1u];
    return d;
}

// ---------------------------------------------------------------- matrix form

// A_n: diag(exp d, exp(-d*)) for odd n, [[cosh d, sinh d], [sinh d, cosh d]] for even n.
inline VahlenMatrix normal_form(int n, const Multivector& d) { return (n % 2 == 1) ? diag_exp(d) : normal_form_pm1(d); }

inline VahlenMatrix normal_form_product(const std::array<Multivector, 6>& d) {
    VahlenMatrix p = normal_form(1, d[0]);
    for (int n = 2; n <= 6; ++n) p = p * normal_form(n, d[idx(n - 1)]);
    return p;
}

struct Closure {
    std::array<VahlenMatrix, 6> tau;  // tau_n fixes S_n and sends S_{n-1} to S_{n+1}
    VahlenMatrix product;             // tau_6 ... tau_1
    int epsilon = 1;
    double residual = 0.0;  // |tau_6 ... tau_1 - eps I|
};

inline VahlenMatrix eps_identity(int eps) {
    return VahlenMatrix::from(Multivector::scalar(eps), Multivector::scalar(0.0), Multivector::scalar(0.0), Multivector::scalar(eps));
}

inline Closure finish_closure(Closure c) {
    c.product = c.tau[5];
    for (int n = 4; n >= 0; --n) c.product = c.product * c.tau[idx(n)];
    const double rp = distance_linf(c.product, eps_identity(1)), rm = distance_linf(c.product, eps_identity(-1));
    c.epsilon = rp <= rm ? 1 : -1;
    c.residual = std::min(rp, rm);
    return c;
}

// The product is formed after moving (S6, S1) to the standard position, where the
// factors are well conditioned; tau and product are then conjugated back.
inline Closure placed_closure(Closure c, const VahlenMatrix& n) {
    c = finish_closure(c);
    const VahlenMatrix ni = n.inverse();
    for (auto& t : c.tau) t = ni * t * n;
    c.product = ni * c.product * n;
    return c;
}

inline Closure tau_matrices(const AugmentedHexagonH4& hin, bool strict = true) {
    AugmentedHexagonH4 h = canonical_parity(hin);
    const VahlenMatrix place = normalize_cross({std::get<OrientedFlag>(h.sides[5]), std::get<OrientedLine>(h.sides[0])}, strict).n;
    for (auto& s : h.sides) s = std::visit([&](const auto& x) -> Side { return apply(place, x); }, s);
    Closure c;
    for (int n = 0; n < 6; ++n) {
        const Side& prev = h.sides[idx(n - 1)];
        const Side& mid = h.sides[idx(n)];
        const Side& next = h.sides[idx(n + 1)];
        if (n % 2 == 0) {
            const auto& l = std::get<OrientedLine>(mid);
            c.tau[idx(n)] = normalize_cross({std::get<OrientedFlag>(next), l}, strict).n.inverse() *
                            normalize_cross({std::get<OrientedFlag>(prev), l}, strict).n;
        } else {
            const auto& f = std::get<OrientedFlag>(mid);
            c.tau[idx(n)] = normalize_cross({f, std::get<OrientedLine>(next)}, strict).n.inverse() *
                            normalize_cross({f, std::get<OrientedLine>(prev)}, strict).n;
        }
    }
    return placed_closure(c, place);
}

inline Closure tau_matrices(const HexagonH3& hin, bool strict = true) {
    const VahlenMatrix place = normalize_lines_h3(hin.sides[0], hin.sides[5], strict).n;
    HexagonH3 h;
    for (int n = 0; n < 6; ++n) h.sides[idx(n)] = apply(place, hin.sides[idx(n)]);
    Closure c;
    for (int n = 0; n < 6; ++n) {
        const auto& l = h.sides[idx(n)];
        c.tau[idx(n)] = normalize_lines_h3(l, h.sides[idx(n + 1)], strict).n.inverse() *
                        normalize_lines_h3(l, h.sides[idx(n - 1)], strict).n;
    }
    return placed_closure(c, place);
}

// eta_n = iota_{n-1} tau_n iota_{n-1}^{-1} with iota_n = (tau_n ... tau_1)^{-1}, conjugated by
// the isometry placing (S6, S1) at the standard position; each should be +-A_n.
inline std::array<VahlenMatrix, 6> normalized_etas(const Closure& c, const VahlenMatrix& n0) {
    std::array<VahlenMatrix, 6> eta;
    VahlenMatrix partial = VahlenMatrix::identity();  // tau_{n-1} ... tau_1
    for (int n = 0; n < 6; ++n) {
        VahlenMatrix iota = partial.inverse();
        eta[idx(n)] = n0 * iota * c.tau[idx(n)] * partial * n0.inverse();
        partial = c.tau[idx(n)] * partial;
    }
    return eta;
}

inline VahlenMatrix standard_placement(const AugmentedHexagonH4& hin) {
    AugmentedHexagonH4 h = canonical_parity(hin);
    return normalize_cross({std::get<OrientedFlag>(h.sides[5]), std::get<OrientedLine>(h.sides[0])}).n;
}

inline VahlenMatrix standard_placement(const HexagonH3& h) { return normalize_lines_h3(h.sides[0], h.sides[5]).n; }

// ---------------------------------------------------------------- formulas

inline double formula_residual(const Multivector& lhs, const Multivector& rhs) {
    return (lhs - rhs).max_abs() / (1.0 + std::max(lhs.max_abs(), rhs.max_abs()));
}

// Left side and the right side before the sign eps.
struct FormulaSides {
    std::string name;
    Multivector lhs, rhs;
};

struct VerificationReport {
    std::vector<std::pair<std::string, double>> residuals;
    int epsilon = 1;
    bool epsilon_tie = false;
    unsigned branch_mask = 0;
    double max_residual = 0.0;
    bool pass = false;

    double get(const std::string& name) const {
        for (const auto& [k, v] : residuals)
            if (k == name) return v;
        throw Error("VerificationReport: no residual named " + name);
    }
};

// Chooses eps from the `lead` formulas, evaluates every formula with it.
inline VerificationReport evaluate(const std::vector<FormulaSides>& f, std::size_t lead, double tol) {
    double best[2] = {0.0, 0.0};
    for (int s = 0; s < 2; ++s) {
        const double eps = s == 0 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < lead; ++i) best[s] = std::max(best[s], formula_residual(f[i].lhs, f[i].rhs * eps));
    }
    VerificationReport r;
    r.epsilon = best[0] <= best[1] ? 1 : -1;
    r.epsilon_tie = best[0] < tol && best[1] < tol;
    for (const auto& x : f) {
        double v = formula_residual(x.lhs, x.rhs * static_cast<double>(r.epsilon));
        r.residuals.emplace_back(x.name, v);
        r.max_residual = std::max(r.max_residual, v);
    }
    r.pass = r.max_residual < tol;
    return r;
}

// Four identities for an augmented hexagon in H^4, right sides starred.
inline std::vector<FormulaSides> dg_h4_sides(const std::array<Multivector, 6>& d) {
    std::array<Multivector, 6> c, s;
    for (int i = 0; i < 6; ++i) {
        c[idx(i)] = cosh(d[idx(i)]);
        s[idx(i)] = sinh(d[idx(i)]);
    }
    const auto &c1 = c[0], &c2 = c[1], &c3 = c[2], &c4 = c[3], &c5 = c[4], &c6 = c[5];
    const auto &s1 = s[0], &s2 = s[1], &s3 = s[2], &s4 = s[3], &s5 = s[4], &s6 = s[5];
    return {{"h4_1", s1 * c2 * s3 + c1 * c2 * c3, (s4 * c5 * s6 + c4 * c5 * c6).star()},
            {"h4_2", s1 * c2 * c3 + c1 * c2 * s3, (s4 * s5 * s6 - c4 * s5 * c6).star()},
            {"h4_3", s1 * s2 * s3 - c1 * s2 * c3, (s4 * c5 * c6 + c4 * c5 * s6).star()},
            {"h4_4", s1 * s2 * c3 - c1 * s2 * s3, (s4 * s5 * c6 - c4 * s5 * s6).star()}};
}

// Entrywise form of A1 A2 A3 = eps A6^{-1} A5^{-1} A4^{-1}.
inline std::vector<FormulaSides> entry_h4_sides(const std::array<Multivector, 6>& d) {
    std::array<Multivector, 6> e, eb, c, s;
    for (int i = 0; i < 6; ++i) {
        e[idx(i)] = exp(d[idx(i)]);
        eb[idx(i)] = exp(-d[idx(i)].star());
        c[idx(i)] = cosh(d[idx(i)]);
        s[idx(i)] = sinh(d[idx(i)]);
    }
    return {{"entry_11", e[0] * c[1] * e[2], (c[3] * eb[4] * c[5] + s[3] * e[4] * s[5]).star()},
            {"entry_12", -(e[0] * s[1] * eb[2]), (s[3] * eb[4] * c[5] + c[3] * e[4] * s[5]).star()},
            {"entry_21", -(eb[0] * s[1] * e[2]), (c[3] * eb[4] * s[5] + s[3] * e[4] * c[5]).star()},
            {"entry_22", eb[0] * c[1] * eb[2], (s[3] * eb[4] * s[5] + c[3] * e[4] * c[5]).star()}};
}

// log(exp a exp b exp c)
inline Multivector chain3(const Multivector& a, const Multivector& b, const Multivector& c) {
    return oplus(oplus(a, b).principal, c).principal;
}

// The same identities written with (+) and (-).
inline std::vector<FormulaSides> oplus_h4_sides(const std::array<Multivector, 6>& d) {
    auto st = [](const Multivector& x) { return -x.star(); };
    const auto &d1 = d[0], &d2 = d[1], &d3 = d[2], &d4 = d[3], &d5 = d[4], &d6 = d[5];
    return {{"oplus_1", cosh(chain3(d1, st(d2), d3)) + cosh(chain3(d1, d2, d3)),
             (cosh(chain3(d4, st(d5), d6)) + cosh(chain3(d4, d5, d6))).star()},
            {"oplus_2", sinh(chain3(d1, st(d2), d3)) + sinh(chain3(d1, d2, d3)),
             (sinh(chain3(d4, st(d5), st(d6))) - sinh(chain3(d4, d5, st(d6)))).star()},
            {"oplus_3", sinh(chain3(d1, st(d2), st(d3))) - sinh(chain3(d1, d2, st(d3))),
             (sinh(chain3(d4, st(d5), d6)) + sinh(chain3(d4, d5, d6))).star()},
            {"oplus_4", cosh(chain3(d1, d2, st(d3))) - cosh(chain3(d1, st(d2), st(d3))),
             (cosh(chain3(d4, d5, st(d6))) - cosh(chain3(d4, st(d5), st(d6)))).star()}};
}

inline double matrix_closure_residual(const std::array<Multivector, 6>& d, int eps) {
    return distance_linf(normal_form_product(d), eps_identity(eps));
}

inline VerificationReport verify_dg_h4(const std::array<Multivector, 6>& d, double tol = 1e-8) {
    std::vector<FormulaSides> f = dg_h4_sides(d);
    const std::size_t lead = f.size();
    for (auto& x : entry_h4_sides(d)) f.push_back(std::move(x));
    for (auto& x : oplus_h4_sides(d)) f.push_back(std::move(x));
    VerificationReport r = evaluate(f, lead, tol);
    double mc = matrix_closure_residual(d, r.epsilon);
    r.residuals.emplace_back("matrix_closure", mc);
    r.max_residual = std::max(r.max_residual, mc);
    r.pass = r.max_residual < tol;
    return r;
}

// Four identities for an oriented right-angled hexagon in H^3 (commutative case).
inline std::vector<FormulaSides> dg_h3_sides(const std::array<Multivector, 6>& d) {
    const auto &d1 = d[0], &d2 = d[1], &d3 = d[2], &d4 = d[3], &d5 = d[4], &d6 = d[5];
    return {{"h3_1", cosh(d1 + d3) * cosh(d2), cosh(d4 + d6) * cosh(d5)},
            {"h3_2", -(sinh(d1 + d3) * cosh(d2)), cosh(d4 - d6) * sinh(d5)},
            {"h3_3", -(cosh(d1 - d3) * sinh(d2)), sinh(d4 + d6) * cosh(d5)},
            {"h3_4", sinh(d1 - d3) * sinh(d2), sinh(d4 - d6) * sinh(d5)}};
}

// Cosine and sine laws in the complex side-lengths sigma_n = 2 delta_n.
inline std::vector<std::pair<std::string, double>> derive_laws_h3(const std::array<Multivector, 6>& d) {
    std::array<Multivector, 6> ch, sh;
    for (int i = 0; i < 6; ++i) {
        ch[idx(i)] = cosh(d[idx(i)] * 2.0);
        sh[idx(i)] = sinh(d[idx(i)] * 2.0);
    }
    std::vector<std::pair<std::string, double>> r;
    for (int n = 0; n < 6; ++n) {
        Multivector rhs = ch[idx(n + 2)] * ch[idx(n + 4)] + sh[idx(n + 2)] * sh[idx(n + 4)] * ch[idx(n + 3)];
        r.emplace_back("cosine_" + std::to_string(n + 1), formula_residual(ch[idx(n)], rhs));
    }
    // sinh s1 / sinh s4 = sinh s3 / sinh s6 = sinh s5 / sinh s2, cross-multiplied
    r.emplace_back("sine_13", formula_residual(sh[0] * sh[5], sh[2] * sh[3]));
    r.emplace_back("sine_35", formula_residual(sh[2] * sh[1], sh[4] * sh[5]));
    return r;
}

inline VerificationReport verify_dg_h3(const std::array<Multivector, 6>& d, double tol = 1e-9) {
    VerificationReport r = evaluate(dg_h3_sides(d), 4, tol);
    for (auto& x : derive_laws_h3(d)) {
        r.residuals.push_back(x);
        r.max_residual = std::max(r.max_residual, x.second);
    }
    double mc = matrix_closure_residual(d, r.epsilon);
    r.residuals.emplace_back("matrix_closure", mc);
    r.max_residual = std::max(r.max_residual, mc);
    r.pass = r.max_residual < tol;
    return r;
}

// Full pipeline on a geometric hexagon: orthogonality, half-lengths, identities, closure.
inline VerificationReport verify_hexagon(const AugmentedHexagonH4& h, double tol = 1e-8, unsigned mask = 0) {
    SideDefects def;
    auto hl = half_lengths(h, {false, tol}, &def);
    VerificationReport r = verify_dg_h4(choose_branches(hl, mask), tol);
    r.branch_mask = mask;
    for (int n = 0; n < 6; ++n) r.residuals.emplace_back("orthogonality_" + std::to_string(n + 1), def.orthogonality[idx(n)]);
    r.max_residual = std::max(r.max_residual, def.max());
    Closure c = tau_matrices(h, false);
    r.residuals.emplace_back("closure", c.residual);
    r.max_residual = std::max(r.max_residual, c.residual);
    r.pass = r.max_residual < tol;
    return r;
}

inline VerificationReport verify_hexagon(const HexagonH3& h, double tol = 1e-9, unsigned mask = 0) {
    SideDefects def;
    auto hl = half_lengths(h, {false, tol}, &def);
    VerificationReport r = verify_dg_h3(choose_branches(hl, mask), tol);
    r.branch_mask = mask;
    for (int n = 0; n < 6; ++n) r.residuals.emplace_back("orthogonality_" + std::to_string(n + 1), def.orthogonality[idx(n)]);
    r.max_residual = std::max(r.max_residual, def.max());
    Closure c = tau_matrices(h, false);
    r.residuals.emplace_back("closure", c.residual);
    r.max_residual = std::max(r.max_residual, c.residual);
    r.pass = r.max_residual < tol;
    return r;
}

}  // namespace hexagauss
