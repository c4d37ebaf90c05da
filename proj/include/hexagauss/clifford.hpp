#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hexagauss {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxDim = 5;

// Global comparison tolerance used where a caller does not pass one.
inline std::atomic<double>& default_tolerance() {
    static std::atomic<double> tol{1e-12};
    return tol;
}

namespace detail {

// Sign of e_A e_B in Cl(0,n), blades given as bitmasks.
constexpr double blade_sign(unsigned a, unsigned b) {
    int swaps = 0;
    for (unsigned t = a >> 1; t != 0; t >>= 1) swaps += std::popcount(t & b);
    swaps += std::popcount(a & b);
    return (swaps & 1) ? -1.0 : 1.0;
}

}  // namespace detail

class Multivector {
public:
    Multivector() : Multivector(2) {}

    explicit Multivector(int n) : n_(n) {
        if (n < 0 || n > kMaxDim) throw Error("Multivector: dimension out of range");
        c_.fill(0.0);
    }

    static Multivector scalar(double s, int n = 2) {
        Multivector m(n);
        m.c_[0] = s;
        return m;
    }

    static Multivector blade(unsigned mask, int n, double coef = 1.0) {
        Multivector m(n);
        if (mask >= m.size()) throw Error("Multivector: blade outside algebra");
        m.c_[mask] = coef;
        return m;
    }

    // e_i, 1-based.
    static Multivector e(int i, int n = 2) {
        if (i < 1 || i > n) throw Error("Multivector: basis index out of range");
        return blade(1u << (i - 1), n);
    }

    static Multivector a2(double x0, double x1, double x2, double x12) {
        Multivector m(2);
        m.c_[0] = x0;
        m.c_[1] = x1;
        m.c_[2] = x2;
        m.c_[3] = x12;
        return m;
    }

    static Multivector paravector(double x0, double x1, double x2, int n = 2) {
        Multivector m(n);
        m.c_[0] = x0;
        if (n >= 1) m.c_[1] = x1;
        if (n >= 2) m.c_[2] = x2;
        return m;
    }

    int dim() const { return n_; }
    std::size_t size() const { return std::size_t{1} << n_; }

    double operator[](unsigned mask) const { return c_[mask]; }
    double& operator[](unsigned mask) { return c_[mask]; }

    double scalar_part() const { return c_[0]; }

    static int grade_of(unsigned mask) { return std::popcount(mask); }

    Multivector grade(int p) const {
        Multivector r(n_);
        for (unsigned m = 0; m < size(); ++m)
            if (grade_of(m) == p) r.c_[m] = c_[m];
        return r;
    }

    // Para-vector part: grades 0 and 1.
    Multivector paravector_part() const {
        Multivector r(n_);
        for (unsigned m = 0; m < size(); ++m)
            if (grade_of(m) <= 1) r.c_[m] = c_[m];
        return r;
    }

    double norm2() const {
        double s = 0.0;
        for (unsigned m = 0; m < size(); ++m) s += c_[m] * c_[m];
        return s;
    }
    double norm() const { return std::sqrt(norm2()); }

    double max_abs() const {
        double s = 0.0;
        for (unsigned m = 0; m < size(); ++m) s = std::max(s, std::abs(c_[m]));
        return s;
    }

    bool is_zero() const { return max_abs() == 0.0; }

    // a' : (-1)^p on grade p
    Multivector prime() const { return involve([](int p) { return (p & 1) ? -1.0 : 1.0; }); }
    // a* : reversion, (-1)^{p(p-1)/2}
    Multivector star() const { return involve([](int p) { return ((p * (p - 1) / 2) & 1) ? -1.0 : 1.0; }); }
    // conjugation, (-1)^{p(p+1)/2}
    Multivector bar() const { return involve([](int p) { return ((p * (p + 1) / 2) & 1) ? -1.0 : 1.0; }); }

    // Largest coefficient outside grades 0 and 1.
    double non_paravector_size() const {
        double s = 0.0;
        for (unsigned m = 0; m < size(); ++m)
            if (grade_of(m) > 1) s = std::max(s, std::abs(c_[m]));
        return s;
    }

    bool is_paravector(double tol = default_tolerance()) const {
        return non_paravector_size() <= tol * std::max(1.0, max_abs());
    }

    bool is_scalar(double tol = default_tolerance()) const {
        double s = 0.0;
        for (unsigned m = 1; m < size(); ++m) s = std::max(s, std::abs(c_[m]));
        return s <= tol * std::max(1.0, std::abs(c_[0]));
    }

    // Same coefficients in A_m, m >= n.
    Multivector embed(int m) const {
        if (m < n_) throw Error("Multivector::embed: target dimension smaller than source");
        Multivector r(m);
        for (unsigned k = 0; k < size(); ++k) r.c_[k] = c_[k];
        return r;
    }

    // Drop to A_m; coefficients on blades involving e_{m+1..n} must vanish.
    Multivector restrict_to(int m, double tol = default_tolerance()) const {
        if (m > n_) return embed(m);
        Multivector r(m);
        double lost = 0.0;
        for (unsigned k = 0; k < size(); ++k) {
            if (k < r.size()) r.c_[k] = c_[k];
            else lost = std::max(lost, std::abs(c_[k]));
        }
        if (lost > tol * std::max(1.0, max_abs())) throw Error("Multivector::restrict_to: element not in subalgebra");
        return r;
    }

    Multivector operator-() const {
        Multivector r(n_);
        for (unsigned m = 0; m < size(); ++m) r.c_[m] = -c_[m];
        return r;
    }

    Multivector& operator+=(const Multivector& o) {
        check_dim(o);
        for (unsigned m = 0; m < size(); ++m) c_[m] += o.c_[m];
        return *this;
    }
    Multivector& operator-=(const Multivector& o) {
        check_dim(o);
        for (unsigned m = 0; m < size(); ++m) c_[m] -= o.c_[m];
        return *this;
    }
    Multivector& operator*=(double s) {
        for (unsigned m = 0; m < size(); ++m) c_[m] *= s;
        return *this;
    }
    Multivector& operator/=(double s) {
        for (unsigned m = 0; m < size(); ++m) c_[m] /= s;
        return *this;
    }

    friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
    friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
    friend Multivector operator*(Multivector a, double s) { return a *= s; }
    friend Multivector operator*(double s, Multivector a) { return a *= s; }
    friend Multivector operator/(Multivector a, double s) { return a /= s; }

    friend Multivector operator+(Multivector a, double s) {
        a.c_[0] += s;
        return a;
    }
    friend Multivector operator+(double s, Multivector a) { return a + s; }
    friend Multivector operator-(Multivector a, double s) {
        a.c_[0] -= s;
        return a;
    }
    friend Multivector operator-(double s, const Multivector& a) { return (-a) + s; }

    friend Multivector operator*(const Multivector& a, const Multivector& b) {
        a.check_dim(b);
        Multivector r(a.n_);
        const unsigned sz = static_cast<unsigned>(a.size());
        for (unsigned i = 0; i < sz; ++i) {
            if (a.c_[i] == 0.0) continue;
            for (unsigned j = 0; j < sz; ++j) {
                if (b.c_[j] == 0.0) continue;
                r.c_[i ^ j] += detail::blade_sign(i, j) * a.c_[i] * b.c_[j];
            }
        }
        return r;
    }

    friend bool operator==(const Multivector& a, const Multivector& b) {
        return a.n_ == b.n_ && a.c_ == b.c_;
    }

private:
    template <class F>
    Multivector involve(F sign) const {
        Multivector r(n_);
        for (unsigned m = 0; m < size(); ++m) r.c_[m] = sign(grade_of(m)) * c_[m];
        return r;
    }

    void check_dim(const Multivector& o) const {
        if (o.n_ != n_) throw Error("Multivector: dimension mismatch");
    }

    int n_ = 2;
    std::array<double, std::size_t{1} << kMaxDim> c_{};
};

inline Multivector prime(const Multivector& a) { return a.prime(); }
inline Multivector star(const Multivector& a) { return a.star(); }
inline Multivector bar(const Multivector& a) { return a.bar(); }
inline double norm(const Multivector& a) { return a.norm(); }

inline bool approx_equal(const Multivector& a, const Multivector& b, double tol = default_tolerance()) {
    if (a.dim() != b.dim()) return false;
    return (a - b).max_abs() <= tol * std::max({1.0, a.max_abs(), b.max_abs()});
}

namespace detail {

// Solve a y = 1 through the left-multiplication matrix of a.
inline bool solve_inverse(const Multivector& a, Multivector& out) {
    const int n = a.dim();
    const int N = 1 << n;
    std::vector<double> M(static_cast<std::size_t>(N * N), 0.0);
    std::vector<double> rhs(static_cast<std::size_t>(N), 0.0);
    rhs[0] = 1.0;
    double scale = 0.0;
    for (int j = 0; j < N; ++j) {
        for (int i = 0; i < N; ++i) {
            if (a[static_cast<unsigned>(i)] == 0.0) continue;
            unsigned row = static_cast<unsigned>(i ^ j);
            M[row * N + j] += blade_sign(static_cast<unsigned>(i), static_cast<unsigned>(j)) * a[static_cast<unsigned>(i)];
        }
    }
    for (double v : M) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return false;
    for (int k = 0; k < N; ++k) {
        int piv = k;
        for (int r = k + 1; r < N; ++r)
            if (std::abs(M[r * N + k]) > std::abs(M[piv * N + k])) piv = r;
        if (std::abs(M[piv * N + k]) <= 1e-12 * scale) return false;
        if (piv != k) {
            for (int c = 0; c < N; ++c) std::swap(M[k * N + c], M[piv * N + c]);
            std::swap(rhs[k], rhs[piv]);
        }
        for (int r = k + 1; r < N; ++r) {
            double f = M[r * N + k] / M[k * N + k];
            if (f == 0.0) continue;
            for (int c = k; c < N; ++c) M[r * N + c] -= f * M[k * N + c];
            rhs[r] -= f * rhs[k];
        }
    }
    Multivector y(n);
    for (int k = N - 1; k >= 0; --k) {
        double s = rhs[k];
        for (int c = k + 1; c < N; ++c) s -= M[k * N + c] * y[static_cast<unsigned>(c)];
        y[static_cast<unsigned>(k)] = s / M[k * N + k];
    }
    out = y;
    return true;
}

inline double inverse_residual(const Multivector& a, const Multivector& inv) {
    Multivector one = Multivector::scalar(1.0, a.dim());
    return std::max((a * inv - one).norm(), (inv * a - one).norm());
}

}  // namespace detail

// Two-sided inverse. Elements of the Clifford group use the conjugate formula;
// anything else falls back to a linear solve.
inline Multivector inverse(const Multivector& a) {
    const double n2 = a.norm2();
    if (n2 == 0.0) throw Error("inverse: zero element");
    Multivector cand = a.bar() / n2;
    const double bound = 1e-9 * (1.0 + n2);
    if (detail::inverse_residual(a, cand) < bound) return cand;
    Multivector y(a.dim());
    if (!detail::solve_inverse(a, y)) throw Error("inverse: element is not invertible");
    if (detail::inverse_residual(a, y) > 1e-9 * (1.0 + n2) * std::max(1.0, y.norm()))
        throw Error("inverse: element is not invertible");
    return y;
}

inline bool is_invertible(const Multivector& a) {
    try {
        (void)inverse(a);
        return true;
    } catch (const Error&) {
        return false;
    }
}

// a x (a')^{-1} stays a para-vector for every para-vector x.
inline bool is_clifford_group(const Multivector& a, double tol = 1e-10) {
    if (a.norm2() == 0.0) return false;
    Multivector ip;
    try {
        ip = inverse(a.prime());
    } catch (const Error&) {
        return false;
    }
    const double scale = a.norm() * ip.norm();
    for (int i = 0; i <= a.dim(); ++i) {
        Multivector x = (i == 0) ? Multivector::scalar(1.0, a.dim()) : Multivector::e(i, a.dim());
        Multivector y = a * x * ip;
        if (y.non_paravector_size() > tol * scale) return false;
    }
    return true;
}

// rho(a) x = a x (a')^{-1}
inline Multivector rho(const Multivector& a, const Multivector& x) {
    if (!x.is_paravector(1e-10)) throw Error("rho: argument is not a para-vector");
    if (!is_clifford_group(a)) throw Error("rho: element is not in the Clifford group");
    return (a * x * inverse(a.prime())).paravector_part();
}

// Text form: "a0 + a1*e1 + a2*e2 - a12*e12", shortest round-trip doubles.
inline std::string blade_name(unsigned mask) {
    if (mask == 0) return "1";
    std::string s = "e";
    for (int i = 0; i < kMaxDim; ++i)
        if (mask & (1u << i)) s += static_cast<char>('1' + i);
    return s;
}

inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string to_string(const Multivector& m) {
    std::string out;
    // blades in grade order, then lexicographic by index list
    std::vector<unsigned> order;
    for (unsigned k = 0; k < m.size(); ++k) order.push_back(k);
    std::stable_sort(order.begin(), order.end(), [](unsigned x, unsigned y) {
        int gx = std::popcount(x), gy = std::popcount(y);
        if (gx != gy) return gx < gy;
        return blade_name(x) < blade_name(y);
    });
    for (unsigned k : order) {
        double v = m[k];
        if (v == 0.0) continue;
        bool neg = std::signbit(v);
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        out += format_double(std::abs(v));
        if (k != 0) out += "*" + blade_name(k);
    }
    return out.empty() ? "0" : out;
}

// Inverse of to_string. n < 0 picks the smallest algebra (at least A_2)
// containing every blade mentioned.
inline Multivector parse_multivector(std::string_view text, int n = -1) {
    struct Term {
        double coef;
        std::vector<int> idx;
    };
    std::vector<Term> terms;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
    };
    auto fail = [&](const char* what) -> Error {
        return Error(std::string("parse_multivector: ") + what + " at offset " + std::to_string(i));
    };
    auto read_blade = [&](std::vector<int>& idx) {
        if (i >= text.size() || text[i] != 'e') throw fail("expected blade");
        ++i;
        std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            int d = text[i] - '0';
            if (d < 1 || d > kMaxDim) throw fail("blade index out of range");
            idx.push_back(d);
            ++i;
        }
        if (i == start) throw fail("empty blade");
    };
    int maxidx = 0;
    bool first = true;
    skip();
    if (i >= text.size()) throw fail("empty input");
    while (true) {
        skip();
        if (i >= text.size()) break;
        double sign = 1.0;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1.0 : 1.0;
            ++i;
            skip();
        } else if (!first) {
            throw fail("expected '+' or '-'");
        }
        first = false;
        Term t{sign, {}};
        if (i < text.size() && text[i] == 'e') {
            read_blade(t.idx);
        } else {
            double v = 0.0;
            auto res = std::from_chars(text.data() + i, text.data() + text.size(), v);
            if (res.ec != std::errc()) throw fail("expected number");
            i = static_cast<std::size_t>(res.ptr - text.data());
            if (!std::isfinite(v)) throw fail("non-finite coefficient");
            t.coef *= v;
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip();
                read_blade(t.idx);
            }
        }
        for (int d : t.idx) maxidx = std::max(maxidx, d);
        terms.push_back(std::move(t));
    }
    if (n < 0) n = std::max(2, maxidx);
    if (maxidx > n) throw Error("parse_multivector: blade index exceeds algebra dimension");
    Multivector r(n);
    for (const auto& t : terms) {
        Multivector b = Multivector::scalar(t.coef, n);
        for (int d : t.idx) b = b * Multivector::e(d, n);
        r += b;
    }
    return r;
}

}  // namespace hexagauss
