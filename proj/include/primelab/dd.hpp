#pragma once

// Double-double arithmetic (~106-bit mantissa).  Used wherever a fractional
// part must survive subtraction of a large integer part: {phi1(p)}, the
// window psi(x) = phi2(x+1) - phi2(x), and the m*(phi1 - tau*psi) phase term.

#include <cmath>
#include <cstdint>

namespace primelab {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

namespace detail {

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return dd(s, err);
}

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return dd(s, b - (s - a));
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return dd(p, std::fma(a, b, -p));
}

} // namespace detail

inline dd operator+(dd a, dd b) {
    dd s = detail::two_sum(a.hi, b.hi);
    return detail::quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline dd operator-(dd a) { return dd(-a.hi, -a.lo); }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = detail::two_prod(a.hi, b.hi);
    return detail::quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - dd(q1) * b;
    double q2 = r.hi / b.hi;
    r = r - dd(q2) * b;
    double q3 = r.hi / b.hi;
    dd q = detail::quick_two_sum(q1, q2);
    return detail::quick_two_sum(q.hi, q.lo + q3);
}

inline dd operator+(dd a, double b) { return a + dd(b); }
inline dd operator+(double a, dd b) { return dd(a) + b; }
inline dd operator-(dd a, double b) { return a - dd(b); }
inline dd operator-(double a, dd b) { return dd(a) - b; }
inline dd operator*(dd a, double b) { return a * dd(b); }
inline dd operator*(double a, dd b) { return dd(a) * b; }
inline dd operator/(dd a, double b) { return a / dd(b); }
inline dd operator/(double a, dd b) { return dd(a) / b; }

inline bool operator<(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(dd a, dd b) { return b < a; }
inline bool operator<=(dd a, dd b) { return !(b < a); }
inline bool operator>=(dd a, dd b) { return !(a < b); }
inline bool operator==(dd a, dd b) { return a.hi == b.hi && a.lo == b.lo; }

inline dd dd_abs(dd a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

inline dd dd_sqrt(dd a) {
    if (a.hi == 0.0) return dd(0.0);
    if (a.lo == 0.0) {
        // sqrt is correctly rounded, so exact squares are detected exactly.
        double y = std::sqrt(a.hi);
        if (y * y == a.hi && std::fma(y, y, -a.hi) == 0.0) return dd(y);
    }
    double x = 1.0 / std::sqrt(a.hi);
    double y = a.hi * x;
    // Karp's correction: y + (a - y^2) * x / 2
    dd r = (a - detail::two_prod(y, y)) * dd(x * 0.5);
    dd s = detail::quick_two_sum(y, r.value());
    // One Newton step in full precision pins the last bit (exact inputs such
    // as perfect squares come out with lo == 0).
    dd resid = a - s * s;
    return s + resid / (s * 2.0);
}

inline dd dd_floor(dd a) {
    double f = std::floor(a.hi);
    if (f == a.hi) {
        double g = std::floor(a.lo);
        return detail::quick_two_sum(f, g);
    }
    return dd(f);
}

// Fractional part in [0, 1).
inline dd dd_frac(dd a) {
    dd f = a - dd_floor(a);
    if (f.hi < 0.0) f = f + 1.0;
    if (f.hi >= 1.0) f = f - 1.0;
    return f;
}

dd dd_exp(dd a);
dd dd_log(dd a);
dd dd_pow(dd a, dd b);
inline dd dd_pow(dd a, double b) { return dd_pow(a, dd(b)); }

} // namespace primelab
