#pragma once

// Truncated Taylor series ("jets") over double, used to obtain exact
// derivatives of h(x) = x^c log^A x and, through series reversion, of its
// inverse.  Coefficient i stores f^{(i)}(x0)/i!.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace primelab {

class Jet {
public:
    explicit Jet(std::size_t order) : c_(order + 1, 0.0) {}
    Jet(std::size_t order, double value) : c_(order + 1, 0.0) { c_[0] = value; }

    std::size_t order() const { return c_.size() - 1; }
    double& operator[](std::size_t i) { return c_[i]; }
    double operator[](std::size_t i) const { return c_[i]; }

    static Jet variable(std::size_t order, double x0) {
        Jet j(order, x0);
        if (order >= 1) j[1] = 1.0;
        return j;
    }

    Jet operator+(const Jet& o) const {
        Jet r(order());
        for (std::size_t i = 0; i <= order(); ++i) r[i] = c_[i] + o[i];
        return r;
    }
    Jet operator-(const Jet& o) const {
        Jet r(order());
        for (std::size_t i = 0; i <= order(); ++i) r[i] = c_[i] - o[i];
        return r;
    }
    Jet operator*(const Jet& o) const {
        Jet r(order());
        for (std::size_t i = 0; i <= order(); ++i)
            for (std::size_t j = 0; i + j <= order(); ++j) r[i + j] += c_[i] * o[j];
        return r;
    }
    Jet operator*(double s) const {
        Jet r(order());
        for (std::size_t i = 0; i <= order(); ++i) r[i] = c_[i] * s;
        return r;
    }
    Jet operator/(const Jet& o) const {
        if (o[0] == 0.0) throw std::domain_error("jet division by series with zero constant term");
        Jet r(order());
        for (std::size_t i = 0; i <= order(); ++i) {
            double acc = c_[i];
            for (std::size_t j = 1; j <= i; ++j) acc -= o[j] * r[i - j];
            r[i] = acc / o[0];
        }
        return r;
    }

    // k-th derivative at the expansion point.
    double derivative(std::size_t k) const {
        double f = 1.0;
        for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
        return c_[k] * f;
    }

private:
    std::vector<double> c_;
};

inline Jet jet_log(const Jet& a) {
    if (a[0] <= 0.0) throw std::domain_error("jet_log: non-positive constant term");
    // log(a) via integration of a'/a.
    Jet da(a.order());
    for (std::size_t i = 1; i <= a.order(); ++i) da[i - 1] = a[i] * static_cast<double>(i);
    Jet q = da / a;
    Jet r(a.order());
    r[0] = std::log(a[0]);
    for (std::size_t i = 1; i <= a.order(); ++i) r[i] = q[i - 1] / static_cast<double>(i);
    return r;
}

inline Jet jet_exp(const Jet& a) {
    // r' = a' r, r(0) = exp(a0).
    Jet r(a.order());
    r[0] = std::exp(a[0]);
    for (std::size_t i = 1; i <= a.order(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= i; ++j) acc += static_cast<double>(j) * a[j] * r[i - j];
        r[i] = acc / static_cast<double>(i);
    }
    return r;
}

inline Jet jet_pow(const Jet& a, double e) {
    if (e == 0.0) return Jet(a.order(), 1.0);
    return jet_exp(jet_log(a) * e);
}

// Compositional inverse: given y = sum_{i>=1} a_i t^i with a_1 != 0, returns
// t = sum_{i>=1} b_i y^i to the same order (constant terms dropped).
inline Jet jet_revert(const Jet& a) {
    if (a[1] == 0.0) throw std::domain_error("jet_revert: vanishing linear term");
    std::size_t n = a.order();
    Jet b(n);
    b[1] = 1.0 / a[1];
    // Fixed point iteration t = (y - sum_{i>=2} a_i t^i) / a_1; order k is
    // exact after k-1 rounds.
    for (std::size_t round = 2; round <= n; ++round) {
        // compute sum_{i>=2} a_i b(y)^i truncated
        Jet acc(n);
        Jet power = b * b;
        for (std::size_t i = 2; i <= n; ++i) {
            if (a[i] != 0.0) acc = acc + power * a[i];
            if (i < n) power = power * b;
        }
        Jet next(n);
        next[1] = 1.0 / a[1];
        for (std::size_t i = 2; i <= n; ++i) next[i] = -acc[i] / a[1];
        b = next;
    }
    return b;
}

} // namespace primelab
