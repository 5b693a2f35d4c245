#include "primelab/model.hpp"

#include <cmath>

#include "primelab/jet.hpp"

namespace primelab {

ModelFunction::ModelFunction(double c, double A) : c_(c), A_(A) {
    if (!(c >= 1.0 && c < 2.0)) throw std::invalid_argument("ModelFunction: c must lie in [1, 2)");
    if (A < 0.0) throw std::invalid_argument("ModelFunction: A must be >= 0");
    if (c == 1.0 && A == 0.0)
        throw std::invalid_argument("ModelFunction: c = 1 requires A > 0 (slowly varying part must diverge)");
    // log-power factors vanish at x = 1; start the domain at e when present.
    x_min_ = A_ > 0.0 ? std::exp(1.0) : 1.0;
    y_min_ = eval(x_min_);
}

double ModelFunction::eval(double x) const {
    double lx = std::log(x);
    return std::pow(x, c_) * (A_ == 0.0 ? 1.0 : std::pow(lx, A_));
}

double ModelFunction::deriv(double x) const {
    double lx = std::log(x);
    if (A_ == 0.0) return c_ * std::pow(x, c_ - 1.0);
    return std::pow(x, c_ - 1.0) * std::pow(lx, A_ - 1.0) * (c_ * lx + A_);
}

namespace {

// x^(k/2) for integer k >= 0 with exact dd sqrt/multiply; keeps values like
// 4^(3/2) = 8 exact, which the boundary-tie diagnostics rely on.
dd half_integer_pow(dd x, int k) {
    dd r(1.0);
    for (int i = 0; i < k / 2; ++i) r = r * x;
    if (k & 1) r = r * dd_sqrt(x);
    return r;
}

} // namespace

dd ModelFunction::eval_dd(dd x) const {
    if (A_ == 0.0 && 2.0 * c_ == std::floor(2.0 * c_))
        return half_integer_pow(x, static_cast<int>(2.0 * c_));
    dd r = dd_pow(x, c_);
    if (A_ != 0.0) r = r * dd_pow(dd_log(x), A_);
    return r;
}

dd ModelFunction::deriv_dd(dd x) const {
    if (A_ == 0.0) {
        if (2.0 * c_ == std::floor(2.0 * c_))
            return half_integer_pow(x, static_cast<int>(2.0 * c_) - 2) * c_;
        return dd_pow(x, c_ - 1.0) * c_;
    }
    dd lx = dd_log(x);
    return dd_pow(x, c_ - 1.0) * dd_pow(lx, A_ - 1.0) * (lx * c_ + A_);
}

double ModelFunction::sigma(double x) const {
    if (c_ > 1.0) return 1.0;
    double v = A_ / std::log(x);
    return v < 1.0 ? v : 1.0;
}

double inverse_phi(const ModelFunction& f, double y) {
    if (y < f.y_min()) throw std::domain_error("inverse_phi: y below h(x_min)");
    if (f.A() == 0.0) {
        double x = std::pow(y, 1.0 / f.c());
        return x - (f.eval(x) - y) / f.deriv(x);
    }
    // Initial guess from the pure power part, then bracketed Newton.
    double lo = f.x_min();
    double hi = std::max(2.0 * lo, std::pow(y, 1.0 / f.c()) * 2.0);
    while (f.eval(hi) < y) hi *= 2.0;
    double x = std::pow(y, 1.0 / f.c());
    if (x < lo || x > hi || !std::isfinite(x)) x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double r = f.eval(x) - y;
        if (std::abs(r) <= 1e-14 * std::abs(y) + 1e-300) return x;
        if (r > 0.0)
            hi = x;
        else
            lo = x;
        double step = r / f.deriv(x);
        double nx = x - step;
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        x = nx;
    }
    throw std::runtime_error("inverse_phi: Newton failed to converge");
}

dd inverse_phi_dd(const ModelFunction& f, dd y) {
    dd x(inverse_phi(f, y.value()));
    int iters = f.A() == 0.0 ? 2 : 3;
    for (int it = 0; it < iters; ++it) {
        dd r = f.eval_dd(x) - y;
        x = x - r / f.deriv_dd(x);
    }
    return x;
}

double phi_derivative(const ModelFunction& f, int k, double x) {
    if (k < 0) throw std::invalid_argument("phi_derivative: k must be >= 0");
    double x0 = inverse_phi(f, x);
    if (k == 0) return x0;
    // Jet of h at x0, shifted to vanish at 0, then reverted.
    std::size_t order = static_cast<std::size_t>(k);
    Jet t = Jet::variable(order, x0);
    Jet h = jet_pow(t, f.c());
    if (f.A() != 0.0) h = h * jet_pow(jet_log(t), f.A());
    h[0] = 0.0;
    Jet inv = jet_revert(h);
    return inv.derivative(static_cast<std::size_t>(k));
}

FunctionPair::FunctionPair(ModelFunction h1, ModelFunction h2) : h1_(h1), h2_(h2), x_psi_(0.0) {
    // Find where psi drops to 1/2.  psi is decreasing on the domain of phi2.
    auto psi0 = [&](double x) {
        return inverse_phi(h2_, x + 1.0) - inverse_phi(h2_, x);
    };
    double lo = h2_.y_min();
    if (psi0(lo) <= 0.5) {
        x_psi_ = lo;
        return;
    }
    double hi = 2.0 * (lo + 1.0);
    int guard = 0;
    while (psi0(hi) > 0.5) {
        hi *= 2.0;
        if (++guard > 200) throw std::runtime_error("FunctionPair: psi never drops below 1/2");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (psi0(mid) > 0.5 ? lo : hi) = mid;
    }
    x_psi_ = hi;
}

double FunctionPair::psi(double x, int k) const {
    if (k == 0) {
        if (x < x_psi_ * (1.0 - 1e-12))
            throw std::domain_error("psi: x below x_psi = " + std::to_string(x_psi_) +
                                    " where psi <= 1/2 starts to hold");
        return psi_dd(x).value();
    }
    return phi_derivative(h2_, k, x + 1.0) - phi_derivative(h2_, k, x);
}

dd FunctionPair::psi_dd(double x) const {
    return inverse_phi_dd(h2_, dd(x) + 1.0) - inverse_phi_dd(h2_, dd(x));
}

} // namespace primelab
