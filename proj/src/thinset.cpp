#include "primelab/thinset.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace primelab {

namespace {

constexpr double k_boundary_window = 9.094947017729282e-13;  // 2^-40
constexpr double k_deep_window = 8.077935669463161e-28;      // 2^-90

// {±phi1(p)} in double-double.
dd signed_frac_dd(const FunctionPair& pair, SetSign sign, std::int64_t p) {
    dd phi = inverse_phi_dd(pair.h1(), dd(static_cast<double>(p)));
    return dd_frac(sign == SetSign::minus ? -phi : phi);
}

double signed_frac_double(const FunctionPair& pair, SetSign sign, std::int64_t p) {
    double phi = inverse_phi(pair.h1(), static_cast<double>(p));
    double f = (sign == SetSign::minus ? -phi : phi);
    f -= std::floor(f);
    if (f >= 1.0) f -= 1.0;
    return f;
}

} // namespace

ThinSet::ThinSet(const SieveTables& tables, ThinSetSpec spec)
    : tables_(&tables), spec_(std::move(spec)) {}

bool ThinSet::is_member(std::int64_t p, MembershipDiagnostics* diag) const {
    if (p < 2 || p > tables_->limit())
        throw std::out_of_range("is_member: p outside sieve limit");
    if (!tables_->is_prime(p)) return false;
    double x = static_cast<double>(p);
    if (x < spec_.pair.x_psi()) return false; // psi > 1/2 region, window undefined

    if (spec_.pair.h2().y_min() > x) return false;

    if (spec_.policy == BoundaryPolicy::standard) {
        double frac = signed_frac_double(spec_.pair, spec_.sign, p);
        double psi = spec_.pair.psi_dd(x).value();
        return frac < psi;
    }

    // extended / exact-boundary: the comparison itself runs in double-double;
    // exact-boundary additionally tracks near-ties.
    dd frac = signed_frac_dd(spec_.pair, spec_.sign, p);
    dd psi = spec_.pair.psi_dd(x);
    if (spec_.policy == BoundaryPolicy::exact_boundary && diag) {
        dd g = frac - psi;
        if (g.hi == 0.0 && g.lo == 0.0) {
            ++diag->exact_ties;
        } else {
            double gap = std::abs(g.value());
            if (gap < k_boundary_window) {
                ++diag->boundary_cases;
                if (gap < k_deep_window) ++diag->deep_boundary_cases;
            }
        }
    }
    return frac < psi;
}

bool ThinSet::floor_characterization(std::int64_t p) const {
    if (p < 2 || p > tables_->limit())
        throw std::out_of_range("floor_characterization: p outside sieve limit");
    if (!tables_->is_prime(p)) return false;
    double x = static_cast<double>(p);
    if (x < spec_.pair.x_psi() || spec_.pair.h2().y_min() > x) return false;
    dd phi = inverse_phi_dd(spec_.pair.h1(), dd(x));
    if (spec_.sign == SetSign::minus) phi = -phi;
    dd psi = spec_.pair.psi_dd(x);
    dd diff = dd_floor(phi) - dd_floor(phi - psi);
    return diff.value() == 1.0;
}

std::vector<std::int64_t> ThinSet::enumerate(std::int64_t limit,
                                             MembershipDiagnostics* diag) const {
    if (limit > tables_->limit()) throw std::out_of_range("enumerate: limit above sieve limit");
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p <= limit; ++p)
        if (tables_->is_prime(p) && is_member(p, diag)) out.push_back(p);
    return out;
}

std::vector<std::int64_t> ThinSet::enumerate_dual(std::int64_t limit,
                                                  MembershipDiagnostics* diag) const {
    if (spec_.sign != SetSign::minus)
        throw std::invalid_argument("enumerate_dual: defined for the minus set only");
    const ModelFunction& h = spec_.pair.h1();
    if (h.c() != spec_.pair.h2().c() || h.A() != spec_.pair.h2().A())
        throw std::invalid_argument("enumerate_dual: requires h1 = h2");
    if (limit > tables_->limit()) throw std::out_of_range("enumerate_dual: limit above sieve limit");

    std::vector<std::int64_t> out;
    double x_start = std::max(h.x_min(), spec_.pair.x_psi() > h.y_min()
                                             ? inverse_phi(h, spec_.pair.x_psi())
                                             : h.x_min());
    std::int64_t n = static_cast<std::int64_t>(std::floor(x_start));
    if (n < 1) n = 1;
    for (;; ++n) {
        dd v = h.eval_dd(dd(static_cast<double>(n)));
        dd fl = dd_floor(v);
        if (diag) {
            dd down = v - fl;
            if (down.hi == 0.0 && down.lo == 0.0) {
                ++diag->exact_ties; // h(n) is an exact integer (n a perfect square)
            } else {
                double gap = std::min(std::abs(down.value()), std::abs((fl + 1.0 - v).value()));
                if (gap < k_boundary_window) ++diag->boundary_cases;
            }
        }
        std::int64_t m = static_cast<std::int64_t>(fl.value());
        if (m > limit) break;
        if (m >= 2 && static_cast<double>(m) >= spec_.pair.x_psi() && tables_->is_prime(m)) {
            if (out.empty() || out.back() != m) out.push_back(m);
        }
    }
    return out;
}

double ThinSet::window_integral(std::int64_t N) const {
    const FunctionPair& pair = spec_.pair;
    double lo = std::max(2.0, pair.h2().y_min());
    double hi = static_cast<double>(N);
    if (hi <= lo) return 0.0;

    auto f = [&](double x) { return pair.psi_dd(x).value() / std::log(x); };

    // Adaptive Simpson, relative tolerance 1e-10.
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double a, double b, double fa, double fm, double fb, double whole, int depth) -> double {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        double flm = f(lm), frm = f(rm);
        double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        double delta = left + right - whole;
        if (depth <= 0 || std::abs(delta) <= 15.0 * 1e-10 * std::abs(left + right))
            return left + right + delta / 15.0;
        return rec(a, m, fa, flm, fm, left, depth - 1) + rec(m, b, fm, frm, fb, right, depth - 1);
    };
    double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
    double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    return rec(lo, hi, fa, fm, fb, whole, 48);
}

CountResult ThinSet::count_vs_integral(std::int64_t limit) const {
    if (limit > tables_->limit())
        throw std::out_of_range("count_vs_integral: limit above sieve limit");
    CountResult r;
    MembershipDiagnostics diag;
    for (std::int64_t p = 2; p <= limit; ++p)
        if (tables_->is_prime(p) && is_member(p, &diag)) ++r.count;
    r.boundary_cases = diag.boundary_cases;
    r.exact_ties = diag.exact_ties;
    r.integral = window_integral(limit);
    if (r.integral < 1e-9) {
        r.ratio = std::numeric_limits<double>::quiet_NaN();
        r.degenerate = true;
    } else {
        r.ratio = static_cast<double>(r.count) / r.integral;
    }
    return r;
}

} // namespace primelab
