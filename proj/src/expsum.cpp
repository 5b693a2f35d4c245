#include "primelab/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "primelab/exponents.hpp"
#include "primelab/kahan.hpp"
#include "primelab/thinset.hpp"

namespace primelab {

namespace {

constexpr double k_two_pi = 2.0 * std::numbers::pi;

inline std::complex<double> unit_phase(double frac) {
    double a = k_two_pi * frac;
    return {std::cos(a), std::sin(a)};
}

// {m*(phi1(n) - tau*psi(n))} in [0,1), double-double internally.
double analytic_frac(const PhaseSpec& spec, std::int64_t n) {
    if (spec.m == 0) return 0.0;
    dd x(static_cast<double>(n));
    dd v = inverse_phi_dd(spec.pair.h1(), x);
    if (spec.tau != 0) v = v - spec.pair.psi_dd(static_cast<double>(n));
    return dd_frac(v * static_cast<double>(spec.m)).value();
}

double fold_frac(double a, double b) {
    double s = a + b;
    if (s >= 1.0) s -= 1.0;
    return s;
}

} // namespace

IntPolynomial::IntPolynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty() || coeffs_.back() == 0)
        throw std::invalid_argument("IntPolynomial: degree >= 1 with nonzero leading coefficient");
}

std::int64_t IntPolynomial::eval(std::int64_t n) const {
    __int128 acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * n + *it;
        if (acc > __int128(1) << 100 || acc < -(__int128(1) << 100))
            throw std::overflow_error("IntPolynomial::eval: intermediate overflow");
    }
    acc *= n;
    if (acc > std::numeric_limits<std::int64_t>::max() || acc < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("IntPolynomial::eval: result does not fit in 64 bits");
    return static_cast<std::int64_t>(acc);
}

std::int64_t IntPolynomial::eval_mod(std::int64_t n, std::int64_t q) const {
    std::int64_t nr = n % q;
    if (nr < 0) nr += q;
    __int128 acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        std::int64_t c = *it % q;
        if (c < 0) c += q;
        acc = (acc * nr + c) % q;
    }
    acc = acc * nr % q;
    return static_cast<std::int64_t>(acc);
}

IntPolynomial IntPolynomial::parse(const std::string& text) {
    std::vector<std::int64_t> cs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) cs.push_back(std::stoll(item));
    return IntPolynomial(std::move(cs));
}

Rational Rational::make(std::int64_t a, std::int64_t q) {
    if (q < 1 || q > (std::int64_t(1) << 31)) throw std::invalid_argument("Rational: q out of range");
    a %= q;
    if (a < 0) a += q;
    std::int64_t g = std::gcd(a, q);
    if (g > 1) {
        a /= g;
        q /= g;
    }
    return Rational{a, q};
}

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (std::stoll(text) != 0) throw std::invalid_argument("Rational::parse: expected A/Q or 0");
        return Rational{0, 1};
    }
    return make(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
}

PhaseSpec::PhaseSpec(Rational xi_, std::int64_t m_, int tau_, IntPolynomial poly_, FunctionPair pair_)
    : xi(xi_), m(m_), tau(tau_), poly(std::move(poly_)), pair(std::move(pair_)) {
    if (tau != 0 && tau != 1) throw std::invalid_argument("PhaseSpec: tau must be 0 or 1");
}

double phase_mod1(const PhaseSpec& spec, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("phase_mod1: n must be >= 1");
    double rational = 0.0;
    if (spec.xi.a != 0) {
        std::int64_t r = spec.poly.eval_mod(n, spec.xi.q);
        std::int64_t num = static_cast<std::int64_t>(
            static_cast<__int128>(spec.xi.a) * r % spec.xi.q);
        rational = static_cast<double>(num) / static_cast<double>(spec.xi.q);
    }
    return fold_frac(rational, analytic_frac(spec, n));
}

ProgressionSum direct_progression_sum(const PhaseSpec& spec, std::int64_t j, std::int64_t K,
                                      double eps) {
    if (j < 1) throw std::invalid_argument("direct_progression_sum: j must be >= 1");
    ProgressionSum out;
    KahanComplex acc;
    for (std::int64_t k = 1; k <= K; ++k) acc.add(unit_phase(phase_mod1(spec, j * k)));
    out.sum.value = acc.value();
    out.sum.terms = K;

    if (spec.m != 0 && K >= 1) {
        int d = spec.poly.degree();
        double jk = static_cast<double>(j) * static_cast<double>(K);
        double phis = inverse_phi(spec.pair.h1(), jk) * spec.pair.sigma1(jk);
        double am = std::abs(static_cast<double>(spec.m));
        double pw = std::ldexp(1.0, d);
        out.bounds.first =
            std::pow(am, 1.0 / (2.0 * (pw - 1.0))) * std::pow(jk, 1.0 + eps) * std::pow(phis, -1.0 / pw);
        if (d >= 2) {
            double dd1 = d * (d + 1.0);
            out.bounds.second = std::pow(am, 1.0 / dd1) * std::pow(jk, 1.0 + eps) *
                                std::pow(phis, -2.0 / (dd1 * (d + 1.0)));
        }
    } else if (spec.m == 0) {
        throw std::invalid_argument("direct_progression_sum: bounds require m != 0");
    }
    return out;
}

SumResult mangoldt_sum_direct(const PhaseSpec& spec, const SieveTables& tables, std::int64_t X,
                              std::int64_t Xp) {
    if (!(1 <= X && X < Xp && Xp <= 2 * X)) throw std::invalid_argument("mangoldt_sum_direct: need X < X' <= 2X");
    if (Xp > tables.limit()) throw std::out_of_range("mangoldt_sum_direct: range above sieve limit");
    SumResult r;
    KahanComplex acc;
    for (std::int64_t n = X + 1; n <= Xp; ++n) {
        if (!tables.is_prime_power(n)) continue;
        double lam = tables.mangoldt(n);
        std::complex<double> z = unit_phase(phase_mod1(spec, n));
        acc.add(lam * z.real(), lam * z.imag());
        ++r.terms;
    }
    r.value = acc.value();
    return r;
}

VaughanDecomposition vaughan_decompose(const PhaseSpec& spec, const SieveTables& tables,
                                       std::int64_t X, std::int64_t Xp, std::int64_t u) {
    if (!(1 <= X && X < Xp && Xp <= 2 * X)) throw std::invalid_argument("vaughan_decompose: need X < X' <= 2X");
    if (Xp > tables.limit()) throw std::out_of_range("vaughan_decompose: range above sieve limit");
    double ulimit = std::cbrt(static_cast<double>(X)) + 1e-9;
    if (u < 1 || static_cast<double>(u) > ulimit)
        throw std::invalid_argument("vaughan_decompose: need 1 <= u <= X^(1/3)");

    VaughanDecomposition out;

    // The analytic phase part only ever gets evaluated at n in (X, X'];
    // precompute it once.
    std::vector<double> afrac(static_cast<std::size_t>(Xp - X), 0.0);
    if (spec.m != 0)
        for (std::int64_t n = X + 1; n <= Xp; ++n)
            afrac[static_cast<std::size_t>(n - X - 1)] = analytic_frac(spec, n);

    auto phase_at = [&](std::int64_t n) {
        double rational = 0.0;
        if (spec.xi.a != 0) {
            std::int64_t r = spec.poly.eval_mod(n, spec.xi.q);
            std::int64_t num = static_cast<std::int64_t>(
                static_cast<__int128>(spec.xi.a) * r % spec.xi.q);
            rational = static_cast<double>(num) / static_cast<double>(spec.xi.q);
        }
        return unit_phase(fold_frac(rational, afrac[static_cast<std::size_t>(n - X - 1)]));
    };

    auto coeffs = vaughan_coefficients(tables, u, 1, std::max<std::int64_t>(u * u, 1));

    // Sigma1 = sum_{j <= u} mu(j) sum_{X/j < k <= X'/j} e(F(jk)) log(k)
    {
        KahanComplex acc;
        std::int64_t terms = 0;
        for (std::int64_t j = 1; j <= u; ++j) {
            int mu = tables.mobius(j);
            if (mu == 0) continue;
            for (std::int64_t k = X / j + 1; k * j <= Xp; ++k) {
                double w = mu * std::log(static_cast<double>(k));
                std::complex<double> z = phase_at(j * k);
                acc.add(w * z.real(), w * z.imag());
                ++terms;
            }
        }
        out.sigma1.value = acc.value();
        out.sigma1.terms = terms;
    }

    // Sigma21 = sum_{j <= u} b_j (...), Sigma22 = sum_{u < j <= u^2} b_j (...)
    auto b_sum = [&](std::int64_t jlo, std::int64_t jhi, SumResult& res) {
        KahanComplex acc;
        std::int64_t terms = 0;
        for (std::int64_t j = jlo; j <= jhi; ++j) {
            const LogCombination& bj = coeffs.b_at(j);
            if (bj.empty()) continue;
            double w = bj.value();
            if (w == 0.0) continue;
            for (std::int64_t k = X / j + 1; k * j <= Xp; ++k) {
                std::complex<double> z = phase_at(j * k);
                acc.add(w * z.real(), w * z.imag());
                ++terms;
            }
        }
        res.value = acc.value();
        res.terms = terms;
    };
    b_sum(1, u, out.sigma21);
    b_sum(u + 1, u * u, out.sigma22);

    // Sigma3 = sum_{u < j <= X'/u} a_j sum_{k > u, X < jk <= X'} e(F(jk)) Lambda(k)
    {
        auto acoeffs = u + 1 <= Xp / u ? vaughan_coefficients(tables, u, u + 1, Xp / u)
                                       : VaughanCoefficients{};
        KahanComplex acc;
        std::int64_t terms = 0;
        for (std::int64_t j = u + 1; j <= Xp / u; ++j) {
            std::int64_t aj = acoeffs.a_at(j);
            if (aj == 0) continue;
            for (std::int64_t k = std::max(X / j, u) + 1; k * j <= Xp; ++k) {
                if (!tables.is_prime_power(k)) continue;
                double w = static_cast<double>(aj) * tables.mangoldt(k);
                std::complex<double> z = phase_at(j * k);
                acc.add(w * z.real(), w * z.imag());
                ++terms;
            }
        }
        out.sigma3.value = acc.value();
        out.sigma3.terms = terms;
    }

    out.recombined.value =
        out.sigma1.value - out.sigma21.value - out.sigma22.value + out.sigma3.value;
    out.recombined.terms =
        out.sigma1.terms + out.sigma21.terms + out.sigma22.terms + out.sigma3.terms;

    out.direct = mangoldt_sum_direct(spec, tables, X, Xp);
    out.residual = std::abs(out.recombined.value - out.direct.value);

    KahanSum theta_mass;
    for (std::int64_t n = X + 1; n <= Xp; ++n)
        if (tables.is_prime_power(n)) theta_mass.add(tables.mangoldt(n));
    out.theta_mass = theta_mass.value();

    out.u_selected_bound =
        vaughan_u_selection(spec.poly.degree(), spec.m == 0 ? 1 : spec.m, static_cast<double>(X), spec.pair);
    return out;
}

VdcBound vdc_bound(int k, double N, double eta, VdcVariant variant, double eps) {
    if (eta <= 0.0 || N < 1.0) throw std::invalid_argument("vdc_bound: need eta > 0, N >= 1");
    VdcBound r;
    double t1, t2, t3, scale;
    if (variant == VdcVariant::classical) {
        if (k < 2) throw std::invalid_argument("vdc_bound: classical variant needs k >= 2");
        double pw = std::ldexp(1.0, k); // 2^k
        t1 = std::pow(eta, 1.0 / (pw - 2.0));
        t2 = std::pow(N, -2.0 / pw);
        t3 = std::pow(std::pow(N, static_cast<double>(k)) * eta, -2.0 / pw);
        scale = N;
    } else {
        if (k < 3) throw std::invalid_argument("vdc_bound: heathbrown variant needs k >= 3");
        double kk1 = static_cast<double>(k) * (k - 1.0);
        t1 = std::pow(eta, 1.0 / kk1);
        t2 = std::pow(N, -1.0 / kk1);
        t3 = std::pow(std::pow(N, static_cast<double>(k)) * eta, -2.0 / (k * kk1));
        scale = std::pow(N, 1.0 + eps);
    }
    r.value = scale * (t1 + t2 + t3);
    r.dominant_term = t1 >= t2 && t1 >= t3 ? 1 : (t2 >= t3 ? 2 : 3);
    return r;
}

VdcBound vdc_bound_min(int k, double N, double eta, double eps) {
    VdcBound c = vdc_bound(k, N, eta, VdcVariant::classical, eps);
    if (k < 3) return c;
    VdcBound h = vdc_bound(k, N, eta, VdcVariant::heathbrown, eps);
    return c.value <= h.value ? c : h;
}

SawtoothResult sawtooth_truncation(double x, int M) {
    if (M < 1) throw std::invalid_argument("sawtooth_truncation: M must be >= 1");
    SawtoothResult r;
    double frac = x - std::floor(x);
    r.exact = frac - 0.5;
    // sum over 0 < |m| <= M of e(-2 pi i m x)/(2 pi i m), accumulated as the
    // complex pair sum so the imaginary residue is measured, not assumed.
    KahanComplex acc;
    for (int m = 1; m <= M; ++m) {
        double a = k_two_pi * m * frac;
        double c = std::cos(a), s = std::sin(a);
        // m and -m terms combined: (e^{-ia} - e^{ia})/(2 pi i m) = -sin(a)/(pi m)
        std::complex<double> plus(c, -s), minus(c, s);
        std::complex<double> term = (plus - minus) / std::complex<double>(0.0, k_two_pi * m);
        acc.add(term);
    }
    r.approx = acc.value().real();
    r.imag_residue = std::abs(acc.value().imag());
    double dist = std::min(frac, 1.0 - frac); // distance to nearest integer
    r.bound = dist == 0.0 ? 1.0 : std::min(1.0, 1.0 / (M * dist));
    return r;
}

MangoldtBound mangoldt_sum_bound(int d, std::int64_t m, double X, const FunctionPair& pair,
                                 double eps) {
    if (d < 1 || m == 0) throw std::invalid_argument("mangoldt_sum_bound: need d >= 1, m != 0");
    double am = std::abs(static_cast<double>(m));
    double phis = inverse_phi(pair.h1(), X) * pair.sigma1(X);
    // Each case lists three terms (m_exponent, X_exponent, phis_exponent).
    double rows[3][3];
    if (d == 1) {
        double r[3][3] = {{0.25, -1.0 / 12, 0.0}, {1.0 / 14, 0.0, -1.0 / 14}, {0.0, 1.0 / 12, -0.25}};
        std::copy(&r[0][0], &r[0][0] + 9, &rows[0][0]);
    } else if (d == 2) {
        double r[3][3] = {{1.0 / 12, -1.0 / 16, 0.0}, {1.0 / 30, 0.0, -1.0 / 20}, {0.0, 1.0 / 32, -0.125}};
        std::copy(&r[0][0], &r[0][0] + 9, &rows[0][0]);
    } else if (d <= 9) {
        double pw = std::ldexp(1.0, d);
        double r[3][3] = {{0.0, -1.0 / (4.0 * pw), 0.0},
                          {1.0 / (4.0 * (pw - 1.0)), -(d - 1.0) / (8.0 * (pw - 1.0)), 0.0},
                          {1.0 / (6.0 * (pw - 1.0)), 0.0, -1.0 / (3.0 * pw)}};
        std::copy(&r[0][0], &r[0][0] + 9, &rows[0][0]);
    } else {
        double dd1 = d * (d + 1.0);
        double r[3][3] = {{0.0, -1.0 / (4.0 * dd1), 0.0},
                          {1.0 / (2.0 * dd1), -(d - 1.0) / (4.0 * dd1), 0.0},
                          {1.0 / (3.0 * dd1), 0.0, -2.0 / (3.0 * dd1 * (d + 1.0))}};
        std::copy(&r[0][0], &r[0][0] + 9, &rows[0][0]);
    }
    MangoldtBound out;
    double lead = std::pow(X, 1.0 + eps);
    for (int i = 0; i < 3; ++i) {
        out.terms[i] = lead * std::pow(am, rows[i][0]) * std::pow(X, rows[i][1]) *
                       std::pow(phis, rows[i][2]);
        out.value += out.terms[i];
    }
    return out;
}

double vaughan_u_selection(int d, std::int64_t m, double X, const FunctionPair& pair) {
    double am = std::abs(static_cast<double>(m));
    double phis = inverse_phi(pair.h1(), X) * pair.sigma1(X);
    if (d == 1) return std::pow(am, -3.0 / 7.0) * std::pow(phis, 3.0 / 7.0);
    if (d == 2) return std::pow(am, -2.0 / 15.0) * std::pow(phis, 0.2);
    if (d <= 9) {
        double pw = std::ldexp(1.0, d);
        return std::pow(am, -2.0 / (6.0 * (pw - 1.0))) * std::pow(phis, 2.0 / (3.0 * pw));
    }
    double dd1 = d * (d + 1.0);
    return std::pow(am, -2.0 / (3.0 * dd1)) * std::pow(phis, 4.0 / (3.0 * dd1 * (d + 1.0)));
}

namespace {

// Shared walk over primes <= N: calls f(p, phase) with the exact rational
// phase of xi*P(p).
template <typename F>
void for_primes_with_phase(const SieveTables& tables, Rational xi, const IntPolynomial& poly,
                           std::int64_t N, F&& f) {
    for (std::int64_t p = 2; p <= N; ++p) {
        if (!tables.is_prime(p)) continue;
        double frac = 0.0;
        if (xi.a != 0) {
            std::int64_t r = poly.eval_mod(p, xi.q);
            std::int64_t num =
                static_cast<std::int64_t>(static_cast<__int128>(xi.a) * r % xi.q);
            frac = static_cast<double>(num) / static_cast<double>(xi.q);
        }
        f(p, unit_phase(frac));
    }
}

} // namespace

TransferResult transfer_error_log(const ThinSet& set, const SieveTables& tables, Rational xi,
                                   const IntPolynomial& poly, std::int64_t N) {
    TransferResult out;
    auto adm = check_exponent_conditions(poly.degree(), set.spec().pair.gamma1(),
                                         set.spec().pair.gamma2(), ConditionTable::transfer);
    out.admissible_warning = !adm.admissible;

    KahanComplex lhs, rhs;
    for_primes_with_phase(tables, xi, poly, N, [&](std::int64_t p, std::complex<double> z) {
        double lp = std::log(static_cast<double>(p));
        if (set.is_member(p)) lhs.add(lp * z.real(), lp * z.imag());
        if (static_cast<double>(p) >= set.spec().pair.x_psi()) {
            double w = lp * set.spec().pair.psi_dd(static_cast<double>(p)).value();
            rhs.add(w * z.real(), w * z.imag());
        }
    });
    out.lhs = lhs.value();
    out.rhs = rhs.value();
    out.err = std::abs(out.lhs - out.rhs);
    out.scaled = out.err / inverse_phi(set.spec().pair.h2(), static_cast<double>(N));
    return out;
}

TransferResult transfer_error_weighted(const ThinSet& set, const SieveTables& tables, Rational xi,
                                   const IntPolynomial& poly, std::int64_t N,
                                   TransferWeighting weighting) {
    TransferResult out;
    auto adm = check_exponent_conditions(poly.degree(), set.spec().pair.gamma1(),
                                         set.spec().pair.gamma2(), ConditionTable::weighted);
    out.admissible_warning = !adm.admissible;

    KahanComplex lhs, rhs;
    const FunctionPair& pair = set.spec().pair;
    for_primes_with_phase(tables, xi, poly, N, [&](std::int64_t p, std::complex<double> z) {
        double x = static_cast<double>(p);
        double lp = std::log(x);
        bool in_window = x >= pair.x_psi();
        double psi = in_window ? pair.psi_dd(x).value() : 0.0;
        if (weighting == TransferWeighting::hilbert) {
            if (in_window && set.is_member(p)) {
                double w = lp / (x * psi);
                lhs.add(w * z.real(), w * z.imag());
            }
            double w = lp / x;
            rhs.add(w * z.real(), w * z.imag());
        } else {
            if (in_window && set.is_member(p)) {
                double w = lp / psi;
                lhs.add(w * z.real(), w * z.imag());
            }
            rhs.add(lp * z.real(), lp * z.imag());
        }
    });
    out.lhs = lhs.value();
    out.rhs = rhs.value();
    out.err = std::abs(out.lhs - out.rhs);
    out.scaled = weighting == TransferWeighting::hilbert ? out.err : out.err / static_cast<double>(N);
    return out;
}

} // namespace primelab
