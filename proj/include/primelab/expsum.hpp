#pragma once

// Exponential sums with phase F(t) = xi*P(t) + m*(phi1(t) - tau*psi(t)):
// direct evaluation, the exact four-term Vaughan decomposition, van der
// Corput / Heath-Brown bound evaluators, sawtooth truncation, and the
// thin-set -> primes transfer error measurements.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "primelab/model.hpp"
#include "primelab/sieve.hpp"

namespace primelab {

class ThinSet;

// Polynomial with integer coefficients and no constant term:
// P(n) = c1*n + c2*n^2 + ... + cd*n^d, cd != 0.
class IntPolynomial {
public:
    explicit IntPolynomial(std::vector<std::int64_t> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()); }
    const std::vector<std::int64_t>& coeffs() const { return coeffs_; }

    // Exact value as an offset; throws on 64-bit overflow.
    std::int64_t eval(std::int64_t n) const;

    // P(n) mod q, exact, nonnegative.
    std::int64_t eval_mod(std::int64_t n, std::int64_t q) const;

    static IntPolynomial parse(const std::string& comma_separated);

private:
    std::vector<std::int64_t> coeffs_;
};

// xi = a/q with 0 <= a < q, gcd(a, q) = 1.
struct Rational {
    std::int64_t a = 0;
    std::int64_t q = 1;

    static Rational make(std::int64_t a, std::int64_t q);
    static Rational parse(const std::string& text); // "A/Q" or "0"
    double value() const { return static_cast<double>(a) / static_cast<double>(q); }
};

struct PhaseSpec {
    Rational xi;
    std::int64_t m = 0; // 0 allowed only where no progression bound is requested
    int tau = 0;
    IntPolynomial poly;
    FunctionPair pair;

    PhaseSpec(Rational xi_, std::int64_t m_, int tau_, IntPolynomial poly_, FunctionPair pair_);
};

// {xi*P(n) + m*(phi1(n) - tau*psi(n))} in [0, 1).  The rational part is exact
// (modular Horner); the analytic part is double-double.
double phase_mod1(const PhaseSpec& spec, std::int64_t n);

struct SumResult {
    std::complex<double> value{0.0, 0.0};
    std::int64_t terms = 0;
    std::string phase_mode = "mixed";

    double abs() const { return std::abs(value); }
};

// Progression-sum bound values |m|^... (jK)^{1+eps} (phi1 sigma1(jK))^... .
struct ProgressionBounds {
    double first = 0.0;  // exponent family 1/2^d
    double second = 0.0; // exponent family 2/(d(d+1)^2), degree >= 2 only
};

struct ProgressionSum {
    SumResult sum;
    ProgressionBounds bounds;
};

// T(K) = sum_{1 <= k <= K} e(F(j k)), with the two bound expressions at eps.
ProgressionSum direct_progression_sum(const PhaseSpec& spec, std::int64_t j, std::int64_t K,
                                      double eps);

// S(X, X') = sum_{X < n <= X'} e(F(n)) Lambda(n); requires X < X' <= 2X.
SumResult mangoldt_sum_direct(const PhaseSpec& spec, const SieveTables& tables, std::int64_t X,
                              std::int64_t Xp);

struct VaughanDecomposition {
    SumResult sigma1;
    SumResult sigma21;
    SumResult sigma22;
    SumResult sigma3;
    SumResult recombined; // sigma1 - sigma21 - sigma22 + sigma3
    SumResult direct;
    double residual = 0.0;   // |recombined - direct|
    double theta_mass = 0.0; // sum of Lambda over (X, X']
    double u_selected_bound = 0.0; // the proof's u choice for this degree, diagnostic
};

VaughanDecomposition vaughan_decompose(const PhaseSpec& spec, const SieveTables& tables,
                                       std::int64_t X, std::int64_t Xp, std::int64_t u);

enum class VdcVariant { classical, heathbrown };

struct VdcBound {
    double value = 0.0;
    int dominant_term = 0; // 1-based index of the largest bracket term
};

// classical (k >= 2): N*(eta^{1/(2^k-2)} + N^{-2/2^k} + (N^k eta)^{-2/2^k})
// heathbrown (k >= 3): N^{1+eps}*(eta^{1/(k(k-1))} + N^{-1/(k(k-1))}
//                                 + (N^k eta)^{-2/(k^2(k-1))})
VdcBound vdc_bound(int k, double N, double eta, VdcVariant variant, double eps);
VdcBound vdc_bound_min(int k, double N, double eta, double eps);

struct SawtoothResult {
    double approx = 0.0; // truncated Fourier sum for {x} - 1/2
    double bound = 0.0;  // min{1, 1/(M ||x||)}
    double exact = 0.0;  // {x} - 1/2
    double imag_residue = 0.0;
};

SawtoothResult sawtooth_truncation(double x, int M);

// The dyadic sum bound from the four degree cases, evaluated as an expression
// table keyed by d, together with the proof's u selection.
struct MangoldtBound {
    double value = 0.0;
    double terms[3] = {0.0, 0.0, 0.0};
};

MangoldtBound mangoldt_sum_bound(int d, std::int64_t m, double X, const FunctionPair& pair,
                                 double eps);
double vaughan_u_selection(int d, std::int64_t m, double X, const FunctionPair& pair);

struct TransferResult {
    std::complex<double> lhs{0.0, 0.0};
    std::complex<double> rhs{0.0, 0.0};
    double err = 0.0;
    double scaled = 0.0;
    bool admissible_warning = false;
};

// sum_{p in P_N} e(xi P(p)) log p  vs  sum_{p in primes_N} e(xi P(p)) log p psi(p);
// scaled = err / phi2(N).
TransferResult transfer_error_log(const ThinSet& set, const SieveTables& tables, Rational xi,
                                   const IntPolynomial& poly, std::int64_t N);

enum class TransferWeighting { hilbert, average };

// hilbert: log p/(p psi(p)) vs log p/p, scaled = err.
// average: log p/psi(p) vs log p, scaled = err / N.
TransferResult transfer_error_weighted(const ThinSet& set, const SieveTables& tables, Rational xi,
                                   const IntPolynomial& poly, std::int64_t N,
                                   TransferWeighting weighting);

} // namespace primelab
