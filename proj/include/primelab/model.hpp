#pragma once

// The model subfamily h(x) = x^c log^A(x) of increasing convex regularly
// varying functions, their inverses phi = h^{-1}, derivatives, the correction
// factor sigma, and the canonical membership window
// psi(x) = phi2(x+1) - phi2(x).

#include <optional>
#include <stdexcept>

#include "primelab/dd.hpp"

namespace primelab {

enum class Precision { standard, extended };

class ModelFunction {
public:
    // c in [1, 2); A >= 0, and A > 0 when c = 1 (the slowly varying part must
    // tend to infinity in that case).
    ModelFunction(double c, double A);

    double c() const { return c_; }
    double A() const { return A_; }
    double gamma() const { return 1.0 / c_; }
    double x_min() const { return x_min_; }
    double y_min() const { return y_min_; }

    double eval(double x) const;
    double deriv(double x) const;
    dd eval_dd(dd x) const;
    dd deriv_dd(dd x) const;

    // Derivative correction factor: sigma == 1 for c > 1; for c = 1 the
    // decreasing factor A/log(x) clamped to <= 1.
    double sigma(double x) const;

private:
    double c_;
    double A_;
    double x_min_;
    double y_min_; // h(x_min)
};

// Inverse of h at y, bracketed Newton with bisection fallback.
// standard: relative residual |h(x)-y|/y <= 1e-14; extended: double-double
// refinement, residual <= 1e-28.
double inverse_phi(const ModelFunction& f, double y);
dd inverse_phi_dd(const ModelFunction& f, dd y);

// Exact k-th derivative of the inverse at x (k = 0 returns phi(x)), obtained
// from the Taylor jet of h at phi(x) by series reversion.
double phi_derivative(const ModelFunction& f, int k, double x);

class FunctionPair {
public:
    FunctionPair(ModelFunction h1, ModelFunction h2);

    const ModelFunction& h1() const { return h1_; }
    const ModelFunction& h2() const { return h2_; }
    double gamma1() const { return h1_.gamma(); }
    double gamma2() const { return h2_.gamma(); }
    double sigma1(double x) const { return h1_.sigma(x); }
    double sigma2(double x) const { return h2_.sigma(x); }

    // Start of the region where psi <= 1/2; computed at construction.
    double x_psi() const { return x_psi_; }

    // k-th derivative of psi(x) = phi2(x+1) - phi2(x).
    double psi(double x, int k = 0) const;
    dd psi_dd(double x) const;

private:
    ModelFunction h1_;
    ModelFunction h2_;
    double x_psi_;
};

// Convenience: the pair (h, h) for the floor(h(n)) sets.
inline FunctionPair canonical_pair(double c, double A = 0.0) {
    return FunctionPair(ModelFunction(c, A), ModelFunction(c, A));
}

} // namespace primelab
