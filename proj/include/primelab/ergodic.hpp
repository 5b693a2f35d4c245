#pragma once

// Discrete Radon-type operators on Z along P(p): normalized averages over the
// thin prime set, weighted prime averages, truncated Hilbert transforms, their
// sparse kernels, Fourier multipliers on rational grids, and the variation
// measurements over nested truncations.

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "primelab/expsum.hpp"
#include "primelab/thinset.hpp"

namespace primelab {

// A       : 1/|P_N| on offsets P(p), p in the thin set.
// M       : log(p)/(psi(p) Psi_N), Psi_N = sum log(p)/psi(p) over the thin set.
// M_prime : log(p)/theta(N) over all primes <= N.
// H       : log|p|/(p psi(|p|)) over +/- thin-set members (no normalization).
// H_prime : log|p|/p over +/- primes.
enum class KernelSource { A, M, M_prime, H, H_prime };

struct Kernel {
    std::map<std::int64_t, double> weights; // offset P(p) -> weight, collisions add
    double l1_norm = 0.0;
    KernelSource source = KernelSource::A;
    std::int64_t N = 0;
    double psi_mass = 0.0;   // Psi_N (thin-set sources)
    double theta_mass = 0.0; // theta(N)
    std::int64_t member_count = 0;
};

// Throws std::runtime_error when a normalized source meets an empty set.
Kernel build_kernel(const ThinSet& set, const IntPolynomial& poly, std::int64_t N,
                    KernelSource source);

// Finitely supported signal on Z; entries ascending in index, unique.
struct SignalOnZ {
    std::vector<std::pair<std::int64_t, std::complex<double>>> entries;

    static SignalOnZ delta(std::int64_t at = 0);
    static SignalOnZ from_pairs(std::vector<std::pair<std::int64_t, std::complex<double>>> raw);

    double norm(double s) const; // (sum |v|^s)^(1/s), compensated
};

// (k * f)(x) = sum_o w(o) f(x - o).
SignalOnZ apply(const Kernel& kernel, const SignalOnZ& f);

struct MultiplierResult {
    std::vector<std::complex<double>> values; // one per grid point
    double sup_abs = 0.0;
};

// m(xi) = sum_o w(o) e(xi o) with exact rational phases.  Grid points are
// independent; results are written by index, so the output is identical for
// any thread count.
MultiplierResult multiplier(const Kernel& kernel, const std::vector<Rational>& grid,
                            int threads = 1);

struct KernelMassResult {
    double mass = 0.0;       // sum over the block of l1 norms of kernel steps
    double recomputed = 0.0; // same mass by full per-step rebuild (crosscheck)
    bool crosschecked = false;
    double reference = 0.0; // k^(rho-1)
    std::int64_t n_lo = 0;  // N_{k-1}
    std::int64_t n_hi = 0;  // N_k
    std::int64_t new_members = 0;
};

// l1 mass of successive kernel differences over block [N_{k-1}, N_k), with the
// kernel at truncation n; only M and H sources.  Incremental bookkeeping: each
// step touches one entering member plus, for M, the global renormalization.
KernelMassResult short_variation_kernel_mass(const ThinSet& set, const IntPolynomial& poly,
                                             double rho, int k, KernelSource source,
                                             bool crosscheck = false);

struct VariationExperimentRow {
    std::int64_t n_max = 0;
    std::int64_t stages = 0;    // kernel change points (member entries) <= n_max
    double f_norm = 0.0;        // ||f||_s
    double ratio = 0.0;         // ||V_r(op_N f)||_s / ||f||_s
    double ratio_long = 0.0;    // same with the long part over Z_rho
    double ratio_short = 0.0;   // same with the short part
};

struct VariationExperimentReport {
    std::vector<VariationExperimentRow> rows;
    bool r_regime_warning = false; // set when r <= 2
};

// Per-x sequences (op_N f)(x) over all N <= n_max, compressed to the member
// entry stages, pointwise V_r and its Z_rho split, then the l^s norm over x.
VariationExperimentReport variation_experiment(const ThinSet& set, const IntPolynomial& poly,
                                               KernelSource source, const SignalOnZ& f, double r,
                                               double rho, double s,
                                               const std::vector<std::int64_t>& n_grid,
                                               int threads = 1);

} // namespace primelab
