#pragma once

// r-variational seminorms: exact O(n^2) dynamic program with optimal
// subsequence recovery, and the long/short decomposition over the lacunary
// index set Z_rho = { floor(2^(k^rho)) }.

#include <complex>
#include <cstdint>
#include <vector>

namespace primelab {

struct VariationResult {
    double value = 0.0;
    std::vector<std::size_t> subsequence; // positions within the input array
};

// sup over increasing subsequences of (sum |a_{k_j} - a_{k_{j-1}}|^r)^{1/r}.
// The DP runs in r-th powers and takes one root at the end.  Ties resolve to
// the lexicographically smallest index list.  Requires r >= 1, length >= 1.
VariationResult vr_exact(const std::vector<std::complex<double>>& seq, double r);

// floor(2^(k^rho)) for k >= 0.
std::int64_t zrho_point(double rho, int k);

// Deduplicated ascending Z_rho values in [lo, hi].
std::vector<std::int64_t> zrho_indices(double rho, std::int64_t lo, std::int64_t hi);

struct SplitResult {
    double long_part = 0.0;
    double short_part = 0.0;
    std::vector<double> blocks; // per-block exact variation values
};

// seq[i] carries index base + i.  long = vr_exact over indices in Z_rho;
// short = l^r combination of per-block values on [N_{k-1}, N_k).
SplitResult vr_split(const std::vector<std::complex<double>>& seq, std::int64_t base, double r,
                     double rho);

} // namespace primelab
