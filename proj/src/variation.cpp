#include "primelab/variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace primelab {

VariationResult vr_exact(const std::vector<std::complex<double>>& seq, double r) {
    if (r < 1.0) throw std::invalid_argument("vr_exact: r must be >= 1");
    if (seq.empty()) throw std::invalid_argument("vr_exact: sequence must be nonempty");
    std::size_t n = seq.size();

    // Suffix DP: suf[i] = best r-th-power variation of a path starting at i.
    // Running it from the right makes the greedy reconstruction below emit the
    // lexicographically smallest optimal index list.
    std::vector<double> suf(n, 0.0);
    for (std::size_t i = n - 1; i-- > 0;) {
        double best = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double cand = std::pow(std::abs(seq[j] - seq[i]), r) + suf[j];
            if (cand > best) best = cand;
        }
        suf[i] = best;
    }

    std::size_t start = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (suf[i] > suf[start]) start = i;
    // Smallest starting index attaining the optimum.
    for (std::size_t i = 0; i < start; ++i)
        if (suf[i] == suf[start]) {
            start = i;
            break;
        }

    VariationResult out;
    out.subsequence.push_back(start);
    std::size_t i = start;
    while (suf[i] > 0.0) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // Same expression as in the DP, so equality is exact.
            if (std::pow(std::abs(seq[j] - seq[i]), r) + suf[j] == suf[i]) {
                out.subsequence.push_back(j);
                i = j;
                break;
            }
        }
    }
    out.value = std::pow(suf[start], 1.0 / r);
    return out;
}

std::int64_t zrho_point(double rho, int k) {
    if (k < 0) throw std::invalid_argument("zrho_point: k must be >= 0");
    return static_cast<std::int64_t>(std::floor(std::exp2(std::pow(static_cast<double>(k), rho))));
}

std::vector<std::int64_t> zrho_indices(double rho, std::int64_t lo, std::int64_t hi) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("zrho_indices: rho must lie in (0, 1)");
    std::vector<std::int64_t> out;
    for (int k = 0;; ++k) {
        std::int64_t v = zrho_point(rho, k);
        if (v > hi) break;
        if (v >= lo && (out.empty() || out.back() != v)) out.push_back(v);
    }
    return out;
}

SplitResult vr_split(const std::vector<std::complex<double>>& seq, std::int64_t base, double r,
                     double rho) {
    if (seq.empty()) throw std::invalid_argument("vr_split: sequence must be nonempty");
    std::int64_t last = base + static_cast<std::int64_t>(seq.size()) - 1;
    std::vector<std::int64_t> bnd = zrho_indices(rho, base, last);

    SplitResult out;

    // Long part: the sequence restricted to the Z_rho indices.
    if (bnd.size() >= 2) {
        std::vector<std::complex<double>> sub;
        sub.reserve(bnd.size());
        for (std::int64_t b : bnd) sub.push_back(seq[static_cast<std::size_t>(b - base)]);
        out.long_part = vr_exact(sub, r).value;
    }

    // Blocks [N_{k-1}, N_k): cut the full index range at the boundaries, the
    // leading piece before the first boundary and the trailing piece after the
    // last one included.
    std::vector<std::int64_t> cuts;
    cuts.push_back(base);
    for (std::int64_t b : bnd)
        if (b > base) cuts.push_back(b);
    cuts.push_back(last + 1);

    double power_sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        std::vector<std::complex<double>> block(
            seq.begin() + static_cast<std::ptrdiff_t>(cuts[i] - base),
            seq.begin() + static_cast<std::ptrdiff_t>(cuts[i + 1] - base));
        double v = vr_exact(block, r).value;
        out.blocks.push_back(v);
        power_sum += std::pow(v, r);
    }
    out.short_part = std::pow(power_sum, 1.0 / r);
    return out;
}

} // namespace primelab
