#include "primelab/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace primelab {

namespace {

std::vector<std::int64_t> small_primes_up_to(std::int64_t n) {
    std::vector<bool> comp(static_cast<std::size_t>(n + 1), false);
    std::vector<std::int64_t> primes;
    for (std::int64_t p = 2; p <= n; ++p) {
        if (comp[static_cast<std::size_t>(p)]) continue;
        primes.push_back(p);
        for (std::int64_t m = p * p; m <= n; m += p) comp[static_cast<std::size_t>(m)] = true;
    }
    return primes;
}

// Visits segments [lo, hi) of [2, limit] and calls f(lo, hi, is_prime_in_segment)
// where the flag vector is indexed by n - lo.
template <typename F>
void for_prime_segments(std::int64_t limit, std::int64_t segment, F&& f) {
    std::int64_t root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(limit))) + 2;
    while (root * root > limit + 1) --root;
    auto base = small_primes_up_to(root);
    std::vector<bool> flags;
    for (std::int64_t lo = 2; lo <= limit; lo += segment) {
        std::int64_t hi = std::min(limit + 1, lo + segment);
        flags.assign(static_cast<std::size_t>(hi - lo), true);
        for (std::int64_t p : base) {
            if (p * p >= hi) break;
            std::int64_t start = std::max(p * p, (lo + p - 1) / p * p);
            for (std::int64_t m = start; m < hi; m += p) flags[static_cast<std::size_t>(m - lo)] = false;
        }
        f(lo, hi, flags);
    }
}

} // namespace

SieveTables build_sieve(std::int64_t limit, std::int64_t segment) {
    if (limit < 2 || limit > (std::int64_t(1) << 34))
        throw std::invalid_argument("build_sieve: limit must be in [2, 2^34]");
    if (segment < 64) segment = 64;

    SieveTables t;
    t.limit_ = limit;
    t.prime_bits_.assign(static_cast<std::size_t>(limit / 64 + 1), 0);
    t.mobius_.assign(static_cast<std::size_t>(limit + 1), 0);
    t.mangoldt_e_.assign(static_cast<std::size_t>(limit + 1), 0);
    t.theta_prefix_.assign(static_cast<std::size_t>(limit + 1), 0.0);
    t.mobius_[1] = 1;

    std::int64_t root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(limit))) + 2;
    while (root * root > limit + 1) --root;
    auto base = small_primes_up_to(root);

    std::vector<std::int64_t> rem(static_cast<std::size_t>(segment));
    std::vector<std::int8_t> mob(static_cast<std::size_t>(segment));

    for (std::int64_t lo = 2; lo <= limit; lo += segment) {
        std::int64_t hi = std::min(limit + 1, lo + segment);
        std::size_t len = static_cast<std::size_t>(hi - lo);
        for (std::size_t i = 0; i < len; ++i) {
            rem[i] = lo + static_cast<std::int64_t>(i);
            mob[i] = 1;
        }
        for (std::int64_t p : base) {
            if (p >= hi) break;
            for (std::int64_t m = (lo + p - 1) / p * p; m < hi; m += p) {
                std::size_t i = static_cast<std::size_t>(m - lo);
                mob[i] = static_cast<std::int8_t>(-mob[i]);
                rem[i] /= p;
            }
            std::int64_t p2 = p * p;
            if (p2 < hi) {
                for (std::int64_t m = (lo + p2 - 1) / p2 * p2; m < hi; m += p2) {
                    std::size_t i = static_cast<std::size_t>(m - lo);
                    mob[i] = 0;
                    while (rem[i] % p == 0) rem[i] /= p;
                }
            }
        }
        for (std::size_t i = 0; i < len; ++i) {
            std::int64_t n = lo + static_cast<std::int64_t>(i);
            if (rem[i] > 1) {
                // one prime factor above sqrt(limit), exponent 1
                if (mob[i] != 0) mob[i] = static_cast<std::int8_t>(-mob[i]);
                if (rem[i] == n) {
                    t.prime_bits_[static_cast<std::size_t>(n >> 6)] |= std::uint64_t(1) << (n & 63);
                    t.mangoldt_e_[static_cast<std::size_t>(n)] = 1;
                }
            }
            t.mobius_[static_cast<std::size_t>(n)] = mob[i];
        }
    }

    // Small primes and their powers.
    for (std::int64_t p : base) {
        if (p > limit) break;
        t.prime_bits_[static_cast<std::size_t>(p >> 6)] |= std::uint64_t(1) << (p & 63);
        std::uint8_t e = 1;
        for (std::int64_t q = p; q <= limit; ) {
            t.mangoldt_e_[static_cast<std::size_t>(q)] = e;
            if (q > limit / p) break;
            q *= p;
            ++e;
        }
    }

    // theta prefix, compensated, fixed ascending order.
    KahanSum acc;
    for (std::int64_t n = 2; n <= limit; ++n) {
        if (t.is_prime(n)) acc.add(std::log(static_cast<double>(n)));
        t.theta_prefix_[static_cast<std::size_t>(n)] = acc.value();
    }
    return t;
}

std::pair<std::int64_t, int> SieveTables::mangoldt_pair(std::int64_t n) const {
    int e = mangoldt_e_[static_cast<std::size_t>(n)];
    if (e == 0) return {0, 0};
    if (e == 1) return {n, 1};
    // p = n^(1/e), recovered exactly with an integer fixup.
    std::int64_t p = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / e)));
    for (std::int64_t c = std::max<std::int64_t>(2, p - 2); c <= p + 2; ++c) {
        std::int64_t q = 1;
        bool overflow = false;
        for (int i = 0; i < e; ++i) {
            if (q > limit_ / c + 1) { overflow = true; break; }
            q *= c;
        }
        if (!overflow && q == n) return {c, e};
    }
    throw std::logic_error("mangoldt_pair: root recovery failed");
}

std::vector<std::int64_t> SieveTables::primes_in(std::int64_t lo, std::int64_t hi) const {
    std::vector<std::int64_t> out;
    for (std::int64_t n = std::max<std::int64_t>(2, lo); n <= std::min(hi, limit_); ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

void SieveTables::dump_csv(std::ostream& out, std::int64_t lo, std::int64_t hi) const {
    out << "n,is_prime,mobius,mangoldt_p,mangoldt_e\n";
    for (std::int64_t n = std::max<std::int64_t>(1, lo); n <= std::min(hi, limit_); ++n) {
        auto [p, e] = n >= 2 ? mangoldt_pair(n) : std::pair<std::int64_t, int>{0, 0};
        out << n << ',' << (is_prime(n) ? 1 : 0) << ',' << int(mobius_[static_cast<std::size_t>(n)]) << ',';
        if (e > 0)
            out << p << ',' << e;
        else
            out << ',';
        out << '\n';
    }
}

double mertens_sum(const SieveTables& tables, std::int64_t N) {
    if (N > tables.limit()) throw std::out_of_range("mertens_sum: N above sieve limit");
    KahanSum acc;
    for (std::int64_t p = 2; p <= N; ++p)
        if (tables.is_prime(p)) acc.add(std::log(static_cast<double>(p)) / static_cast<double>(p));
    return acc.value();
}

std::vector<double> mertens_scan(std::int64_t limit, const std::vector<std::int64_t>& checkpoints,
                                 std::int64_t segment) {
    std::vector<double> out;
    out.reserve(checkpoints.size());
    KahanSum acc;
    std::size_t next = 0;
    for_prime_segments(limit, segment, [&](std::int64_t lo, std::int64_t hi, const std::vector<bool>& flags) {
        for (std::int64_t n = lo; n < hi; ++n) {
            while (next < checkpoints.size() && checkpoints[next] < n) {
                out.push_back(acc.value());
                ++next;
            }
            if (flags[static_cast<std::size_t>(n - lo)])
                acc.add(std::log(static_cast<double>(n)) / static_cast<double>(n));
        }
    });
    while (next < checkpoints.size()) {
        out.push_back(acc.value());
        ++next;
    }
    return out;
}

void LogCombination::add(std::int64_t p, int c) {
    for (auto& t : terms) {
        if (t.first == p) {
            t.second += c;
            return;
        }
    }
    terms.push_back({p, c});
}

double LogCombination::value() const {
    KahanSum acc;
    for (auto [p, c] : terms)
        if (c != 0) acc.add(c * std::log(static_cast<double>(p)));
    return acc.value();
}

VaughanCoefficients vaughan_coefficients(const SieveTables& tables, std::int64_t u,
                                         std::int64_t jlo, std::int64_t jhi) {
    if (u < 1) throw std::invalid_argument("vaughan_coefficients: u must be >= 1");
    if (jlo < 1 || jhi > tables.limit() || jhi < jlo)
        throw std::out_of_range("vaughan_coefficients: range outside sieve limit");

    VaughanCoefficients vc;
    vc.jlo = jlo;
    std::size_t n = static_cast<std::size_t>(jhi - jlo + 1);
    vc.a.assign(n, 0);
    vc.b.assign(n, {});

    // a_j = -sum_{d | j, d <= u} mu(d) for j > u; a_j = 0 for j <= u.
    for (std::int64_t d = 1; d <= std::min(u, jhi); ++d) {
        int mu = tables.mobius(d);
        if (mu == 0) continue;
        std::int64_t start = std::max(jlo, std::max(u + 1, d)) ;
        start = (start + d - 1) / d * d;
        for (std::int64_t j = start; j <= jhi; j += d)
            vc.a[static_cast<std::size_t>(j - jlo)] -= mu;
    }

    // b_j over pairs d, l <= u with d*l in range; Lambda(l) kept symbolic.
    for (std::int64_t d = 1; d <= u; ++d) {
        int mu = tables.mobius(d);
        if (mu == 0) continue;
        for (std::int64_t l = 1; l <= u && d <= jhi / l; ++l) {
            std::int64_t j = d * l;
            if (j < jlo || j > jhi) continue;
            auto [p, e] = tables.mangoldt_pair(l);
            if (e > 0) vc.b[static_cast<std::size_t>(j - jlo)].add(p, mu);
        }
    }
    return vc;
}

} // namespace primelab
