#pragma once

// Number-theoretic tables: primality, Mobius, von Mangoldt and Chebyshev
// theta prefix sums, built by a segmented linear sieve.  Tables are immutable
// after construction and safe to share across threads.

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "primelab/kahan.hpp"

namespace primelab {

class SieveTables {
public:
    std::int64_t limit() const { return limit_; }

    bool is_prime(std::int64_t n) const {
        return n >= 2 && n <= limit_ && (prime_bits_[static_cast<std::size_t>(n >> 6)] >> (n & 63) & 1);
    }

    int mobius(std::int64_t n) const { return mobius_[static_cast<std::size_t>(n)]; }

    // (p, e) with n = p^e, or (0, 0) when Lambda(n) = 0.
    std::pair<std::int64_t, int> mangoldt_pair(std::int64_t n) const;

    // Lambda(n) = e > 0 ? log p : 0, evaluated from the exact pair.
    double mangoldt(std::int64_t n) const {
        auto [p, e] = mangoldt_pair(n);
        return e > 0 ? std::log(static_cast<double>(p)) : 0.0;
    }

    bool is_prime_power(std::int64_t n) const { return mangoldt_e_[static_cast<std::size_t>(n)] > 0; }

    // theta(n) = sum_{p <= n} log p.
    double theta(std::int64_t n) const { return theta_prefix_[static_cast<std::size_t>(n)]; }

    // Ascending primes in [lo, hi].
    std::vector<std::int64_t> primes_in(std::int64_t lo, std::int64_t hi) const;

    void dump_csv(std::ostream& out, std::int64_t lo, std::int64_t hi) const;

private:
    friend SieveTables build_sieve(std::int64_t, std::int64_t);

    std::int64_t limit_ = 0;
    std::vector<std::uint64_t> prime_bits_;
    std::vector<std::int8_t> mobius_;
    std::vector<std::uint8_t> mangoldt_e_; // exponent e when n = p^e, else 0
    std::vector<double> theta_prefix_;
};

// Builds all tables up to `limit`.  Sieving is segmented; peak transient
// memory per segment is O(segment) on top of the output arrays.
SieveTables build_sieve(std::int64_t limit, std::int64_t segment = std::int64_t(1) << 20);

// sum_{p <= N} log(p)/p, compensated, ascending p.
double mertens_sum(const SieveTables& tables, std::int64_t N);

// Streaming variant that never materializes tables: returns the Mertens sum at
// each checkpoint (checkpoints must be ascending).  Used for the Mertens
// constant convergence estimate at limits beyond what tables comfortably hold.
std::vector<double> mertens_scan(std::int64_t limit, const std::vector<std::int64_t>& checkpoints,
                                 std::int64_t segment = std::int64_t(1) << 20);

// Exact symbolic combination  sum_i c_i log(p_i).
struct LogCombination {
    std::vector<std::pair<std::int64_t, int>> terms; // (prime, integer coefficient)

    void add(std::int64_t p, int c);
    double value() const;
    bool empty() const { return terms.empty(); }
};

// Vaughan coefficients on [jlo, jhi]:
//   a_j = sum_{d > u, d*l = j} mu(d)        (exact integers)
//   b_j = sum_{d, l <= u, d*l = j} mu(d) Lambda(l)   (exact symbolic log sums)
struct VaughanCoefficients {
    std::int64_t jlo = 1;
    std::vector<std::int64_t> a;
    std::vector<LogCombination> b;

    std::int64_t a_at(std::int64_t j) const { return a[static_cast<std::size_t>(j - jlo)]; }
    const LogCombination& b_at(std::int64_t j) const { return b[static_cast<std::size_t>(j - jlo)]; }
};

VaughanCoefficients vaughan_coefficients(const SieveTables& tables, std::int64_t u,
                                         std::int64_t jlo, std::int64_t jhi);

} // namespace primelab
