#pragma once

// Membership, enumeration and counting for the thin prime sets
// P_{+/-} = { p prime : {±phi1(p)} < psi(p) }.

#include <cstdint>
#include <vector>

#include "primelab/model.hpp"
#include "primelab/sieve.hpp"

namespace primelab {

enum class SetSign { plus, minus };

enum class BoundaryPolicy { standard, extended, exact_boundary };

struct ThinSetSpec {
    SetSign sign = SetSign::minus;
    FunctionPair pair;
    BoundaryPolicy policy = BoundaryPolicy::exact_boundary;
};

struct MembershipDiagnostics {
    std::int64_t boundary_cases = 0;      // comparisons within 2^-40 but not exact
    std::int64_t deep_boundary_cases = 0; // still within 2^-90 in extended precision
    // Comparisons where the two sides agree to the last extended-precision bit
    // (algebraic ties such as {−phi(p)} = psi(p) at p = m^3 − 1, or floor(h(n))
    // landing on an exact integer).  Strict `<` resolves them; they are
    // reported here rather than as unresolved boundary cases.
    std::int64_t exact_ties = 0;
};

struct CountResult {
    std::int64_t count = 0;
    double integral = 0.0;
    double ratio = 0.0; // NaN with degenerate flag when the integral vanishes
    bool degenerate = false;
    std::int64_t boundary_cases = 0;
    std::int64_t exact_ties = 0;
};

class ThinSet {
public:
    ThinSet(const SieveTables& tables, ThinSetSpec spec);

    const ThinSetSpec& spec() const { return spec_; }
    const SieveTables& tables() const { return *tables_; }

    // True iff p is prime and {±phi1(p)} < psi(p) under the spec's precision.
    bool is_member(std::int64_t p, MembershipDiagnostics* diag = nullptr) const;

    // Floor form of the membership test: floor(±phi1(p)) - floor(±phi1(p) - psi(p)) == 1.
    bool floor_characterization(std::int64_t p) const;

    // Ascending members up to `limit` via the fractional-part definition.
    std::vector<std::int64_t> enumerate(std::int64_t limit,
                                        MembershipDiagnostics* diag = nullptr) const;

    // Independent enumeration {floor(h(n))} ∩ primes; valid when h1 = h2 and
    // the window is canonical (which it always is here) and sign is minus.
    std::vector<std::int64_t> enumerate_dual(std::int64_t limit,
                                             MembershipDiagnostics* diag = nullptr) const;

    CountResult count_vs_integral(std::int64_t limit) const;

    // Integral of psi(x)/log(x) over [max(2, domain start), N], adaptive
    // Simpson, relative tolerance 1e-10.
    double window_integral(std::int64_t N) const;

private:
    const SieveTables* tables_;
    ThinSetSpec spec_;
};

} // namespace primelab
