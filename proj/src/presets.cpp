#include "primelab/presets.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "primelab/ergodic.hpp"
#include "primelab/expsum.hpp"
#include "primelab/sieve.hpp"
#include "primelab/thinset.hpp"
#include "primelab/variation.hpp"

namespace primelab {

using nlohmann::json;

namespace {

IntPolynomial monomial(int d) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(d), 0);
    c.back() = 1;
    return IntPolynomial(c);
}

// Least-squares slope of log(y) against log(x) over the positive entries.
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                    int* points_used = nullptr) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(ys[i] > 0.0)) continue;
        double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (points_used) *points_used = n;
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

json vaughan_exactness_preset(int /*threads*/) {
    // d, xi, m, tau, X — fixed spread over the parameter grid.
    struct Config {
        int d;
        const char* xi;
        std::int64_t m;
        int tau;
        std::int64_t X;
    };
    const Config configs[20] = {
        {1, "0", 1, 0, 1000},    {1, "1/3", 1, 0, 10000},  {1, "3/7", 5, 1, 100000},
        {1, "1/3", 5, 1, 1000},  {1, "3/7", 1, 0, 10000},  {1, "0", 5, 1, 100000},
        {2, "0", 1, 1, 1000},    {2, "1/3", 5, 0, 10000},  {2, "3/7", 1, 1, 100000},
        {2, "1/3", 1, 0, 1000},  {2, "3/7", 5, 0, 10000},  {2, "0", 5, 1, 100000},
        {3, "0", 1, 0, 1000},    {3, "1/3", 1, 1, 10000},  {3, "3/7", 5, 0, 100000},
        {3, "3/7", 1, 1, 1000},  {3, "0", 5, 0, 10000},    {3, "1/3", 5, 1, 100000},
        {1, "1/3", 0, 0, 10000}, {2, "3/7", 0, 0, 10000},
    };

    SieveTables tables = build_sieve(200000);
    FunctionPair pair = canonical_pair(1.5);

    json rows = json::array();
    bool all_pass = true;
    for (const Config& cfg : configs) {
        std::int64_t Xp = 2 * cfg.X;
        std::int64_t u = static_cast<std::int64_t>(std::cbrt(static_cast<double>(cfg.X)));
        while ((u + 1) * (u + 1) * (u + 1) <= cfg.X) ++u;
        while (u * u * u > cfg.X) --u;
        PhaseSpec spec(Rational::parse(cfg.xi), cfg.m, cfg.tau, monomial(cfg.d), pair);
        VaughanDecomposition dec = vaughan_decompose(spec, tables, cfg.X, Xp, u);
        double tol = 1e-8 * dec.theta_mass;
        bool pass = dec.residual <= tol;
        all_pass = all_pass && pass;
        rows.push_back({{"d", cfg.d},
                        {"xi", cfg.xi},
                        {"m", cfg.m},
                        {"tau", cfg.tau},
                        {"X", cfg.X},
                        {"Xp", Xp},
                        {"u", u},
                        {"sigma1_re", dec.sigma1.value.real()},
                        {"sigma1_im", dec.sigma1.value.imag()},
                        {"sigma21_re", dec.sigma21.value.real()},
                        {"sigma21_im", dec.sigma21.value.imag()},
                        {"sigma22_re", dec.sigma22.value.real()},
                        {"sigma22_im", dec.sigma22.value.imag()},
                        {"sigma3_re", dec.sigma3.value.real()},
                        {"sigma3_im", dec.sigma3.value.imag()},
                        {"direct_re", dec.direct.value.real()},
                        {"direct_im", dec.direct.value.imag()},
                        {"residual", dec.residual},
                        {"theta_mass", dec.theta_mass},
                        {"tolerance", tol},
                        {"pass", pass}});
    }
    return json{{"preset", "vaughan-exactness"},
                {"paper_anchor", "prime_phase_identity"},
                {"pair", {{"c1", 1.5}, {"A1", 0.0}, {"c2", 1.5}, {"A2", 0.0}}},
                {"rows", rows},
                {"all_pass", all_pass}};
}

json kernel_mass_preset(int /*threads*/) {
    const double rho = 0.4;
    const int k_lo = 5, k_hi = 40;
    SieveTables tables = build_sieve(64);
    ThinSet set(tables, ThinSetSpec{SetSign::minus, canonical_pair(1.5),
                                    BoundaryPolicy::exact_boundary});
    IntPolynomial poly = monomial(2);

    json sources = json::object();
    for (KernelSource src : {KernelSource::M, KernelSource::H}) {
        json rows = json::array();
        std::vector<double> ks, masses;
        double fitted_c = 0.0;
        bool bookkeeping_ok = true;
        for (int k = k_lo; k <= k_hi; ++k) {
            KernelMassResult r = short_variation_kernel_mass(set, poly, rho, k, src, true);
            bookkeeping_ok = bookkeeping_ok && std::abs(r.mass - r.recomputed) <= 1e-12;
            ks.push_back(static_cast<double>(k));
            masses.push_back(r.mass);
            if (r.reference > 0.0) fitted_c = std::max(fitted_c, r.mass / r.reference);
            rows.push_back({{"k", k},
                            {"n_lo", r.n_lo},
                            {"n_hi", r.n_hi},
                            {"mass", r.mass},
                            {"recomputed", r.recomputed},
                            {"reference", r.reference},
                            {"new_members", r.new_members}});
        }
        int used = 0;
        double slope = loglog_slope(ks, masses, &used);
        sources[src == KernelSource::M ? "M" : "H"] =
            json{{"rows", rows},
                 {"slope", used >= 2 ? json(slope) : json()},
                 {"slope_points", used},
                 {"slope_lo", rho - 1.0 - 0.3},
                 {"slope_hi", rho - 1.0 + 0.3},
                 {"fitted_c", fitted_c},
                 {"bookkeeping_ok", bookkeeping_ok}};
    }
    return json{{"preset", "kernel-mass"},
                {"paper_anchor", "short_variation_kernel_bound"},
                {"rho", rho},
                {"k_lo", k_lo},
                {"k_hi", k_hi},
                {"d", 2},
                {"c", 1.5},
                {"sources", sources}};
}

json multiplier_decay_preset(int threads) {
    SieveTables tables = build_sieve(1000000);
    ThinSet set(tables, ThinSetSpec{SetSign::minus, canonical_pair(1.5),
                                    BoundaryPolicy::exact_boundary});
    std::vector<Rational> grid;
    for (int j = 0; j < 512; ++j) grid.push_back(Rational::make(j, 512));
    const std::int64_t Ns[3] = {10000, 100000, 1000000};

    json degrees = json::object();
    for (int d : {1, 2}) {
        IntPolynomial poly = monomial(d);
        json rows = json::array();
        double prev = 0.0;
        bool decreasing = true;
        for (int i = 0; i < 3; ++i) {
            Kernel km = build_kernel(set, poly, Ns[i], KernelSource::M);
            Kernel kp = build_kernel(set, poly, Ns[i], KernelSource::M_prime);
            MultiplierResult mm = multiplier(km, grid, threads);
            MultiplierResult mp = multiplier(kp, grid, threads);
            double sup = 0.0;
            for (std::size_t g = 0; g < grid.size(); ++g)
                sup = std::max(sup, std::abs(mm.values[g] - mp.values[g]));
            if (i > 0 && sup >= prev) decreasing = false;
            prev = sup;
            rows.push_back({{"N", Ns[i]},
                            {"sup_gap", sup},
                            {"members", km.member_count},
                            {"psi_mass", km.psi_mass},
                            {"theta_mass", km.theta_mass}});
        }
        degrees["d" + std::to_string(d)] = json{{"rows", rows}, {"strictly_decreasing", decreasing}};
    }
    return json{{"preset", "multiplier-decay"},
                {"paper_anchor", "weighted_multiplier_comparison"},
                {"grid_points", 512},
                {"c", 1.5},
                {"degrees", degrees}};
}

} // namespace primelab
