// Command-line front end: number-theoretic tables, exponent admissibility,
// thin-set enumeration and counting, exponential sums, variation seminorms,
// Radon-type operators, and canned experiment presets.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>

#include "primelab/ergodic.hpp"
#include "primelab/exponents.hpp"
#include "primelab/expsum.hpp"
#include "primelab/model.hpp"
#include "primelab/presets.hpp"
#include "primelab/sieve.hpp"
#include "primelab/thinset.hpp"
#include "primelab/variation.hpp"

using nlohmann::json;
using namespace primelab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitInvariant = 4;

struct GlobalOpts {
    int threads = 1;
    std::string precision = "extended";
    std::uint64_t seed = 12345;
    std::string out_dir = ".";
};

struct PairOpts {
    double c1 = 1.5, A1 = 0.0, c2 = 1.5, A2 = 0.0;
    std::string sign = "minus";

    FunctionPair pair() const { return FunctionPair(ModelFunction(c1, A1), ModelFunction(c2, A2)); }
    ThinSetSpec spec(const GlobalOpts& g) const {
        ThinSetSpec s{sign == "plus" ? SetSign::plus : SetSign::minus, pair(),
                      g.precision == "standard" ? BoundaryPolicy::standard
                                                : BoundaryPolicy::exact_boundary};
        return s;
    }
    void attach(CLI::App* app) {
        app->add_option("--c1", c1, "power exponent of h1");
        app->add_option("--A1", A1, "log exponent of h1");
        app->add_option("--c2", c2, "power exponent of h2");
        app->add_option("--A2", A2, "log exponent of h2");
        app->add_option("--sign", sign, "plus|minus")->check(CLI::IsMember({"plus", "minus"}));
    }
};

std::vector<std::int64_t> parse_grid(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(static_cast<std::int64_t>(std::stod(item)));
    return out;
}

void emit(const GlobalOpts& g, const json& report, const std::string& file) {
    std::cout << report.dump(2) << "\n";
    if (!file.empty()) {
        std::string path = file;
        if (file.find('/') == std::string::npos) path = g.out_dir + "/" + file;
        std::ofstream out(path);
        out << report.dump(2) << "\n";
    }
}

json pair_json(const PairOpts& p) {
    return json{{"c1", p.c1}, {"A1", p.A1}, {"c2", p.c2}, {"A2", p.A2}, {"sign", p.sign}};
}

std::vector<std::complex<double>> read_sequence_csv(const std::string& path,
                                                    std::int64_t* base_out) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    std::vector<std::complex<double>> seq;
    std::int64_t expected = 0;
    bool first = true;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && line.find("index") != std::string::npos) continue; // header
        std::stringstream ss(line);
        std::string idx, re, im;
        std::getline(ss, idx, ',');
        std::getline(ss, re, ',');
        double imv = std::getline(ss, im, ',') ? std::stod(im) : 0.0;
        std::int64_t i = std::stoll(idx);
        if (first) {
            *base_out = i;
            expected = i;
            first = false;
        }
        if (i != expected)
            throw std::invalid_argument("sequence indices must be contiguous ascending");
        ++expected;
        seq.emplace_back(std::stod(re), imv);
    }
    if (seq.empty()) throw std::invalid_argument("empty sequence input");
    return seq;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational laboratory for thin prime sets, exponential sums, "
                 "variation seminorms and Radon-type operators"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--threads", g.threads, "worker thread count")->check(CLI::Range(1, 256));
    app.add_option("--precision", g.precision, "standard|extended")
        ->check(CLI::IsMember({"standard", "extended"}));
    app.add_option("--seed", g.seed, "seed for randomized suites");
    app.add_option("--out-dir", g.out_dir, "directory for output files");

    // ---- sieve ----
    auto* sieve_cmd = app.add_subcommand("sieve", "build prime/mobius/mangoldt tables");
    std::int64_t sv_limit = 1000000;
    std::string sv_out;
    std::int64_t sv_lo = 2, sv_hi = -1;
    sieve_cmd->add_option("--limit", sv_limit, "table limit")->required();
    sieve_cmd->add_option("--out", sv_out, "CSV dump path");
    sieve_cmd->add_option("--lo", sv_lo, "dump range start");
    sieve_cmd->add_option("--hi", sv_hi, "dump range end (default limit)");

    // ---- exponents ----
    auto* exp_cmd = app.add_subcommand("exponents", "exponent admissibility");
    auto* exp_check = exp_cmd->add_subcommand("check", "check a (d, gamma1, gamma2) triple");
    int ec_d = 1;
    double ec_c1 = 1.5, ec_c2 = 1.5;
    std::string ec_table = "transfer", ec_out;
    exp_check->add_option("--d", ec_d, "polynomial degree")->required();
    exp_check->add_option("--c1", ec_c1, "power exponent of h1 (gamma1 = 1/c1)");
    exp_check->add_option("--c2", ec_c2, "power exponent of h2 (gamma2 = 1/c2)");
    exp_check->add_option("--table", ec_table, "base|transfer|weighted")
        ->check(CLI::IsMember({"base", "transfer", "weighted"}));
    exp_check->add_option("--out", ec_out, "JSON output path");

    // ---- thinset ----
    auto* ts_cmd = app.add_subcommand("thinset", "thin prime set enumeration and counting");
    auto* ts_enum = ts_cmd->add_subcommand("enum", "enumerate members");
    auto* ts_count = ts_cmd->add_subcommand("count", "count vs window integral");
    PairOpts ts_pair;
    std::int64_t ts_limit = 1000000;
    std::string ts_out;
    bool ts_dual = false;
    for (auto* c : {ts_enum, ts_count}) {
        ts_pair.attach(c);
        c->add_option("--limit", ts_limit, "enumeration limit");
        c->add_option("--out", ts_out, "output path");
    }
    ts_enum->add_flag("--dual", ts_dual, "enumerate via floor(h(n)) instead");

    // ---- expsum ----
    auto* es_cmd = app.add_subcommand("expsum", "exponential sums over primes");
    auto* es_direct = es_cmd->add_subcommand("direct", "direct Lambda-weighted sum");
    auto* es_vaughan = es_cmd->add_subcommand("vaughan", "four-term decomposition");
    auto* es_tr = es_cmd->add_subcommand("transfer", "thin set vs psi-weighted primes (log weights)");
    auto* es_tw = es_cmd->add_subcommand("transfer-weighted", "weighted transfer comparison");
    PairOpts es_pair;
    std::string es_xi = "0", es_poly = "1", es_ngrid, es_out, es_weighting = "hilbert";
    std::int64_t es_m = 1, es_X = 1000, es_Xp = 0, es_u = 0, es_limit = 100000;
    int es_tau = 0;
    double es_eps = 0.05;
    for (auto* c : {es_direct, es_vaughan, es_tr, es_tw}) {
        es_pair.attach(c);
        c->add_option("--xi", es_xi, "rational frequency A/Q or 0");
        c->add_option("--poly", es_poly, "polynomial coefficients c1,c2,...,cd");
        c->add_option("--out", es_out, "output path");
    }
    for (auto* c : {es_direct, es_vaughan}) {
        c->add_option("--m", es_m, "analytic frequency");
        c->add_option("--tau", es_tau, "0 or 1: subtract psi in the phase");
        c->add_option("--range", es_X, "dyadic range start X (X' = 2X unless --xp)")->required();
        c->add_option("--xp", es_Xp, "range end X'");
        c->add_option("--eps", es_eps, "epsilon in bound expressions");
    }
    es_vaughan->add_option("--u", es_u, "Vaughan cut (default floor(X^(1/3)))");
    for (auto* c : {es_tr, es_tw}) {
        c->add_option("--limit", es_limit, "truncation N");
        c->add_option("--ngrid", es_ngrid, "comma list of truncations (sweep mode)");
    }
    es_tw->add_option("--weighting", es_weighting, "hilbert|average")
        ->check(CLI::IsMember({"hilbert", "average"}));

    // ---- variation ----
    auto* var_cmd = app.add_subcommand("variation", "r-variational seminorms");
    double var_r = 3.0, var_rho = 0.4;
    std::string var_input, var_mode = "both", var_out;
    var_cmd->add_option("--r", var_r, "variation exponent")->required();
    var_cmd->add_option("--rho", var_rho, "Z_rho exponent");
    var_cmd->add_option("--input", var_input, "CSV: index,value_re[,value_im]")->required();
    var_cmd->add_option("--mode", var_mode, "exact|split|both")
        ->check(CLI::IsMember({"exact", "split", "both"}));
    var_cmd->add_option("--out", var_out, "JSON output path");

    // ---- ergodic ----
    auto* erg_cmd = app.add_subcommand("ergodic", "Radon-type operators on Z");
    auto* erg_avg = erg_cmd->add_subcommand("avg", "averaging operator experiment");
    auto* erg_hil = erg_cmd->add_subcommand("hilbert", "Hilbert transform experiment");
    auto* erg_mass = erg_cmd->add_subcommand("mass", "short-variation kernel mass per block");
    auto* erg_mult = erg_cmd->add_subcommand("multiplier", "kernel multiplier on a rational grid");
    PairOpts erg_pair;
    std::string erg_poly = "1", erg_f = "delta", erg_ngrid = "1000,10000,100000", erg_out;
    std::string erg_source = "M";
    double erg_r = 3.0, erg_rho = 0.4, erg_s = 2.0;
    int erg_klo = 5, erg_khi = 40, erg_q = 512;
    std::int64_t erg_N = 100000;
    bool erg_crosscheck = false;
    for (auto* c : {erg_avg, erg_hil, erg_mass, erg_mult}) {
        erg_pair.attach(c);
        c->add_option("--poly", erg_poly, "polynomial coefficients c1,...,cd");
        c->add_option("--out", erg_out, "output path");
    }
    for (auto* c : {erg_avg, erg_hil}) {
        c->add_option("--r", erg_r, "variation exponent");
        c->add_option("--rho", erg_rho, "Z_rho exponent");
        c->add_option("--s", erg_s, "l^s norm exponent");
        c->add_option("--f", erg_f, "delta or CSV path");
        c->add_option("--ngrid", erg_ngrid, "comma list of truncations");
    }
    erg_mass->add_option("--rho", erg_rho, "Z_rho exponent");
    erg_mass->add_option("--klo", erg_klo, "first block index");
    erg_mass->add_option("--khi", erg_khi, "last block index");
    erg_mass->add_option("--source", erg_source, "M|H")->check(CLI::IsMember({"M", "H"}));
    erg_mass->add_flag("--crosscheck", erg_crosscheck, "rebuild kernels per step as a check");
    erg_mult->add_option("--source", erg_source, "A|M|M_prime|H|H_prime")
        ->check(CLI::IsMember({"A", "M", "M_prime", "H", "H_prime"}));
    erg_mult->add_option("--limit", erg_N, "truncation N");
    erg_mult->add_option("--grid-q", erg_q, "grid denominator (points j/q)");

    // ---- preset ----
    auto* preset_cmd = app.add_subcommand("preset", "canned experiment runs");
    auto* preset_run = preset_cmd->add_subcommand("run", "run a named preset");
    std::string preset_name;
    preset_run->add_option("name", preset_name, "vaughan-exactness|kernel-mass|multiplier-decay")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*sieve_cmd) {
            SieveTables tables = build_sieve(sv_limit);
            if (!sv_out.empty()) {
                std::string path = sv_out.find('/') == std::string::npos ? g.out_dir + "/" + sv_out
                                                                         : sv_out;
                std::ofstream out(path);
                tables.dump_csv(out, sv_lo, sv_hi < 0 ? sv_limit : sv_hi);
            }
            std::int64_t primes = 0;
            for (std::int64_t n = 2; n <= sv_limit; ++n)
                if (tables.is_prime(n)) ++primes;
            emit(g,
                 json{{"paper_anchor", "prime_tables"},
                      {"limit", sv_limit},
                      {"prime_count", primes},
                      {"theta", tables.theta(sv_limit)},
                      {"mertens", mertens_sum(tables, sv_limit)}},
                 "");
        } else if (*exp_check) {
            ConditionTable table = ec_table == "base"       ? ConditionTable::base
                                   : ec_table == "transfer" ? ConditionTable::transfer
                                                            : ConditionTable::weighted;
            AdmissibilityResult r =
                check_exponent_conditions(ec_d, 1.0 / ec_c1, 1.0 / ec_c2, table);
            json rep{{"paper_anchor", "exponent_conditions"},
                     {"d", ec_d},
                     {"gamma1", 1.0 / ec_c1},
                     {"gamma2", 1.0 / ec_c2},
                     {"table", ec_table},
                     {"admissible", r.admissible},
                     {"max_epsilon", std::isinf(r.max_epsilon) ? json("inf") : json(r.max_epsilon)},
                     {"binding_constraint", r.binding_constraint},
                     {"table_conflict", r.table_conflict}};
            emit(g, rep, ec_out);
        } else if (*ts_enum || *ts_count) {
            SieveTables tables = build_sieve(ts_limit);
            ThinSet set(tables, ts_pair.spec(g));
            if (*ts_enum) {
                MembershipDiagnostics diag;
                std::vector<std::int64_t> members =
                    ts_dual ? set.enumerate_dual(ts_limit, &diag) : set.enumerate(ts_limit, &diag);
                if (!ts_out.empty()) {
                    std::string path = ts_out.find('/') == std::string::npos
                                           ? g.out_dir + "/" + ts_out
                                           : ts_out;
                    std::ofstream out(path);
                    out << "p\n";
                    for (std::int64_t p : members) out << p << "\n";
                }
                emit(g,
                     json{{"paper_anchor", "thin_set_membership"},
                          {"pair", pair_json(ts_pair)},
                          {"limit", ts_limit},
                          {"dual", ts_dual},
                          {"count", static_cast<std::int64_t>(members.size())},
                          {"boundary_cases", diag.boundary_cases},
                          {"deep_boundary_cases", diag.deep_boundary_cases},
                          {"exact_ties", diag.exact_ties}},
                     "");
            } else {
                CountResult r = set.count_vs_integral(ts_limit);
                emit(g,
                     json{{"paper_anchor", "thin_set_counting"},
                          {"pair", pair_json(ts_pair)},
                          {"limit", ts_limit},
                          {"count", r.count},
                          {"integral", r.integral},
                          {"ratio", r.degenerate ? json() : json(r.ratio)},
                          {"degenerate", r.degenerate},
                          {"boundary_cases", r.boundary_cases},
                          {"exact_ties", r.exact_ties}},
                     ts_out);
            }
        } else if (*es_direct || *es_vaughan) {
            if (es_Xp == 0) es_Xp = 2 * es_X;
            SieveTables tables = build_sieve(es_Xp);
            PhaseSpec spec(Rational::parse(es_xi), es_m, es_tau, IntPolynomial::parse(es_poly),
                           es_pair.pair());
            if (*es_direct) {
                SumResult r = mangoldt_sum_direct(spec, tables, es_X, es_Xp);
                json rep{{"paper_anchor", "prime_phase_sum"},
                         {"pair", pair_json(es_pair)},
                         {"X", es_X},
                         {"Xp", es_Xp},
                         {"value_re", r.value.real()},
                         {"value_im", r.value.imag()},
                         {"abs", r.abs()},
                         {"terms", r.terms}};
                if (es_m != 0) {
                    MangoldtBound b = mangoldt_sum_bound(spec.poly.degree(), es_m,
                                                         static_cast<double>(es_X), spec.pair,
                                                         es_eps);
                    rep["bound"] = b.value;
                    rep["bound_terms"] = {b.terms[0], b.terms[1], b.terms[2]};
                    rep["u_selection"] = vaughan_u_selection(spec.poly.degree(), es_m,
                                                             static_cast<double>(es_X), spec.pair);
                }
                emit(g, rep, es_out);
            } else {
                if (es_u == 0) {
                    es_u = static_cast<std::int64_t>(std::cbrt(static_cast<double>(es_X)));
                    while ((es_u + 1) * (es_u + 1) * (es_u + 1) <= es_X) ++es_u;
                    while (es_u * es_u * es_u > es_X) --es_u;
                }
                VaughanDecomposition dec = vaughan_decompose(spec, tables, es_X, es_Xp, es_u);
                emit(g,
                     json{{"paper_anchor", "vaughan_identity"},
                          {"pair", pair_json(es_pair)},
                          {"X", es_X},
                          {"Xp", es_Xp},
                          {"u", es_u},
                          {"sigma1_re", dec.sigma1.value.real()},
                          {"sigma1_im", dec.sigma1.value.imag()},
                          {"sigma21_re", dec.sigma21.value.real()},
                          {"sigma21_im", dec.sigma21.value.imag()},
                          {"sigma22_re", dec.sigma22.value.real()},
                          {"sigma22_im", dec.sigma22.value.imag()},
                          {"sigma3_re", dec.sigma3.value.real()},
                          {"sigma3_im", dec.sigma3.value.imag()},
                          {"recombined_re", dec.recombined.value.real()},
                          {"recombined_im", dec.recombined.value.imag()},
                          {"direct_re", dec.direct.value.real()},
                          {"direct_im", dec.direct.value.imag()},
                          {"residual", dec.residual},
                          {"theta_mass", dec.theta_mass},
                          {"u_selected_bound", dec.u_selected_bound}},
                     es_out);
            }
        } else if (*es_tr || *es_tw) {
            std::vector<std::int64_t> grid =
                es_ngrid.empty() ? std::vector<std::int64_t>{es_limit} : parse_grid(es_ngrid);
            std::int64_t top = *std::max_element(grid.begin(), grid.end());
            SieveTables tables = build_sieve(top);
            ThinSet set(tables, es_pair.spec(g));
            Rational xi = Rational::parse(es_xi);
            IntPolynomial poly = IntPolynomial::parse(es_poly);
            json rows = json::array();
            std::ostringstream csv;
            csv << "N,lhs_re,lhs_im,rhs_re,rhs_im,err,scaled\n";
            for (std::int64_t N : grid) {
                TransferResult r =
                    *es_tr ? transfer_error_log(set, tables, xi, poly, N)
                           : transfer_error_weighted(set, tables, xi, poly, N,
                                                 es_weighting == "hilbert"
                                                     ? TransferWeighting::hilbert
                                                     : TransferWeighting::average);
                rows.push_back({{"N", N},
                                {"lhs_re", r.lhs.real()},
                                {"lhs_im", r.lhs.imag()},
                                {"rhs_re", r.rhs.real()},
                                {"rhs_im", r.rhs.imag()},
                                {"err", r.err},
                                {"scaled", r.scaled},
                                {"admissible_warning", r.admissible_warning}});
                csv << N << "," << r.lhs.real() << "," << r.lhs.imag() << "," << r.rhs.real()
                    << "," << r.rhs.imag() << "," << r.err << "," << r.scaled << "\n";
            }
            if (!es_out.empty()) {
                std::string path =
                    es_out.find('/') == std::string::npos ? g.out_dir + "/" + es_out : es_out;
                std::ofstream out(path);
                out << csv.str();
            }
            emit(g,
                 json{{"paper_anchor", *es_tr ? "transfer_to_weighted_primes" : "weighted_transfer"},
                      {"pair", pair_json(es_pair)},
                      {"xi", es_xi},
                      {"weighting", *es_tr ? "log" : es_weighting},
                      {"rows", rows}},
                 "");
        } else if (*var_cmd) {
            std::int64_t base = 0;
            std::vector<std::complex<double>> seq = read_sequence_csv(var_input, &base);
            json rep{{"paper_anchor", "variation_seminorm"},
                     {"r", var_r},
                     {"length", static_cast<std::int64_t>(seq.size())},
                     {"base", base}};
            if (var_mode != "split") {
                VariationResult r = vr_exact(seq, var_r);
                rep["value"] = r.value;
                rep["subsequence"] = r.subsequence;
            }
            if (var_mode != "exact") {
                SplitResult sp = vr_split(seq, base, var_r, var_rho);
                rep["rho"] = var_rho;
                rep["long"] = sp.long_part;
                rep["short"] = sp.short_part;
                rep["blocks"] = sp.blocks;
            }
            emit(g, rep, var_out);
        } else if (*erg_avg || *erg_hil) {
            std::vector<std::int64_t> grid = parse_grid(erg_ngrid);
            std::int64_t top = *std::max_element(grid.begin(), grid.end());
            SieveTables tables = build_sieve(top);
            ThinSet set(tables, erg_pair.spec(g));
            SignalOnZ f;
            if (erg_f == "delta") {
                f = SignalOnZ::delta();
            } else {
                std::int64_t base = 0;
                std::vector<std::complex<double>> seq = read_sequence_csv(erg_f, &base);
                std::vector<std::pair<std::int64_t, std::complex<double>>> raw;
                for (std::size_t i = 0; i < seq.size(); ++i)
                    raw.emplace_back(base + static_cast<std::int64_t>(i), seq[i]);
                f = SignalOnZ::from_pairs(std::move(raw));
            }
            VariationExperimentReport rep = variation_experiment(
                set, IntPolynomial::parse(erg_poly), *erg_avg ? KernelSource::A : KernelSource::H,
                f, erg_r, erg_rho, erg_s, grid, g.threads);
            json rows = json::array();
            std::ostringstream csv;
            csv << "n_max,stages,ratio,ratio_long,ratio_short\n";
            for (const auto& row : rep.rows) {
                rows.push_back({{"n_max", row.n_max},
                                {"stages", row.stages},
                                {"ratio", row.ratio},
                                {"ratio_long", row.ratio_long},
                                {"ratio_short", row.ratio_short}});
                csv << row.n_max << "," << row.stages << "," << row.ratio << "," << row.ratio_long
                    << "," << row.ratio_short << "\n";
            }
            if (!erg_out.empty()) {
                std::string path =
                    erg_out.find('/') == std::string::npos ? g.out_dir + "/" + erg_out : erg_out;
                std::ofstream out(path);
                out << csv.str();
            }
            emit(g,
                 json{{"paper_anchor", "variation_boundedness_proxy"},
                      {"pair", pair_json(erg_pair)},
                      {"operator", *erg_avg ? "avg" : "hilbert"},
                      {"r", erg_r},
                      {"rho", erg_rho},
                      {"s", erg_s},
                      {"r_regime_warning", rep.r_regime_warning},
                      {"rows", rows}},
                 "");
        } else if (*erg_mass) {
            std::int64_t top = std::max<std::int64_t>(zrho_point(erg_rho, erg_khi), 64);
            SieveTables tables = build_sieve(top);
            ThinSet set(tables, erg_pair.spec(g));
            IntPolynomial poly = IntPolynomial::parse(erg_poly);
            KernelSource src = erg_source == "M" ? KernelSource::M : KernelSource::H;
            json rows = json::array();
            bool bookkeeping_ok = true;
            for (int k = erg_klo; k <= erg_khi; ++k) {
                KernelMassResult r =
                    short_variation_kernel_mass(set, poly, erg_rho, k, src, erg_crosscheck);
                if (erg_crosscheck && std::abs(r.mass - r.recomputed) > 1e-12) {
                    bookkeeping_ok = false;
                }
                rows.push_back({{"k", k},
                                {"n_lo", r.n_lo},
                                {"n_hi", r.n_hi},
                                {"mass", r.mass},
                                {"reference", r.reference},
                                {"new_members", r.new_members}});
            }
            if (erg_crosscheck && !bookkeeping_ok) {
                std::cerr << "invariant violation: incremental mass != recomputed mass\n";
                return kExitInvariant;
            }
            emit(g,
                 json{{"paper_anchor", "short_variation_kernel_bound"},
                      {"pair", pair_json(erg_pair)},
                      {"source", erg_source},
                      {"rho", erg_rho},
                      {"rows", rows}},
                 erg_out);
        } else if (*erg_mult) {
            SieveTables tables = build_sieve(erg_N);
            ThinSet set(tables, erg_pair.spec(g));
            KernelSource src = erg_source == "A"         ? KernelSource::A
                               : erg_source == "M"       ? KernelSource::M
                               : erg_source == "M_prime" ? KernelSource::M_prime
                               : erg_source == "H"       ? KernelSource::H
                                                         : KernelSource::H_prime;
            Kernel kernel = build_kernel(set, IntPolynomial::parse(erg_poly), erg_N, src);
            std::vector<Rational> grid;
            for (int j = 0; j < erg_q; ++j) grid.push_back(Rational::make(j, erg_q));
            MultiplierResult r = multiplier(kernel, grid, g.threads);
            json vals = json::array();
            for (std::size_t i = 0; i < grid.size(); ++i)
                vals.push_back({{"xi", std::to_string(grid[i].a) + "/" + std::to_string(grid[i].q)},
                                {"re", r.values[i].real()},
                                {"im", r.values[i].imag()}});
            emit(g,
                 json{{"paper_anchor", "kernel_multiplier"},
                      {"pair", pair_json(erg_pair)},
                      {"source", erg_source},
                      {"N", erg_N},
                      {"l1_norm", kernel.l1_norm},
                      {"sup_abs", r.sup_abs},
                      {"values", vals}},
                 erg_out);
        } else if (*preset_run) {
            json rep;
            if (preset_name == "vaughan-exactness")
                rep = vaughan_exactness_preset(g.threads);
            else if (preset_name == "kernel-mass")
                rep = kernel_mass_preset(g.threads);
            else if (preset_name == "multiplier-decay")
                rep = multiplier_decay_preset(g.threads);
            else
                throw std::invalid_argument("unknown preset: " + preset_name);
            emit(g, rep, preset_name + ".json");
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "numeric-domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::out_of_range& e) {
        std::cerr << "numeric-domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::overflow_error& e) {
        std::cerr << "numeric-domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}
