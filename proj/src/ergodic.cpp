#include "primelab/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <numbers>
#include <thread>
#include <stdexcept>

#include "primelab/kahan.hpp"
#include "primelab/variation.hpp"

namespace primelab {

namespace {

double member_log_weight(const ThinSet& set, std::int64_t p) {
    double x = static_cast<double>(p);
    return std::log(x) / set.spec().pair.psi_dd(x).value();
}

} // namespace

Kernel build_kernel(const ThinSet& set, const IntPolynomial& poly, std::int64_t N,
                    KernelSource source) {
    Kernel k;
    k.source = source;
    k.N = N;
    k.theta_mass = set.tables().theta(N);

    bool thin = source == KernelSource::A || source == KernelSource::M ||
                source == KernelSource::H;
    std::vector<std::int64_t> support =
        thin ? set.enumerate(N) : set.tables().primes_in(2, N);
    k.member_count = static_cast<std::int64_t>(support.size());

    if (thin) {
        KahanSum psi_mass;
        for (std::int64_t p : support) psi_mass.add(member_log_weight(set, p));
        k.psi_mass = psi_mass.value();
    }

    if (support.empty() &&
        (source == KernelSource::A || source == KernelSource::M || source == KernelSource::M_prime))
        throw std::runtime_error("build_kernel: empty set under a normalized source");

    switch (source) {
    case KernelSource::A:
        for (std::int64_t p : support)
            k.weights[poly.eval(p)] += 1.0 / static_cast<double>(support.size());
        break;
    case KernelSource::M:
        for (std::int64_t p : support)
            k.weights[poly.eval(p)] += member_log_weight(set, p) / k.psi_mass;
        break;
    case KernelSource::M_prime:
        for (std::int64_t p : support)
            k.weights[poly.eval(p)] += std::log(static_cast<double>(p)) / k.theta_mass;
        break;
    case KernelSource::H:
        for (std::int64_t p : support) {
            double w = member_log_weight(set, p) / static_cast<double>(p);
            k.weights[poly.eval(p)] += w;
            k.weights[poly.eval(-p)] -= w;
        }
        break;
    case KernelSource::H_prime:
        for (std::int64_t p : support) {
            double w = std::log(static_cast<double>(p)) / static_cast<double>(p);
            k.weights[poly.eval(p)] += w;
            k.weights[poly.eval(-p)] -= w;
        }
        break;
    }

    KahanSum l1;
    for (const auto& [o, w] : k.weights) l1.add(std::abs(w));
    k.l1_norm = l1.value();
    return k;
}

SignalOnZ SignalOnZ::delta(std::int64_t at) {
    SignalOnZ f;
    f.entries.emplace_back(at, std::complex<double>(1.0, 0.0));
    return f;
}

SignalOnZ SignalOnZ::from_pairs(std::vector<std::pair<std::int64_t, std::complex<double>>> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SignalOnZ f;
    for (const auto& [i, v] : raw) {
        if (!f.entries.empty() && f.entries.back().first == i)
            f.entries.back().second += v;
        else
            f.entries.emplace_back(i, v);
    }
    return f;
}

double SignalOnZ::norm(double s) const {
    if (s < 1.0) throw std::invalid_argument("SignalOnZ::norm: s must be >= 1");
    KahanSum acc;
    for (const auto& [i, v] : entries) acc.add(std::pow(std::abs(v), s));
    return std::pow(acc.value(), 1.0 / s);
}

SignalOnZ apply(const Kernel& kernel, const SignalOnZ& f) {
    std::map<std::int64_t, std::complex<double>> out;
    for (const auto& [o, w] : kernel.weights)
        for (const auto& [i, v] : f.entries) out[i + o] += w * v;
    SignalOnZ g;
    g.entries.assign(out.begin(), out.end());
    return g;
}

MultiplierResult multiplier(const Kernel& kernel, const std::vector<Rational>& grid,
                            int threads) {
    MultiplierResult out;
    out.values.assign(grid.size(), {0.0, 0.0});
    // Flat copy: the map walk dominates otherwise.
    std::vector<std::pair<std::int64_t, double>> flat(kernel.weights.begin(),
                                                      kernel.weights.end());
    auto eval_point = [&](std::size_t i) {
        const Rational& xi = grid[i];
        KahanComplex acc;
        for (const auto& [o, w] : flat) {
            std::int64_t orm = o % xi.q;
            if (orm < 0) orm += xi.q;
            std::int64_t num = static_cast<std::int64_t>(
                static_cast<__int128>(xi.a) * orm % xi.q);
            double angle = 2.0 * std::numbers::pi * static_cast<double>(num) /
                           static_cast<double>(xi.q);
            acc.add(w * std::cos(angle), w * std::sin(angle));
        }
        out.values[i] = acc.value();
    };
    if (threads <= 1 || grid.size() < 2) {
        for (std::size_t i = 0; i < grid.size(); ++i) eval_point(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        int n = std::min<int>(threads, static_cast<int>(grid.size()));
        for (int t = 0; t < n; ++t)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < grid.size();) eval_point(i);
            });
        for (auto& th : pool) th.join();
    }
    for (const auto& v : out.values) out.sup_abs = std::max(out.sup_abs, std::abs(v));
    return out;
}

namespace {

// Signed sparse weight update; erases offsets that return exactly to zero.
void add_weight(std::map<std::int64_t, double>& w, std::int64_t o, double v) {
    double& slot = w[o];
    slot += v;
    if (slot == 0.0) w.erase(o);
}

double l1_diff(const std::map<std::int64_t, double>& a, const std::map<std::int64_t, double>& b) {
    KahanSum acc;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first))
            acc.add(std::abs((ia++)->second));
        else if (ia == a.end() || ib->first < ia->first)
            acc.add(std::abs((ib++)->second));
        else {
            acc.add(std::abs(ia->second - ib->second));
            ++ia;
            ++ib;
        }
    }
    return acc.value();
}

std::map<std::int64_t, double> normalized_snapshot(const std::map<std::int64_t, double>& raw,
                                                   double norm) {
    std::map<std::int64_t, double> out;
    if (norm == 0.0) return out;
    for (const auto& [o, w] : raw) out[o] = w / norm;
    return out;
}

} // namespace

KernelMassResult short_variation_kernel_mass(const ThinSet& set, const IntPolynomial& poly,
                                             double rho, int k, KernelSource source,
                                             bool crosscheck) {
    if (source != KernelSource::M && source != KernelSource::H)
        throw std::invalid_argument("short_variation_kernel_mass: source must be M or H");
    if (k < 1) throw std::invalid_argument("short_variation_kernel_mass: k must be >= 1");
    KernelMassResult res;
    res.n_lo = zrho_point(rho, k - 1);
    res.n_hi = zrho_point(rho, k);
    res.reference = std::pow(static_cast<double>(k), rho - 1.0);
    res.crosschecked = crosscheck;
    if (res.n_hi > set.tables().limit())
        throw std::out_of_range("short_variation_kernel_mass: N_k above sieve limit");
    if (res.n_hi <= res.n_lo) return res;

    // State of the unnormalized kernel at truncation n, advanced one step at a
    // time; the empty set corresponds to the zero kernel.
    std::map<std::int64_t, double> raw;
    double psi_mass = 0.0;
    for (std::int64_t p : set.enumerate(res.n_lo)) {
        double w = member_log_weight(set, p);
        psi_mass += w;
        if (source == KernelSource::M) {
            add_weight(raw, poly.eval(p), w);
        } else {
            double h = w / static_cast<double>(p);
            add_weight(raw, poly.eval(p), h);
            add_weight(raw, poly.eval(-p), -h);
        }
    }

    KahanSum mass, recomputed;
    for (std::int64_t n = res.n_lo; n < res.n_hi; ++n) {
        std::int64_t q = n + 1;
        bool enters = set.tables().is_prime(q) && set.is_member(q);
        double step = 0.0;
        if (enters) {
            ++res.new_members;
            double w = member_log_weight(set, q);
            if (source == KernelSource::M) {
                double psi_new = psi_mass + w;
                std::int64_t o = poly.eval(q);
                auto it = raw.find(o);
                double old_at_o = it == raw.end() ? 0.0 : it->second;
                // All untouched offsets rescale by 1/psi_new; the entering
                // offset changes weight and scale at once.
                if (psi_mass > 0.0)
                    step = (psi_mass - old_at_o) * (1.0 / psi_mass - 1.0 / psi_new);
                step += std::abs((old_at_o + w) / psi_new -
                                 (psi_mass > 0.0 ? old_at_o / psi_mass : 0.0));
                add_weight(raw, o, w);
                psi_mass = psi_new;
            } else {
                double h = w / static_cast<double>(q);
                std::int64_t op = poly.eval(q), om = poly.eval(-q);
                if (op == om) {
                    step = 0.0; // the two signed contributions cancel
                } else {
                    step = 2.0 * h;
                }
                add_weight(raw, op, h);
                add_weight(raw, om, -h);
            }
        }
        mass.add(step);
        if (crosscheck) {
            auto before = set.enumerate(n);
            auto after = set.enumerate(q);
            std::map<std::int64_t, double> kb, ka;
            double pb = 0.0, pa = 0.0;
            for (std::int64_t p : before) {
                double w = member_log_weight(set, p);
                pb += w;
                if (source == KernelSource::M) {
                    add_weight(kb, poly.eval(p), w);
                } else {
                    add_weight(kb, poly.eval(p), w / static_cast<double>(p));
                    add_weight(kb, poly.eval(-p), -w / static_cast<double>(p));
                }
            }
            for (std::int64_t p : after) {
                double w = member_log_weight(set, p);
                pa += w;
                if (source == KernelSource::M) {
                    add_weight(ka, poly.eval(p), w);
                } else {
                    add_weight(ka, poly.eval(p), w / static_cast<double>(p));
                    add_weight(ka, poly.eval(-p), -w / static_cast<double>(p));
                }
            }
            if (source == KernelSource::M)
                recomputed.add(l1_diff(normalized_snapshot(kb, pb), normalized_snapshot(ka, pa)));
            else
                recomputed.add(l1_diff(kb, ka));
        }
    }
    res.mass = mass.value();
    res.recomputed = recomputed.value();
    return res;
}

VariationExperimentReport variation_experiment(const ThinSet& set, const IntPolynomial& poly,
                                               KernelSource source, const SignalOnZ& f, double r,
                                               double rho, double s,
                                               const std::vector<std::int64_t>& n_grid,
                                               int threads) {
    if (source != KernelSource::A && source != KernelSource::M && source != KernelSource::H)
        throw std::invalid_argument("variation_experiment: source must be A, M or H");
    VariationExperimentReport rep;
    rep.r_regime_warning = r <= 2.0;
    if (n_grid.empty()) return rep;
    std::int64_t n_top = *std::max_element(n_grid.begin(), n_grid.end());

    std::vector<std::int64_t> members = set.enumerate(n_top);
    double fnorm = f.norm(s);

    for (std::int64_t n_max : n_grid) {
        auto end = std::upper_bound(members.begin(), members.end(), n_max);
        std::size_t J = static_cast<std::size_t>(end - members.begin());
        VariationExperimentRow row;
        row.n_max = n_max;
        row.stages = static_cast<std::int64_t>(J);
        row.f_norm = fnorm;
        if (J == 0 || fnorm == 0.0) {
            rep.rows.push_back(row);
            continue;
        }

        // Stage-j normalizers and per-x jump lists: (op_N f)(x) changes only
        // when a member enters (and, for normalized sources, through the
        // normalizer at every entry).
        std::vector<double> norm_at(J);
        {
            KahanSum psi;
            for (std::size_t j = 0; j < J; ++j) {
                if (source == KernelSource::A) {
                    norm_at[j] = static_cast<double>(j + 1);
                } else if (source == KernelSource::M) {
                    psi.add(member_log_weight(set, members[j]));
                    norm_at[j] = psi.value();
                } else {
                    norm_at[j] = 1.0;
                }
            }
        }
        std::map<std::int64_t, std::vector<std::pair<std::size_t, std::complex<double>>>> jumps;
        for (std::size_t j = 0; j < J; ++j) {
            std::int64_t p = members[j];
            double w = source == KernelSource::A ? 1.0 : member_log_weight(set, p);
            if (source == KernelSource::H) w /= static_cast<double>(p);
            for (const auto& [i, v] : f.entries) {
                jumps[i + poly.eval(p)].emplace_back(j, w * v);
                if (source == KernelSource::H) jumps[i + poly.eval(-p)].emplace_back(j, -w * v);
            }
        }

        // Z_rho boundaries mapped to stage positions (1-based, deduplicated).
        std::vector<std::size_t> zstages;
        for (std::int64_t b : zrho_indices(rho, 1, n_max)) {
            auto it = std::upper_bound(members.begin(), end, b);
            std::size_t sb = static_cast<std::size_t>(it - members.begin());
            if (sb >= 1 && (zstages.empty() || zstages.back() != sb)) zstages.push_back(sb);
        }

        // Blocks cut at the stage boundaries; leading and trailing pieces
        // belong to the first and last block.
        std::vector<std::size_t> cuts;
        cuts.push_back(0);
        for (std::size_t sb : zstages)
            if (sb - 1 > cuts.back()) cuts.push_back(sb - 1);
        cuts.push_back(J);

        std::vector<const std::vector<std::pair<std::size_t, std::complex<double>>>*> sites;
        sites.reserve(jumps.size());
        for (const auto& [x, jl] : jumps) sites.push_back(&jl);

        // Per-x results land in slots indexed by x-order; the reduction below
        // is therefore identical for any thread count.
        std::vector<double> v_pow(sites.size()), l_pow(sites.size()), s_pow(sites.size());
        auto eval_site = [&](std::size_t idx) {
            const auto& jl = *sites[idx];
            std::vector<std::complex<double>> vals(J);
            std::complex<double> run(0.0, 0.0);
            std::size_t cursor = 0;
            for (std::size_t j = 0; j < J; ++j) {
                while (cursor < jl.size() && jl[cursor].first == j) run += jl[cursor++].second;
                vals[j] = run / norm_at[j];
            }
            v_pow[idx] = std::pow(vr_exact(vals, r).value, s);

            if (zstages.size() >= 2) {
                std::vector<std::complex<double>> sub;
                for (std::size_t sb : zstages) sub.push_back(vals[sb - 1]);
                l_pow[idx] = std::pow(vr_exact(sub, r).value, s);
            }
            double spow = 0.0;
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                std::vector<std::complex<double>> block(
                    vals.begin() + static_cast<std::ptrdiff_t>(cuts[i]),
                    vals.begin() + static_cast<std::ptrdiff_t>(cuts[i + 1]));
                if (block.empty()) continue;
                spow += std::pow(vr_exact(block, r).value, r);
            }
            s_pow[idx] = std::pow(std::pow(spow, 1.0 / r), s);
        };
        if (threads <= 1 || sites.size() < 2) {
            for (std::size_t i = 0; i < sites.size(); ++i) eval_site(i);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            int n = std::min<int>(threads, static_cast<int>(sites.size()));
            for (int t = 0; t < n; ++t)
                pool.emplace_back([&] {
                    for (std::size_t i; (i = next.fetch_add(1)) < sites.size();) eval_site(i);
                });
            for (auto& th : pool) th.join();
        }
        KahanSum vr_pow, long_pow, short_pow;
        for (std::size_t i = 0; i < sites.size(); ++i) {
            vr_pow.add(v_pow[i]);
            long_pow.add(l_pow[i]);
            short_pow.add(s_pow[i]);
        }
        row.ratio = std::pow(vr_pow.value(), 1.0 / s) / fnorm;
        row.ratio_long = std::pow(long_pow.value(), 1.0 / s) / fnorm;
        row.ratio_short = std::pow(short_pow.value(), 1.0 / s) / fnorm;
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace primelab
