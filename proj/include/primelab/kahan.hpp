#pragma once

// Compensated (Kahan) accumulators.  All floating reductions in the project go
// through these, in a fixed ascending order, so serial and threaded runs agree.

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

namespace primelab {

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

struct KahanComplex {
    KahanSum re;
    KahanSum im;

    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    void add(double r, double i) {
        re.add(r);
        im.add(i);
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

// Deterministic blocked reduction over [lo, hi).  The range is cut into fixed
// blocks of `block` indices; each block is reduced serially in ascending order
// and block results are combined in block order.  The result is therefore
// independent of the thread count.
template <typename Block, typename Combine>
void blocked_reduce(std::int64_t lo, std::int64_t hi, std::int64_t block, int threads,
                    Block&& per_block, Combine&& combine) {
    if (hi <= lo) return;
    std::int64_t nblocks = (hi - lo + block - 1) / block;
    using Result = decltype(per_block(lo, hi));
    std::vector<Result> results(static_cast<std::size_t>(nblocks));
    auto run = [&](std::int64_t b) {
        std::int64_t s = lo + b * block;
        std::int64_t e = std::min(hi, s + block);
        results[static_cast<std::size_t>(b)] = per_block(s, e);
    };
    if (threads <= 1 || nblocks == 1) {
        for (std::int64_t b = 0; b < nblocks; ++b) run(b);
    } else {
        std::atomic<std::int64_t> counter(0);
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    std::int64_t b = counter.fetch_add(1);
                    if (b >= nblocks) return;
                    run(b);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    for (std::int64_t b = 0; b < nblocks; ++b) combine(results[static_cast<std::size_t>(b)]);
}

} // namespace primelab
