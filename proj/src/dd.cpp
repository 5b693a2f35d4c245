#include "primelab/dd.hpp"

#include <limits>
#include <stdexcept>

namespace primelab {

namespace {
// ln(2) to double-double precision.
const dd k_ln2(6.931471805599452862e-01, 2.319046813846299558e-17);
} // namespace

dd dd_exp(dd a) {
    if (a.hi > 709.0) return dd(std::numeric_limits<double>::infinity());
    if (a.hi < -709.0) return dd(0.0);
    // a = m*ln2 + r, |r| <= ln2/2; exp(r) by Taylor in dd.
    double m = std::round(a.hi / k_ln2.hi);
    dd r = a - k_ln2 * m;
    dd sum(1.0);
    dd term(1.0);
    for (int i = 1; i <= 24; ++i) {
        term = term * r / static_cast<double>(i);
        sum = sum + term;
        if (std::abs(term.hi) < 1e-35 * std::abs(sum.hi)) break;
    }
    return sum * std::ldexp(1.0, static_cast<int>(m));
}

dd dd_log(dd a) {
    if (a.hi <= 0.0) throw std::domain_error("dd_log: non-positive argument");
    // Newton refinement of the double log: x1 = x0 + a*exp(-x0) - 1.
    dd x(std::log(a.hi));
    for (int i = 0; i < 2; ++i) {
        x = x + a * dd_exp(-x) - 1.0;
    }
    return x;
}

dd dd_pow(dd a, dd b) {
    if (a.hi == 0.0) return dd(b.hi == 0.0 ? 1.0 : 0.0);
    return dd_exp(b * dd_log(a));
}

} // namespace primelab
