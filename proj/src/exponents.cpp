#include "primelab/exponents.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace primelab {

std::vector<Constraint> exponent_constraints(int d, ConditionTable table) {
    if (d < 1) throw std::invalid_argument("exponent_constraints: d must be >= 1");
    std::vector<Constraint> cs;
    double e1 = 0.0, e2 = 0.0;
    switch (table) {
        case ConditionTable::base: e1 = e2 = 0.0; break;
        case ConditionTable::transfer:
            if (d == 1) { e1 = 84.0; e2 = 60.0; }
            else if (d == 2) { e1 = 360.0; e2 = 160.0; }
            else if (d <= 9) { e1 = 6.0; e2 = 4.0; }
            else { e1 = 6.0; }
            break;
        case ConditionTable::weighted:
            if (d == 1) { e1 = 164.0; e2 = 120.0; }
            else if (d == 2) { e1 = 720.0; e2 = 320.0; }
            else if (d <= 9) { e1 = 12.0; e2 = 8.0; }
            else { e1 = 12.0; }
            break;
    }
    if (d == 1) {
        cs.push_back({1.0, 15.0, e1, 1.0, "d1_first"});
        cs.push_back({3.0, 12.0, e2, 2.0, "d1_second"});
    } else if (d == 2) {
        // The first-constraint gamma2 coefficient is 62 in the base and
        // transfer systems and 52 as printed in the weighted system.
        double c62 = table == ConditionTable::weighted ? 52.0 : 62.0;
        cs.push_back({3.0, c62, e1, 3.0, "d2_first"});
        cs.push_back({4.0, 32.0, e2, 3.0, "d2_second"});
    } else if (d <= 9) {
        double pw = std::ldexp(1.0, d); // 2^d
        cs.push_back({1.0 / (3.0 * pw), 1.0 + 1.0 / (6.0 * (pw - 1.0)), e1, 1.0 / (3.0 * pw), "mid_first"});
        cs.push_back({0.0, 1.0, e2, 1.0 / (4.0 * pw), "mid_second"});
    } else {
        double dd1 = static_cast<double>(d) * (d + 1.0);
        cs.push_back({2.0 / (3.0 * dd1 * (d + 1.0)), 1.0 + 1.0 / (3.0 * dd1), e1,
                      2.0 / (3.0 * dd1 * (d + 1.0)), "high"});
    }
    return cs;
}

namespace {

AdmissibilityResult evaluate(int d, double g1, double g2, ConditionTable table) {
    AdmissibilityResult r;
    double u1 = 1.0 - g1;
    double u2 = 1.0 - g2;
    double best = std::numeric_limits<double>::infinity();
    std::string binding = "none";
    bool feasible = true;
    for (const auto& c : exponent_constraints(d, table)) {
        double slack = c.rhs - c.g1 * u1 - c.g2 * u2;
        if (slack <= 0.0) {
            feasible = false;
            binding = c.name;
            break;
        }
        if (c.eps > 0.0) {
            double cap = slack / c.eps;
            if (cap < best) {
                best = cap;
                binding = c.name;
            }
        }
    }
    r.admissible = feasible;
    r.max_epsilon = feasible ? best : 0.0;
    r.binding_constraint = binding;
    return r;
}

} // namespace

AdmissibilityResult check_exponent_conditions(int d, double gamma1, double gamma2,
                                              ConditionTable table) {
    if (!(gamma1 > 0.0 && gamma1 <= 1.0 && gamma2 > 0.0 && gamma2 <= 1.0))
        throw std::invalid_argument("check_exponent_conditions: gammas must lie in (0, 1]");
    AdmissibilityResult r = evaluate(d, gamma1, gamma2, table);
    if (d == 2) {
        bool a3 = evaluate(d, gamma1, gamma2, ConditionTable::transfer).admissible;
        bool a4 = evaluate(d, gamma1, gamma2, ConditionTable::weighted).admissible;
        r.table_conflict = a3 != a4;
    }
    return r;
}

} // namespace primelab
