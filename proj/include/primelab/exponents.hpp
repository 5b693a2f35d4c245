#pragma once

// The linear inequality systems on (gamma1, gamma2, epsilon) that gate the
// exponent range, stored as exact coefficient tables per degree case.

#include <string>
#include <vector>

namespace primelab {

// base: the epsilon-free system defining the admissible exponent region;
// transfer: the epsilon system gating the log-weighted prime-set transfer;
// weighted: the epsilon system gating the weighted (average/Hilbert) transfer.
enum class ConditionTable { base, transfer, weighted };

struct Constraint {
    double g1;  // coefficient of (1 - gamma1)
    double g2;  // coefficient of (1 - gamma2)
    double eps; // coefficient of epsilon (0 in the epsilon-free system)
    double rhs; // strict upper bound
    std::string name;
};

// The constraint set for polynomial degree d under the given table.
std::vector<Constraint> exponent_constraints(int d, ConditionTable table);

struct AdmissibilityResult {
    bool admissible = false;
    // sup of epsilon > 0 keeping all inequalities strict; 0 when infeasible,
    // +infinity when the system carries no epsilon terms.
    double max_epsilon = 0.0;
    std::string binding_constraint;
    // Set when the two epsilon tables disagree on admissibility (the printed
    // d = 2 coefficients differ between them).
    bool table_conflict = false;
};

AdmissibilityResult check_exponent_conditions(int d, double gamma1, double gamma2,
                                              ConditionTable table);

} // namespace primelab
