#pragma once

// Canned experiment runs shared by the CLI `preset` command and the acceptance
// suite.  Each builder returns the full JSON report; reports are identical for
// any thread count.

#include <json.hpp>

namespace primelab {

// Four-term identity residual over 20 fixed phase configurations.
nlohmann::json vaughan_exactness_preset(int threads);

// Per-block l1 mass of kernel increments over Z_rho blocks, with power-law fit.
nlohmann::json kernel_mass_preset(int threads);

// sup over a 512-point rational grid of the gap between the thin-set weighted
// multiplier and the full-prime weighted multiplier, across truncations.
nlohmann::json multiplier_decay_preset(int threads);

} // namespace primelab
