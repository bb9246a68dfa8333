#pragma once

#include "scenario.hpp"

namespace qhet::presets {

// Canonical text of the built-in default configuration (the same scenario is
// shipped as configs/default.cfg). The signal sits 2e-14 (relative) above
// the LO frequency: strictly omega_s > omega_i as required, while the
// omega_l/omega_s frequency mismatch stays far below every stated tolerance.
const char* default_config_text();

Scenario default_scenario();

// Near-degenerate scenario with free efficiency/squeeze/LO phase; the
// closed-form noise-figure results hold to ~1e-13 dB here.
Scenario near_degenerate(double q, double r, double theta_l = 0.0,
                         double alpha = 1.0);

// Simulation-friendly point: omega_l = 1e4, beat at Omega = 2*pi (one cycle
// per unit time), strong signal so the demodulated tone dominates its own
// estimation noise.
Scenario monte_carlo(double q, double r, double theta_l = 0.0,
                     double alpha = 500.0);

// The worked noise-density point: omega_l = 100, sinh r = 1, theta_l = 0.
Scenario f_example();

}  // namespace qhet::presets
