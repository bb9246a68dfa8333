#pragma once

#include "analytic.hpp"
#include "gaussian.hpp"
#include "scenario.hpp"

namespace qhet::oracle {

// Scenario-level observables computed through the Gaussian engine instead of
// the closed forms; an independent route for cross-validation.

gaussian::BeatStatistics beat_statistics(const Scenario& s);

// Tone power of the fitted beat sinusoid pair, rescaled from engine units.
double output_power(const Scenario& s);

// One-sided noise density at the beat frequency, rebuilt from the engine's
// beat-quadrature variances on top of the shot floor.
double noise_psd_baseband(const Scenario& s);

analytic::NoiseFigureResult noise_figure(const Scenario& s);

}  // namespace qhet::oracle
