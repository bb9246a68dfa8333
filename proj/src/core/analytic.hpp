#pragma once

#include "scenario.hpp"

namespace qhet::analytic {

enum class PsdForm { exact, high_gain };

struct NoiseFigureResult {
  double snr_in = 0.0;
  double snr_out = 0.0;
  double nf_db = 0.0;
  enum class Method { analytic, oracle, monte_carlo } method = Method::analytic;
};

const char* method_name(NoiseFigureResult::Method m);

// Intrinsic SNR of the input light, c eps0 |alpha_s|^2 / (2 hbar omega_s B).
double snr_in(const Scenario& s);

// Differential photocurrent
//   J_-(t) = √2 c e eps0 eta eps_l |alpha_s|
//            [e^r cos(theta_l) cos(Ωt - Δθ) - e^-r sin(theta_l) sin(Ωt - Δθ)].
double beat_signal(double t, const Scenario& s);

// Time average of J_-^2 over integer beat periods:
//   (c e eps0 eta eps_l |alpha_s|)^2 (e^{2r} cos² theta_l + e^{-2r} sin² theta_l).
double output_power(const Scenario& s);

// F(ω) = sinh r (|ω_l+ω| + |ω_l-ω|) + 2 cos(2 theta_l) cosh r √(ω_l²-ω²).
// The square root is continued as 0 for |ω| > ω_l (DomainError in strict
// mode). Returns 0 identically at r = 0, where the whole excess term of the
// noise density vanishes.
double spectral_factor_f(double omega, const Scenario& s, bool strict = false);

// One-sided noise power density of the photocurrent (factor 2 folds the
// negative-frequency components):
//   exact:     2 eta c eps0 e² eps_l² [1 + eta hbar sinh r F(ω)]
//   high_gain: 2 eta c eps0 e² eps_l² [1 + eta hbar ω_l e^{2r} cos² theta_l]
double noise_psd(double omega, const Scenario& s, PsdForm form,
                 bool strict = false);

// χ at the beat frequency in the baseband limit |ω| << ω_l (folded form of
// F); this is what the noise-figure chain divides by.
double noise_psd_baseband(const Scenario& s);

// output_power / (χ(Ω) B) with the baseband χ.
double snr_out(const Scenario& s);

// 10 log10(SNR_in / SNR_out) for the amplified detection chain; requires
// alpha_s_mag > 0.
NoiseFigureResult noise_figure(const Scenario& s);

// Regular detector with quantum efficiency ξ in (0, 1]: 10 log10(1/ξ) dB.
double noise_figure_regular(double xi);

// Callable one-sided noise density for a fixed scenario.
struct PsdModel {
  Scenario scenario;
  PsdForm form = PsdForm::exact;
  bool one_sided = true;  // factor-2 negative-frequency folding applied
  bool strict = false;

  double evaluate(double omega) const {
    return noise_psd(omega, scenario, form, strict);
  }
  double operator()(double omega) const { return evaluate(omega); }
};

}  // namespace qhet::analytic
