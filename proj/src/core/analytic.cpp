#include "analytic.hpp"

#include <cmath>

#include "errors.hpp"
#include "textutil.hpp"

namespace qhet::analytic {

const char* method_name(NoiseFigureResult::Method m) {
  switch (m) {
    case NoiseFigureResult::Method::analytic: return "analytic";
    case NoiseFigureResult::Method::oracle: return "oracle";
    case NoiseFigureResult::Method::monte_carlo: return "monte-carlo";
  }
  return "?";
}

double snr_in(const Scenario& s) {
  const auto& k = s.constants;
  return k.c * k.epsilon0 * s.alpha_s_mag * s.alpha_s_mag /
         (2.0 * k.hbar * s.omega_s * s.bandwidth_B);
}

double beat_signal(double t, const Scenario& s) {
  const auto& k = s.constants;
  const DerivedParams d = derive(s);
  const double amp = std::sqrt(2.0) * k.c * k.e_charge * k.epsilon0 * d.eta *
                     s.epsilon_l * s.alpha_s_mag;
  const double phase = d.omega * t - s.delta_theta;
  return amp * (std::exp(s.r) * std::cos(s.theta_l) * std::cos(phase) -
                std::exp(-s.r) * std::sin(s.theta_l) * std::sin(phase));
}

double output_power(const Scenario& s) {
  const auto& k = s.constants;
  const DerivedParams d = derive(s);
  const double base =
      k.c * k.e_charge * k.epsilon0 * d.eta * s.epsilon_l * s.alpha_s_mag;
  const double cl = std::cos(s.theta_l), sl = std::sin(s.theta_l);
  return base * base *
         (std::exp(2.0 * s.r) * cl * cl + std::exp(-2.0 * s.r) * sl * sl);
}

double spectral_factor_f(double omega, const Scenario& s, bool strict) {
  if (std::abs(omega) > s.omega_l) {
    if (strict)
      throw DomainError("spectral_factor_f: |omega| = " +
                        fmt_g17(std::abs(omega)) + " exceeds omega_l = " +
                        fmt_g17(s.omega_l));
  }
  if (s.r == 0.0) return 0.0;
  const double sh = std::sinh(s.r), ch = std::cosh(s.r);
  const double root2 = s.omega_l * s.omega_l - omega * omega;
  const double root = root2 > 0.0 ? std::sqrt(root2) : 0.0;
  return sh * (std::abs(s.omega_l + omega) + std::abs(s.omega_l - omega)) +
         2.0 * std::cos(2.0 * s.theta_l) * ch * root;
}

double noise_psd(double omega, const Scenario& s, PsdForm form, bool strict) {
  const auto& k = s.constants;
  const DerivedParams d = derive(s);
  double excess;
  if (form == PsdForm::exact) {
    excess = d.eta * k.hbar * std::sinh(s.r) * spectral_factor_f(omega, s, strict);
  } else {
    const double cl = std::cos(s.theta_l);
    excess = d.eta * k.hbar * s.omega_l * d.gain_g * cl * cl;
  }
  return 2.0 * d.shot_level * (1.0 + excess);
}

double noise_psd_baseband(const Scenario& s) {
  const auto& k = s.constants;
  const DerivedParams d = derive(s);
  const double sh = std::sinh(s.r), ch = std::cosh(s.r);
  const double excess = 2.0 * d.eta * k.hbar * s.omega_l *
                        (sh * sh + sh * ch * std::cos(2.0 * s.theta_l));
  return 2.0 * d.shot_level * (1.0 + excess);
}

double snr_out(const Scenario& s) {
  return output_power(s) / (noise_psd_baseband(s) * s.bandwidth_B);
}

NoiseFigureResult noise_figure(const Scenario& s) {
  if (s.alpha_s_mag <= 0.0)
    throw DomainError("noise_figure: alpha_s_mag must be > 0 (SNR undefined "
                      "without a signal)");
  NoiseFigureResult res;
  res.snr_in = snr_in(s);
  res.snr_out = snr_out(s);
  res.nf_db = 10.0 * std::log10(res.snr_in / res.snr_out);
  res.method = NoiseFigureResult::Method::analytic;
  return res;
}

double noise_figure_regular(double xi) {
  if (!(xi > 0.0) || xi > 1.0)
    throw DomainError("noise_figure_regular: xi must lie in (0, 1], got " +
                      fmt_g17(xi));
  return 10.0 * std::log10(1.0 / xi);
}

}  // namespace qhet::analytic
