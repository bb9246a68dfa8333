#include <doctest.h>

#include <cmath>

#include "analytic.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "presets.hpp"
#include "scenario.hpp"
#include "textutil.hpp"

using namespace qhet;

namespace {

// Scenario with omega_s exactly 1 so eta = q in scaled units.
Scenario unit_signal(double q, double r, double theta_l = 0.0,
                     double alpha = 1.0) {
  ConfigMap keys;
  keys["omega_l"] = "0.9999995";
  keys["omega_s"] = "1.0";
  keys["alpha_s_mag"] = fmt_g17(alpha);
  keys["theta_s"] = "0";
  keys["epsilon_l"] = "1";
  keys["theta_l"] = fmt_g17(theta_l);
  keys["r"] = fmt_g17(r);
  keys["q"] = fmt_g17(q);
  keys["bandwidth_B"] = "1";
  return scenario_from_keys(keys);
}

}  // namespace

TEST_CASE("snr_in evaluates the intrinsic input SNR") {
  Scenario s = unit_signal(1.0, 0.0, 0.0, 2.0);
  CHECK(analytic::snr_in(s) == doctest::Approx(2.0).epsilon(1e-14));

  s.alpha_s_mag = 0.0;
  CHECK(analytic::snr_in(s) == 0.0);

  Scenario wide = unit_signal(1.0, 0.0, 0.0, 2.0);
  wide.bandwidth_B = 2.0;
  CHECK(analytic::snr_in(wide) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("beat signal amplitude follows the amplified quadrature") {
  // q = 1, omega_s = 1 so eta = 1; r = ln 2, theta_l = 0 -> amplitude 2 sqrt 2
  Scenario s = unit_signal(1.0, std::log(2.0), 0.0);
  CHECK(analytic::beat_signal(0.0, s) ==
        doctest::Approx(2.8284271247461903).epsilon(1e-12));

  // theta_l = pi/2: deamplified quadrature, amplitude sqrt(2)/2
  Scenario sq = unit_signal(1.0, std::log(2.0), M_PI / 2);
  const DerivedParams d = derive(sq);
  const double t_peak = 1.5 * M_PI / d.omega;  // sin(Omega t) = -1
  CHECK(analytic::beat_signal(t_peak, sq) ==
        doctest::Approx(0.7071067811865476).epsilon(1e-9));

  // r = 0: plain heterodyne, amplitude sqrt 2 independent of theta_l
  for (double theta_l : {0.0, 0.7, 2.0}) {
    Scenario s0 = unit_signal(1.0, 0.0, theta_l);
    const DerivedParams d0 = derive(s0);
    double peak = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const double t = i * (2.0 * M_PI / d0.omega) / 2000.0;
      peak = std::max(peak, std::abs(analytic::beat_signal(t, s0)));
    }
    CHECK(peak == doctest::Approx(std::sqrt(2.0)).epsilon(1e-5));
  }
}

TEST_CASE("output power matches the amplified-quadrature time average") {
  CHECK(analytic::output_power(unit_signal(1.0, std::log(2.0), 0.0)) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK(analytic::output_power(unit_signal(1.0, std::log(2.0), M_PI / 2)) ==
        doctest::Approx(0.25).epsilon(1e-12));
  // r = 0: unity gain regardless of the LO or signal phase
  for (double theta_l : {0.0, 1.0, 2.5}) {
    Scenario s = unit_signal(1.0, 0.0, theta_l);
    s.theta_s = 0.9;
    s.delta_theta = -0.9;
    CHECK(analytic::output_power(s) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("quadrature gain ratio is e^{4r}") {
  for (double r : {0.0, 0.5, 2.0, 5.0}) {
    const double ratio =
        analytic::output_power(presets::near_degenerate(1.0, r, 0.0)) /
        analytic::output_power(presets::near_degenerate(1.0, r, M_PI / 2));
    CHECK(ratio == doctest::Approx(std::exp(4.0 * r)).epsilon(1e-12));
  }
}

TEST_CASE("spectral factor F at the worked point") {
  Scenario s = presets::f_example();
  // hand evaluation with sinh r = 1, cosh r = sqrt 2:
  // F = 110 + 90 + 2 sqrt(2) sqrt(9900)
  const double f_hand = 200.0 + 2.0 * std::sqrt(2.0) * std::sqrt(9900.0);
  const double f = analytic::spectral_factor_f(10.0, s);
  CHECK(f == doctest::Approx(f_hand).epsilon(1e-12));
  CHECK(f == doctest::Approx(481.42494111).epsilon(1e-9));
}

TEST_CASE("spectral factor F edge cases") {
  Scenario s = presets::f_example();

  // r = 0: the excess term vanishes identically
  Scenario s0 = s;
  s0.r = 0.0;
  for (double w : {0.0, 10.0, 60.0, 99.0})
    CHECK(analytic::spectral_factor_f(w, s0) == 0.0);

  // omega = 0, theta_l = pi/4: the cross term is killed by cos(2 theta_l)
  Scenario s45 = s;
  s45.theta_l = M_PI / 4;
  CHECK(analytic::spectral_factor_f(0.0, s45) ==
        doctest::Approx(2.0 * s.omega_l * std::sinh(s.r)).epsilon(1e-12));

  // parity within the band
  for (double w : {1.0, 10.0, 77.0})
    CHECK(analytic::spectral_factor_f(w, s) ==
          doctest::Approx(analytic::spectral_factor_f(-w, s)).epsilon(1e-14));

  // beyond the band: square root continued as zero, strict mode errors
  CHECK(analytic::spectral_factor_f(200.0, s) ==
        doctest::Approx(std::sinh(s.r) * (300.0 + 100.0)).epsilon(1e-12));
  CHECK_THROWS_AS(analytic::spectral_factor_f(200.0, s, true), DomainError);
}

TEST_CASE("noise psd in its exact and high-gain forms") {
  // r = 0 leaves the one-sided shot floor: 2 eta c eps0 e^2 eps_l^2
  CHECK(analytic::noise_psd(0.0, unit_signal(1.0, 0.0),
                            analytic::PsdForm::exact) ==
        doctest::Approx(2.0).epsilon(1e-12));

  // high-gain form at e^{2r} = 4, theta_l = 0, omega_l = 1
  Scenario shg = presets::near_degenerate(1.0, std::log(2.0), 0.0);
  CHECK(analytic::noise_psd(0.0, shg, analytic::PsdForm::high_gain) ==
        doctest::Approx(10.0).epsilon(1e-9));

  // squeezed quadrature: only shot remains in the high-gain form
  Scenario ssq = presets::near_degenerate(1.0, std::log(2.0), M_PI / 2);
  CHECK(analytic::noise_psd(0.0, ssq, analytic::PsdForm::high_gain) ==
        doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("noise psd floor and parity") {
  Scenario s = presets::f_example();
  const double shot = 2.0 * derive(s).shot_level;
  for (double w : {0.0, 5.0, 20.0, 90.0}) {
    const double chi = analytic::noise_psd(w, s, analytic::PsdForm::exact);
    CHECK(chi >= shot * (1.0 - 1e-12));
    CHECK(chi == doctest::Approx(analytic::noise_psd(-w, s,
                                                     analytic::PsdForm::exact))
                     .epsilon(1e-12));
  }
}

TEST_CASE("high-gain form converges to the exact form") {
  for (double r : {6.0, 7.0, 9.0}) {
    Scenario s = presets::near_degenerate(1.0, r, 0.0);
    for (double w : {0.0, 1e-10}) {
      const double exact = analytic::noise_psd(w, s, analytic::PsdForm::exact);
      const double hg = analytic::noise_psd(w, s, analytic::PsdForm::high_gain);
      CHECK(std::abs(exact - hg) / exact <= 10.0 * std::exp(-2.0 * r));
    }
  }
}

TEST_CASE("snr_out closed forms") {
  // q = 1, theta_l = 0: noiseless relative to the input for any gain
  for (double r : {0.0, 0.5, 1.0, 2.5, 5.0}) {
    Scenario s = presets::near_degenerate(1.0, r);
    CHECK(analytic::snr_out(s) ==
          doctest::Approx(analytic::snr_in(s)).epsilon(1e-12));
  }
  // q = 0.5, r = 0: half the input SNR
  Scenario s = presets::near_degenerate(0.5, 0.0);
  CHECK(analytic::snr_out(s) ==
        doctest::Approx(0.5 * analytic::snr_in(s)).epsilon(1e-12));
  // no signal, no output SNR
  Scenario s0 = presets::near_degenerate(1.0, 1.0, 0.0, 0.0);
  CHECK(analytic::snr_out(s0) == 0.0);
}

TEST_CASE("noise figure closed forms and limits") {
  // q = 1: 0 dB at every gain
  for (double r : {0.0, 0.5, 1.0, 2.5, 5.0})
    CHECK(std::abs(analytic::noise_figure(presets::near_degenerate(1.0, r))
                       .nf_db) <= 1e-12);

  // q = 0.5, r = 0: 10 log10 2
  CHECK(analytic::noise_figure(presets::near_degenerate(0.5, 0.0)).nf_db ==
        doctest::Approx(3.0102999566398120).epsilon(1e-12));

  // q = 0.5 at 45 dB gain: the finite-gain formula's residual
  const double r45 = 4.5 * std::log(10.0) / 2.0;
  const double g45 = std::exp(2.0 * r45);
  const double expected =
      10.0 * std::log10((1.0 + 0.5 * (g45 - 1.0)) / (0.5 * g45));
  const double nf45 =
      analytic::noise_figure(presets::near_degenerate(0.5, r45)).nf_db;
  CHECK(nf45 == doctest::Approx(expected).epsilon(1e-9));
  CHECK(std::abs(nf45 - 0.00014) < 1e-5);

  // result invariant: nf_db ties snr_in and snr_out together
  auto res = analytic::noise_figure(presets::near_degenerate(0.37, 1.7, 0.2));
  CHECK(res.nf_db ==
        doctest::Approx(10.0 * std::log10(res.snr_in / res.snr_out))
            .epsilon(1e-12));

  Scenario s0 = presets::near_degenerate(1.0, 1.0, 0.0, 0.0);
  CHECK_THROWS_AS(analytic::noise_figure(s0), DomainError);
}

TEST_CASE("noise figure is invariant under the signal phase") {
  Scenario base = presets::near_degenerate(0.6, 1.1, 0.5);
  const double nf0 = analytic::noise_figure(base).nf_db;
  for (double theta_s : {0.4, 1.9, 3.0}) {
    Scenario s = base;
    s.theta_s = theta_s;
    s.delta_theta = -theta_s;
    CHECK(analytic::noise_figure(s).nf_db == nf0);
  }
}

TEST_CASE("regular-detector noise figure") {
  CHECK(analytic::noise_figure_regular(1.0) == 0.0);
  CHECK(analytic::noise_figure_regular(0.25) ==
        doctest::Approx(6.0205999132796240).epsilon(1e-12));
  CHECK(analytic::noise_figure_regular(0.5) ==
        doctest::Approx(3.0102999566398120).epsilon(1e-12));
  CHECK_THROWS_AS(analytic::noise_figure_regular(0.0), DomainError);
  CHECK_THROWS_AS(analytic::noise_figure_regular(1.5), DomainError);
  CHECK_THROWS_AS(analytic::noise_figure_regular(-0.1), DomainError);
}

TEST_CASE("PsdModel evaluates through the scenario") {
  analytic::PsdModel psd{presets::f_example(), analytic::PsdForm::exact, true,
                         false};
  CHECK(psd(10.0) ==
        doctest::Approx(analytic::noise_psd(10.0, psd.scenario,
                                            analytic::PsdForm::exact)));
  CHECK(psd.one_sided);
}

TEST_CASE("oracle beat means match the analytic beat coefficients") {
  for (double r : {0.0, 0.5, 1.0, 2.0})
    for (double theta_l : {0.0, 0.9}) {
      Scenario s = presets::near_degenerate(1.0, r, theta_l);
      const auto b = oracle::beat_statistics(s);
      const auto& k = s.constants;
      const double unit = k.c * k.e_charge * k.epsilon0 * derive(s).eta *
                          s.epsilon_l;
      // J(t) = sqrt2 * unit * alpha [e^r cos(theta_l) cos(...) - ...]
      const double amp_cos = std::sqrt(2.0) * unit * s.alpha_s_mag *
                             std::exp(r) * std::cos(theta_l);
      const double amp_sin = -std::sqrt(2.0) * unit * s.alpha_s_mag *
                             std::exp(-r) * std::sin(theta_l);
      CHECK(std::abs(unit * b.cos_mean - amp_cos) <= 1e-10);
      CHECK(std::abs(unit * b.sin_mean - amp_sin) <= 1e-10);
    }
}

TEST_CASE("oracle noise figure and output power equal the analytic route") {
  for (double r : {0.0, 0.5, 1.0, 2.5})
    for (double q : {0.25, 0.5, 1.0})
      for (double theta_l : {0.0, M_PI / 6}) {
        Scenario s = presets::near_degenerate(q, r, theta_l);
        CHECK(std::abs(oracle::noise_figure(s).nf_db -
                       analytic::noise_figure(s).nf_db) <= 1e-9);
        CHECK(oracle::output_power(s) ==
              doctest::Approx(analytic::output_power(s)).epsilon(1e-9));
        CHECK(oracle::noise_psd_baseband(s) ==
              doctest::Approx(analytic::noise_psd_baseband(s)).epsilon(1e-9));
      }
}
