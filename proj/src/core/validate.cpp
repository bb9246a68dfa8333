#include "validate.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "analytic.hpp"
#include "errors.hpp"
#include "gaussian.hpp"
#include "oracle.hpp"
#include "presets.hpp"
#include "rng.hpp"
#include "spectral.hpp"
#include "synth.hpp"
#include "textutil.hpp"

namespace qhet::validate {

namespace {

using gaussian::GaussianState;

struct Runner {
  std::vector<Check> checks;

  void run(const std::string& name, const std::function<std::string()>& body) {
    Check c;
    c.name = name;
    try {
      c.detail = body();  // empty or throws on failure
      c.pass = true;
      if (c.detail.empty()) c.detail = "ok";
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = e.what();
    }
    checks.push_back(std::move(c));
  }
};

void expect(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

void expect_close(double got, double want, double tol, const std::string& what) {
  const double err = std::abs(got - want);
  if (!(err <= tol))
    throw std::runtime_error(what + ": got " + fmt_g17(got) + ", want " +
                             fmt_g17(want) + " (err " + fmt_g17(err) + " > " +
                             fmt_g17(tol) + ")");
}

void expect_rel(double got, double want, double tol, const std::string& what) {
  expect_close(got, want, tol * std::max(1.0, std::abs(want)), what);
}

double rms_rel_error(const spectral::PsdEstimate& est,
                     const analytic::PsdModel& target, double fmax) {
  double acc = 0.0;
  int count = 0;
  for (size_t k = 1; k < est.freqs.size(); ++k) {
    if (est.freqs[k] > fmax) break;
    const double want = target.evaluate(2.0 * M_PI * est.freqs[k]);
    const double rel = est.values[k] / want - 1.0;
    acc += rel * rel;
    ++count;
  }
  if (count == 0) throw std::runtime_error("no bins below fmax");
  return std::sqrt(acc / count);
}

double variance(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(v.size());
}

// ---- engine checks ---------------------------------------------------------

std::string check_symplectic() {
  for (double r : {0.0, 0.1, 1.0, 5.0}) {
    auto t = gaussian::two_mode_squeeze_transform(2, r, 0, 1);
    expect(t.is_symplectic(1e-12), "S J S^T != J at r = " + fmt_g17(r));
  }
  return "r in {0, 0.1, 1, 5}";
}

std::string check_uncertainty(uint64_t seed) {
  rng::CounterRng gen(seed, 101);
  for (int trial = 0; trial < 20; ++trial) {
    GaussianState s = gaussian::vacuum_state(2);
    for (int step = 0; step < 6; ++step) {
      const uint64_t pick = gen.next_u64() % 3;
      if (pick == 0)
        s = gaussian::displace(s, static_cast<int>(gen.next_u64() % 2),
                               3.0 * gen.uniform(), 2.0 * M_PI * gen.uniform());
      else if (pick == 1)
        s = gaussian::two_mode_squeeze(s, 2.0 * gen.uniform(), 0, 1);
      else
        s = gaussian::loss_channel(s, static_cast<int>(gen.next_u64() % 2),
                                   0.1 + 0.9 * gen.uniform());
      const double lam = gaussian::min_uncertainty_eigenvalue(s);
      expect(lam >= -1e-10, "uncertainty violated: min eig " + fmt_g17(lam));
    }
  }
  return "20 random op sequences";
}

std::string check_purity(uint64_t seed) {
  rng::CounterRng gen(seed, 102);
  for (int trial = 0; trial < 20; ++trial) {
    GaussianState s = gaussian::vacuum_state(2);
    for (int step = 0; step < 5; ++step) {
      if (gen.next_u64() % 2 == 0)
        s = gaussian::displace(s, static_cast<int>(gen.next_u64() % 2),
                               2.0 * gen.uniform(), 2.0 * M_PI * gen.uniform());
      else
        s = gaussian::two_mode_squeeze(s, 1.5 * gen.uniform(), 0, 1);
    }
    const double det = (2.0 * s.cov).determinant();
    expect_close(det, 1.0, 1e-9, "det(2 cov) after unitaries");
  }
  return "20 unitary sequences";
}

std::string check_moments_closed_form() {
  for (double r : {0.0, 0.3, 1.0, 2.0, 3.5, 5.0}) {
    GaussianState s = gaussian::two_mode_squeeze(gaussian::vacuum_state(2), r, 0, 1);
    auto m = gaussian::mode_moments(s, 0, 1);
    const double sh = std::sinh(r), ch = std::cosh(r);
    expect_rel(m.n_sig, sh * sh, 1e-12, "n_sig vs sinh^2 r");
    expect_rel(m.n_img, sh * sh, 1e-12, "n_img vs sinh^2 r");
    expect_rel(m.m_cross.real(), -sh * ch, 1e-12, "Re m_cross vs -sinh r cosh r");
    expect_close(m.m_cross.imag(), 0.0, 1e-12 * std::max(1.0, sh * ch),
                 "Im m_cross");
    expect_close(std::abs(m.m_self_sig), 0.0, 1e-12 * std::max(1.0, sh * ch),
                 "m_self_sig");
  }
  return "r up to 5";
}

std::string check_loss_composition() {
  GaussianState s = gaussian::two_mode_squeeze(
      gaussian::displace(gaussian::vacuum_state(2), 0, 1.3, 0.4), 0.9, 0, 1);
  const double q1 = 0.7, q2 = 0.45;
  GaussianState a = gaussian::loss_channel(gaussian::loss_channel(s, 0, q1), 0, q2);
  GaussianState b = gaussian::loss_channel(s, 0, q1 * q2);
  expect((a.mean - b.mean).cwiseAbs().maxCoeff() <= 1e-12, "mean composition");
  expect((a.cov - b.cov).cwiseAbs().maxCoeff() <= 1e-12, "cov composition");
  return "q1 = 0.7, q2 = 0.45";
}

std::string check_beat_doubling() {
  Scenario sc = presets::near_degenerate(1.0, 0.0);
  auto state = gaussian::prepare_scenario_state(sc);
  auto b = gaussian::heterodyne_beat_statistics(state, sc);
  expect_close(b.cos_var, 1.0, 1e-12, "beat cos var (signal + image vacuum)");
  expect_close(b.sin_var, 1.0, 1e-12, "beat sin var (signal + image vacuum)");
  return "0.5 + 0.5 vacuum units";
}

std::string check_beat_means_eq13() {
  for (double r : {0.0, 0.5, 1.0, 2.0})
    for (double theta_l : {0.0, 0.4, M_PI / 2, 2.1})
      for (double theta_s : {0.0, 1.1}) {
        Scenario sc = presets::near_degenerate(1.0, r, theta_l);
        sc.theta_s = theta_s;
        sc.delta_theta = -theta_s;
        auto b = gaussian::heterodyne_beat_statistics(
            gaussian::prepare_scenario_state(sc), sc);
        const double root2a = std::sqrt(2.0) * sc.alpha_s_mag;
        expect_close(b.cos_mean, root2a * std::exp(r) * std::cos(theta_l),
                     1e-10, "beat cos mean vs e^r cos theta_l");
        expect_close(b.sin_mean, -root2a * std::exp(-r) * std::sin(theta_l),
                     1e-10, "beat sin mean vs -e^-r sin theta_l");
      }
  return "r x theta_l x theta_s grid";
}

// ---- analytic checks -------------------------------------------------------

std::string check_gain_ratio() {
  for (double r : {0.0, 0.5, 2.0, 5.0}) {
    Scenario a = presets::near_degenerate(1.0, r, 0.0);
    Scenario b = presets::near_degenerate(1.0, r, M_PI / 2);
    const double ratio = analytic::output_power(a) / analytic::output_power(b);
    expect_rel(ratio, std::exp(4.0 * r), 1e-12, "P(0)/P(pi/2) vs e^{4r}");
  }
  return "r up to 5";
}

std::string check_theta_s_invariance() {
  Scenario base = presets::near_degenerate(0.7, 1.3, 0.6);
  const double p0 = analytic::output_power(base);
  const double nf0 = analytic::noise_figure(base).nf_db;
  for (double theta_s : {0.3, 1.0, 2.9}) {
    Scenario s = base;
    s.theta_s = theta_s;
    s.delta_theta = -theta_s;
    expect(analytic::output_power(s) == p0, "output_power shifts with theta_s");
    expect(analytic::noise_figure(s).nf_db == nf0,
           "noise_figure shifts with theta_s");
  }
  return "exact invariance";
}

std::string check_psd_floor_parity() {
  Scenario s = presets::f_example();
  const double shot = 2.0 * derive(s).shot_level;
  for (double w : {0.0, 1.0, 10.0, 50.0, 99.0}) {
    const double chi_p = analytic::noise_psd(w, s, analytic::PsdForm::exact);
    const double chi_m = analytic::noise_psd(-w, s, analytic::PsdForm::exact);
    expect_rel(chi_p, chi_m, 1e-12, "chi parity");
    expect(chi_p >= shot * (1.0 - 1e-12),
           "chi below shot at theta_l = 0, omega = " + fmt_g17(w));
  }
  return "floor and parity on the worked scenario";
}

std::string check_high_gain_consistency() {
  for (double r : {6.0, 7.0, 8.0}) {
    Scenario s = presets::near_degenerate(1.0, r, 0.0);
    for (double w : {0.0, 1e-9, 1e-7}) {
      const double exact = analytic::noise_psd(w, s, analytic::PsdForm::exact);
      const double hg = analytic::noise_psd(w, s, analytic::PsdForm::high_gain);
      expect(std::abs(exact - hg) / exact <= 10.0 * std::exp(-2.0 * r),
             "high-gain form deviates at r = " + fmt_g17(r));
    }
  }
  return "r in {6, 7, 8}";
}

std::string check_nf_limits() {
  for (double q : {0.25, 0.5, 1.0}) {
    Scenario s0 = presets::near_degenerate(q, 0.0);
    expect_close(analytic::noise_figure(s0).nf_db, 10.0 * std::log10(1.0 / q),
                 1e-9, "NF(r=0) vs 10 log10(1/q)");
    Scenario shg = presets::near_degenerate(q, 12.0);
    expect_close(analytic::noise_figure(shg).nf_db, 0.0, 1e-6,
                 "NF(high gain) vs 0 dB");
    double prev = analytic::noise_figure(s0).nf_db;
    for (double r : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
      const double nf = analytic::noise_figure(presets::near_degenerate(q, r)).nf_db;
      expect(nf <= prev + 1e-12, "NF not monotone in r at q = " + fmt_g17(q));
      prev = nf;
    }
  }
  for (double r : {0.0, 1.0}) {
    double prev = analytic::noise_figure(presets::near_degenerate(0.1, r)).nf_db;
    for (double q : {0.3, 0.6, 1.0}) {
      const double nf = analytic::noise_figure(presets::near_degenerate(q, r)).nf_db;
      expect(nf <= prev + 1e-12, "NF not monotone in q at r = " + fmt_g17(r));
      prev = nf;
    }
  }
  return "limits and monotonicity";
}

// ---- oracle vs analytic ----------------------------------------------------

std::string check_oracle_nf() {
  for (double r : {0.0, 0.5, 1.0, 2.5})
    for (double q : {0.25, 0.5, 1.0})
      for (double theta_l : {0.0, M_PI / 6}) {
        Scenario s = presets::near_degenerate(q, r, theta_l);
        const double a = analytic::noise_figure(s).nf_db;
        const double o = oracle::noise_figure(s).nf_db;
        expect_close(o, a, 1e-9, "oracle NF vs analytic");
      }
  return "r x q x theta_l grid";
}

std::string check_oracle_pout() {
  for (double r : {0.0, 1.0, 2.5})
    for (double theta_l : {0.0, 0.7, M_PI / 2})
      for (double q : {0.5, 1.0}) {
        Scenario s = presets::near_degenerate(q, r, theta_l);
        expect_rel(oracle::output_power(s), analytic::output_power(s), 1e-9,
                   "oracle P_out vs analytic");
      }
  return "r x theta_l x q grid";
}

// ---- synthesis and spectral ------------------------------------------------

std::string check_determinism(uint64_t seed) {
  Scenario s = presets::monte_carlo(1.0, 1.0);
  auto a = synth::synthesize_photocurrent(s, 64.0, 64.0, seed);
  auto b = synth::synthesize_photocurrent(s, 64.0, 64.0, seed);
  expect(a.samples == b.samples, "same seed gave different samples");
  auto c = synth::synthesize_photocurrent(s, 64.0, 64.0, seed + 1);
  expect(a.samples != c.samples, "different seeds gave identical samples");
  return "bit-identical reproduction";
}

std::string check_white_variance(uint64_t seed) {
  const size_t n = 1 << 18;
  auto ts = synth::synthesize_colored_noise([](double) { return 2.0; }, 1.0, n,
                                            seed, "");
  const double var = variance(ts.samples);
  const double sigma = std::sqrt(2.0 / static_cast<double>(n));
  expect_close(var, 1.0, 5.0 * sigma, "white-noise variance vs psd*fs/2");
  return "var = " + fmt_g17(var);
}

std::string check_welch_white(uint64_t seed) {
  double ratio_sum = 0.0;
  const int n_seeds = 5;
  for (int i = 0; i < n_seeds; ++i) {
    auto ts = synth::synthesize_colored_noise([](double) { return 2.0; }, 1.0,
                                              1 << 17, seed + 7 * i, "");
    auto est = spectral::welch_psd(ts, 256, 0.5, spectral::Window::hann);
    double mean = 0.0;
    int count = 0;
    for (size_t k = 1; k + 1 < est.values.size(); ++k) {
      mean += est.values[k];
      ++count;
    }
    ratio_sum += mean / count / 2.0;
  }
  const double ratio = ratio_sum / n_seeds;
  expect(ratio >= 0.98 && ratio <= 1.02,
         "white-noise Welch level off by " + fmt_g17(ratio));
  return "mean estimate/truth = " + fmt_g17(ratio);
}

std::string check_tone_extraction() {
  const double fs = 64.0;
  const size_t n = 1 << 15;
  const double amp = 0.7, f0 = 1.0;
  synth::TimeSeries ts;
  ts.sample_rate = fs;
  ts.samples.resize(n);
  for (size_t i = 0; i < n; ++i)
    ts.samples[i] = amp * std::cos(2.0 * M_PI * f0 * static_cast<double>(i) / fs + 0.3);
  const double p = spectral::tone_power(ts, 2.0 * M_PI * f0);
  expect_rel(p, amp * amp / 2.0, 1e-9, "tone power vs A^2/2");
  // Leakage of an incommensurate tone into a different demod frequency.
  const double p_leak = spectral::tone_power(ts, 2.0 * M_PI * (f0 * 1.618 + 0.01));
  expect(p_leak <= 0.01 * p, "leakage " + fmt_g17(p_leak / p));
  return "exact tone and leakage";
}

std::string check_parseval(uint64_t seed) {
  Scenario s = presets::monte_carlo(1.0, 1.0, 0.0, 0.0);
  analytic::PsdModel psd{s, analytic::PsdForm::exact, true, false};
  auto ts = synth::synthesize_colored_noise(psd, 64.0, 4096 * 60, seed + 3);
  auto est = spectral::welch_psd(ts, 4096, 0.5, spectral::Window::hann);
  const double df = est.freqs[1] - est.freqs[0];
  double integral = 0.0;
  for (double v : est.values) integral += v * df;
  const double var = variance(ts.samples);
  expect_rel(integral, var, 0.02, "Parseval: integral psd vs variance");
  return "integral/variance = " + fmt_g17(integral / var);
}

std::string check_mc_nf_spot(uint64_t seed) {
  Scenario s = presets::monte_carlo(1.0, 1.0);
  // 200 hann segments at 50% overlap: n = 4096 * 100.5
  auto ts = synth::synthesize_photocurrent(s, 64.0, 6432.0, seed + 11);
  auto mc = spectral::measure_nf(ts, s);
  const double want = analytic::noise_figure(s).nf_db;
  expect_close(mc.result.nf_db, want, std::max(0.3, 3.0 * mc.sigma_db),
               "MC noise figure vs analytic");
  return "nf = " + fmt_g17(mc.result.nf_db) + " +- " + fmt_g17(mc.sigma_db);
}

// ---- full-level checks -----------------------------------------------------

std::string check_ensemble_psd(uint64_t seed) {
  Scenario s = presets::monte_carlo(1.0, 1.0, 0.0, 0.0);
  analytic::PsdModel target{s, analytic::PsdForm::exact, true, false};
  const double fs = 64.0;
  const size_t n = 1 << 15;
  const size_t seg = 512;
  std::vector<double> mean_psd;
  int total = 0;
  const int n_seeds = 200;
  for (int i = 0; i < n_seeds; ++i) {
    auto ts = synth::synthesize_colored_noise(target, fs, n, seed + 1000 + i);
    auto est = spectral::welch_psd(ts, seg, 0.5, spectral::Window::hann);
    if (mean_psd.empty()) mean_psd.assign(est.values.size(), 0.0);
    for (size_t k = 0; k < est.values.size(); ++k) mean_psd[k] += est.values[k];
    total = est.n_segments;
  }
  spectral::PsdEstimate avg;
  avg.fs = fs;
  avg.n_segments = total * n_seeds;
  avg.freqs.resize(mean_psd.size());
  avg.values.resize(mean_psd.size());
  for (size_t k = 0; k < mean_psd.size(); ++k) {
    avg.freqs[k] = static_cast<double>(k) * fs / static_cast<double>(seg);
    avg.values[k] = mean_psd[k] / n_seeds;
  }
  const double rms = rms_rel_error(avg, target, fs / 4.0);
  expect(rms <= 0.05, "ensemble PSD RMS error " + fmt_g17(rms));
  return "RMS = " + fmt_g17(rms) + " over 200 seeds";
}

std::string check_wk(uint64_t seed, size_t n, double tol) {
  Scenario s = presets::monte_carlo(1.0, 1.0, 0.0, 0.0);
  analytic::PsdModel target{s, analytic::PsdForm::exact, true, false};
  auto ts = synth::synthesize_colored_noise(target, 64.0, n, seed + 77);
  auto est = spectral::welch_psd(ts, 2048, 0.5, spectral::Window::hann);
  const double rms = rms_rel_error(est, target, 16.0);
  expect(rms <= tol, "Welch vs target RMS " + fmt_g17(rms) + " (" +
                         std::to_string(est.n_segments) + " segments)");
  return "RMS = " + fmt_g17(rms) + ", " + std::to_string(est.n_segments) +
         " segments";
}

std::string check_mc_nf_grid(uint64_t seed) {
  std::ostringstream detail;
  double worst = 0.0;
  for (double r : {0.0, 0.5, 1.0, 2.5})
    for (double q : {0.25, 0.5, 1.0}) {
      Scenario s = presets::monte_carlo(q, r);
      const double want = analytic::noise_figure(s).nf_db;
      double sum = 0.0;
      const int n_seeds = 5;
      // 1600 hann segments per seed
      for (int i = 0; i < n_seeds; ++i) {
        auto ts = synth::synthesize_photocurrent(
            s, 64.0, 51264.0, rng::derive_stream(seed, 40 + i));
        sum += spectral::measure_nf(ts, s).result.nf_db;
      }
      const double got = sum / n_seeds;
      worst = std::max(worst, std::abs(got - want));
      expect_close(got, want, 0.1,
                   "MC NF at r = " + fmt_g17(r) + ", q = " + fmt_g17(q));
    }
  detail << "worst |mc - analytic| = " << fmt_g17(worst) << " dB";
  return detail.str();
}

std::string check_beat_removal(uint64_t seed) {
  Scenario s = presets::monte_carlo(1.0, std::log(2.0));
  auto ts = synth::synthesize_photocurrent(s, 64.0, 1024.0, seed + 5);
  const double omega = derive(s).omega;
  const double injected = spectral::tone_power(ts, omega);
  // The colored-noise part of the photocurrent is reproducible from the same
  // seed, so the lag-0 value after beat regression must match the bare noise
  // variance up to the (tiny) noise component the projection removes.
  const double var_removed = synth::autocorrelation_estimate(ts, 0, omega)[0];
  synth::TimeSeries noise_only = synth::synthesize_colored_noise(
      analytic::PsdModel{s, analytic::PsdForm::exact, true, false}, 64.0,
      ts.samples.size(), ts.seed);
  const double var_noise = variance(noise_only.samples);
  expect(std::abs(var_removed - var_noise) <= 0.01 * injected,
         "residual beat power " + fmt_g17(std::abs(var_removed - var_noise)) +
             " above 1% of injected " + fmt_g17(injected));
  return "residual below 1% of injected tone power";
}

std::string check_excess_nonneg(uint64_t seed) {
  for (int i = 0; i < 3; ++i) {
    Scenario s0 = presets::monte_carlo(1.0, 0.0, 0.0, 0.0);
    Scenario s1 = presets::monte_carlo(1.0, 1.0, 0.0, 0.0);
    auto a = synth::synthesize_colored_noise(
        analytic::PsdModel{s0, analytic::PsdForm::exact, true, false}, 64.0,
        1 << 16, seed + 60 + i);
    auto b = synth::synthesize_colored_noise(
        analytic::PsdModel{s1, analytic::PsdForm::exact, true, false}, 64.0,
        1 << 16, seed + 60 + i);
    expect(variance(b.samples) >= variance(a.samples),
           "excess noise negative at seed offset " + std::to_string(i));
  }
  return "variance(r=1) >= variance(r=0), 3 seeds";
}

std::string check_autocorr_wk(uint64_t seed) {
  Scenario s = presets::monte_carlo(1.0, 1.0, 0.0, 0.0);
  analytic::PsdModel target{s, analytic::PsdForm::exact, true, false};
  const double fs = 64.0;
  auto ts = synth::synthesize_colored_noise(target, fs, 1 << 20, seed + 90);
  auto acf = synth::autocorrelation_estimate(ts, 10);
  // Independent inverse transform of the target PSD by fine trapezoid.
  const int ngrid = 1 << 14;
  for (size_t lag = 0; lag <= 10; ++lag) {
    const double tau = static_cast<double>(lag) / fs;
    double integral = 0.0;
    for (int k = 0; k <= ngrid; ++k) {
      const double f = 0.5 * fs * k / ngrid;
      const double w = (k == 0 || k == ngrid) ? 0.5 : 1.0;
      integral += w * target.evaluate(2.0 * M_PI * f) *
                  std::cos(2.0 * M_PI * f * tau);
    }
    integral *= 0.5 * fs / ngrid;
    expect(std::abs(acf[lag] - integral) <= 0.05 * acf[0],
           "ACF lag " + std::to_string(lag) + " off by " +
               fmt_g17(acf[lag] - integral));
  }
  return "first 10 lags vs inverse transform";
}

std::string check_injected_failure() {
  if (std::getenv("QHET_VALIDATE_INJECT_FAILURE"))
    throw std::runtime_error("failure injected via QHET_VALIDATE_INJECT_FAILURE");
  return "no injection requested";
}

}  // namespace

std::vector<Check> run_validation(Level level, uint64_t seed) {
  Runner r;

  r.run("engine.symplectic", check_symplectic);
  r.run("engine.uncertainty", [&] { return check_uncertainty(seed); });
  r.run("engine.purity", [&] { return check_purity(seed); });
  r.run("engine.moments_closed_form", check_moments_closed_form);
  r.run("engine.loss_composition", check_loss_composition);
  r.run("engine.beat_doubling", check_beat_doubling);
  r.run("engine.beat_means_eq13", check_beat_means_eq13);
  r.run("analytic.gain_ratio", check_gain_ratio);
  r.run("analytic.theta_s_invariance", check_theta_s_invariance);
  r.run("analytic.psd_floor_parity", check_psd_floor_parity);
  r.run("analytic.high_gain_consistency", check_high_gain_consistency);
  r.run("analytic.nf_limits", check_nf_limits);
  r.run("oracle.nf_equals_analytic", check_oracle_nf);
  r.run("oracle.pout_equals_analytic", check_oracle_pout);
  r.run("synth.determinism", [&] { return check_determinism(seed); });
  r.run("synth.white_variance", [&] { return check_white_variance(seed); });
  r.run("spectral.welch_white_unbiased", [&] { return check_welch_white(seed); });
  r.run("spectral.tone_extraction", check_tone_extraction);
  r.run("spectral.parseval", [&] { return check_parseval(seed); });
  r.run("mc.nf_spot", [&] { return check_mc_nf_spot(seed); });
  r.run("harness.injected_failure", check_injected_failure);

  if (level == Level::full) {
    r.run("synth.ensemble_psd_200_seeds", [&] { return check_ensemble_psd(seed); });
    r.run("spectral.wk_5pct", [&] { return check_wk(seed, 1 << 21, 0.05); });
    r.run("spectral.wk_2pct", [&] { return check_wk(seed, 1 << 22, 0.02); });
    r.run("mc.nf_grid", [&] { return check_mc_nf_grid(seed); });
    r.run("synth.beat_removal", [&] { return check_beat_removal(seed); });
    r.run("synth.excess_nonneg", [&] { return check_excess_nonneg(seed); });
    r.run("synth.autocorr_wk", [&] { return check_autocorr_wk(seed); });
  }
  return r.checks;
}

std::string format_report(const std::vector<Check>& checks) {
  std::ostringstream out;
  size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  for (const auto& c : checks) {
    out << (c.pass ? "PASS  " : "FAIL  ") << c.name;
    for (size_t i = c.name.size(); i < width + 2; ++i) out << ' ';
    out << c.detail << "\n";
  }
  const int failed = count_failed(checks);
  out << (failed == 0 ? "all checks passed"
                      : std::to_string(failed) + " check(s) failed")
      << " (" << checks.size() << " total)\n";
  return out.str();
}

}  // namespace qhet::validate
