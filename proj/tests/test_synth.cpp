#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "analytic.hpp"
#include "errors.hpp"
#include "presets.hpp"
#include "spectral.hpp"
#include "synth.hpp"

using namespace qhet;

namespace {

double variance(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(v.size());
}

// MC-friendly variant of the unit-efficiency scenario: omega_l = 1 and a
// slow beat at f = 0.001 cycles per unit time.
Scenario slow_beat(double r, double theta_l, double alpha = 1.0) {
  ConfigMap keys;
  keys["omega_l"] = "1.0";
  keys["omega_s"] = "1.006283185307179587";  // Omega = 2 pi / 1000
  keys["alpha_s_mag"] = std::to_string(alpha);
  keys["theta_s"] = "0";
  keys["epsilon_l"] = "1";
  keys["theta_l"] = std::to_string(theta_l);
  keys["r"] = std::to_string(r);
  keys["q"] = "1";
  keys["bandwidth_B"] = "1";
  return scenario_from_keys(keys);
}

}  // namespace

TEST_CASE("white synthesis reproduces the target variance") {
  const size_t n = 1 << 20;
  auto ts = synth::synthesize_colored_noise([](double) { return 2.0; }, 1.0, n,
                                            42, "");
  // one-sided PSD 2 at fs = 1 gives unit variance
  const double sigma = std::sqrt(2.0 / static_cast<double>(n));
  CHECK(variance(ts.samples) == doctest::Approx(1.0).epsilon(5.0 * sigma));
}

TEST_CASE("zero target produces the all-zero series") {
  auto ts = synth::synthesize_colored_noise([](double) { return 0.0; }, 1.0,
                                            4096, 7, "");
  for (double v : ts.samples) CHECK(v == 0.0);
}

TEST_CASE("synthesis is deterministic in the seed") {
  auto psd = [](double) { return 1.0; };
  auto a = synth::synthesize_colored_noise(psd, 2.0, 10000, 99, "");
  auto b = synth::synthesize_colored_noise(psd, 2.0, 10000, 99, "");
  CHECK(a.samples == b.samples);
  auto c = synth::synthesize_colored_noise(psd, 2.0, 10000, 100, "");
  CHECK(a.samples != c.samples);
}

TEST_CASE("negative or non-finite targets are rejected") {
  CHECK_THROWS_AS(synth::synthesize_colored_noise([](double) { return -1.0; },
                                                  1.0, 1024, 1, ""),
                  DomainError);
  CHECK_THROWS_AS(
      synth::synthesize_colored_noise(
          [](double w) { return w == 0.0 ? 1.0 : std::nan(""); }, 1.0, 1024, 1,
          ""),
      DomainError);
}

TEST_CASE("photocurrent without signal or squeezing is shot-limited white") {
  Scenario s = presets::monte_carlo(1.0, 0.0, 0.0, /*alpha=*/0.0);
  const double fs = 64.0;
  auto ts = synth::synthesize_photocurrent(s, fs, 1024.0, 5);
  const double shot_one_sided = 2.0 * derive(s).shot_level;
  const double want = shot_one_sided * fs / 2.0;
  const double sigma = want * std::sqrt(2.0 / static_cast<double>(ts.samples.size()));
  CHECK(variance(ts.samples) == doctest::Approx(want).epsilon(5.0 * sigma / want));
  CHECK(ts.seed == 5);
  CHECK(ts.scenario_hash == scenario_hash(s));
}

TEST_CASE("demodulated tone amplitude matches the beat coefficient") {
  Scenario s = slow_beat(std::log(2.0), 0.0);
  const double fs = 1.0;
  auto ts = synth::synthesize_photocurrent(s, fs, 64000.0, 21);
  const DerivedParams d = derive(s);
  const double power = spectral::tone_power(ts, d.omega);
  const double amp = std::sqrt(2.0 * power);
  const double amp_analytic = std::sqrt(2.0 * analytic::output_power(s));
  CHECK(amp == doctest::Approx(amp_analytic).epsilon(0.02));
  // eta is within 1% of 1 here, so the raw coefficient sits near 2 sqrt 2
  CHECK(amp == doctest::Approx(2.8284271247461903).epsilon(0.03));
}

TEST_CASE("deamplified quadrature loses e^{4r} in tone power") {
  const double r = std::log(2.0);
  auto ts0 = synth::synthesize_photocurrent(slow_beat(r, 0.0), 1.0, 64000.0, 31);
  auto ts9 =
      synth::synthesize_photocurrent(slow_beat(r, M_PI / 2), 1.0, 64000.0, 31);
  const double omega = derive(slow_beat(r, 0.0)).omega;
  const double p0 = spectral::tone_power(ts0, omega);
  const double p9 = spectral::tone_power(ts9, omega);
  CHECK(p0 / p9 == doctest::Approx(std::exp(4.0 * r)).epsilon(0.1));
}

TEST_CASE("sample-rate margin below the beat is rejected") {
  Scenario s = presets::monte_carlo(1.0, 0.0);
  // Omega = 2 pi, so fs must exceed 4
  CHECK_THROWS_AS(synth::synthesize_photocurrent(s, 3.0, 100.0, 1),
                  DomainError);
}

TEST_CASE("autocorrelation of white noise is a delta") {
  const size_t n = 1 << 18;
  auto ts = synth::synthesize_colored_noise([](double) { return 2.0; }, 1.0, n,
                                            11, "");
  auto acf = synth::autocorrelation_estimate(ts, 5);
  CHECK(acf[0] == doctest::Approx(1.0).epsilon(0.02));
  const double bound = 5.0 / std::sqrt(static_cast<double>(n));
  for (size_t k = 1; k <= 5; ++k) CHECK(std::abs(acf[k]) <= bound);
}

TEST_CASE("autocorrelation matches the inverse transform of the target") {
  Scenario s = presets::monte_carlo(1.0, 1.0, 0.0, 0.0);
  analytic::PsdModel target{s, analytic::PsdForm::exact, true, false};
  const double fs = 64.0;
  auto ts = synth::synthesize_colored_noise(target, fs, 1 << 20, 13);
  auto acf = synth::autocorrelation_estimate(ts, 10);
  const int ngrid = 1 << 13;
  for (size_t lag = 0; lag <= 10; ++lag) {
    const double tau = static_cast<double>(lag) / fs;
    double integral = 0.0;
    for (int k = 0; k <= ngrid; ++k) {
      const double f = 0.5 * fs * k / ngrid;
      const double w = (k == 0 || k == ngrid) ? 0.5 : 1.0;
      integral +=
          w * target.evaluate(2.0 * M_PI * f) * std::cos(2.0 * M_PI * f * tau);
    }
    integral *= 0.5 * fs / ngrid;
    CHECK(std::abs(acf[lag] - integral) <= 0.05 * acf[0]);
  }
}

TEST_CASE("autocorrelation lag bound") {
  auto ts = synth::synthesize_colored_noise([](double) { return 1.0; }, 1.0,
                                            1024, 3, "");
  CHECK_THROWS_AS(synth::autocorrelation_estimate(ts, 256), LengthError);
  CHECK_NOTHROW(synth::autocorrelation_estimate(ts, 255));
}

TEST_CASE("beat regression removes the injected tone") {
  Scenario s = presets::monte_carlo(1.0, std::log(2.0));
  auto ts = synth::synthesize_photocurrent(s, 64.0, 512.0, 17);
  const double omega = derive(s).omega;
  const double injected = spectral::tone_power(ts, omega);
  const double var_removed = synth::autocorrelation_estimate(ts, 0, omega)[0];
  synth::TimeSeries noise = synth::synthesize_colored_noise(
      analytic::PsdModel{s, analytic::PsdForm::exact, true, false}, 64.0,
      ts.samples.size(), ts.seed);
  CHECK(std::abs(var_removed - variance(noise.samples)) <= 0.01 * injected);
}

TEST_CASE("excess noise above shot is nonnegative at theta_l = 0") {
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    auto a = synth::synthesize_colored_noise(
        analytic::PsdModel{presets::monte_carlo(1.0, 0.0, 0.0, 0.0),
                           analytic::PsdForm::exact, true, false},
        64.0, 1 << 16, seed);
    auto b = synth::synthesize_colored_noise(
        analytic::PsdModel{presets::monte_carlo(1.0, 1.0, 0.0, 0.0),
                           analytic::PsdForm::exact, true, false},
        64.0, 1 << 16, seed);
    CHECK(variance(b.samples) >= variance(a.samples));
  }
}

TEST_CASE("binary export round-trips and csv export is well-formed") {
  namespace fs = std::filesystem;
  Scenario s = presets::monte_carlo(1.0, 0.5);
  auto ts = synth::synthesize_photocurrent(s, 64.0, 16.0, 123);
  const auto dir = fs::temp_directory_path() / "qhet_synth_io_test";
  fs::create_directories(dir);
  const std::string data = (dir / "ts.f64").string();
  const std::string side = (dir / "ts.json").string();
  synth::save_binary(ts, data, side);
  auto back = synth::load_binary(data, side);
  CHECK(back.samples == ts.samples);
  CHECK(back.sample_rate == ts.sample_rate);
  CHECK(back.seed == ts.seed);
  CHECK(back.scenario_hash == ts.scenario_hash);
  CHECK(fs::file_size(data) == ts.samples.size() * sizeof(double));

  const std::string csv = (dir / "ts.csv").string();
  synth::save_csv(ts, csv);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,value");
  size_t rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == ts.samples.size());
  fs::remove_all(dir);
}
