#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "synth.hpp"

namespace qhet::spectral {

enum class Window { rectangular, hann };

const char* window_name(Window w);

struct PsdEstimate {
  std::vector<double> freqs;   // cycles per unit time, ascending, [0, fs/2]
  std::vector<double> values;  // one-sided PSD
  int n_segments = 0;
  Window window = Window::hann;
  size_t segment_len = 0;
  double overlap = 0.0;
  double fs = 0.0;
  uint64_t seed = 0;  // provenance copied from the source series
  std::string scenario_hash;
};

// One-sided, window-power-corrected averaged periodogram.
PsdEstimate welch_psd(const synth::TimeSeries& ts, size_t segment_len,
                      double overlap, Window window);

// Coherent demodulation at angular frequency omega: least-squares fit of
// [1, cos(ωt), sin(ωt)] over an integer number of periods; returns the
// fitted sinusoid-pair power (c² + s²)/2.
double tone_power(const synth::TimeSeries& ts, double omega);

struct TonePower {
  double power = 0.0;
  double sigma = 0.0;  // 1σ statistical error from the residual noise
};
TonePower tone_power_ex(const synth::TimeSeries& ts, double omega);

// Noise density near angular frequency omega from an average of the 4
// nearest usable bins. Bins within one bin of tone_omega are excluded
// (pass tone_omega < 0 when no tone is present); the DC bin is never used.
struct PsdValue {
  double value = 0.0;
  double sigma = 0.0;
};
PsdValue psd_noise_at(const PsdEstimate& est, double omega, double tone_omega);

struct WelchParams {
  size_t segment_len = 4096;
  double overlap = 0.5;
  Window window = Window::hann;
};

struct McNoiseFigure {
  analytic::NoiseFigureResult result;
  double sigma_db = 0.0;
  double tone_power = 0.0;
  double psd_at_omega = 0.0;
  int n_segments = 0;
};

// Monte-Carlo noise figure of a photocurrent record: tone power at the beat
// frequency over the measured noise density there, against the analytic
// input SNR. Requires at least 50 Welch segments.
McNoiseFigure measure_nf(const synth::TimeSeries& ts, const Scenario& s,
                         const WelchParams& params = {});

// CSV with '#' header comments (window/segments/seed) then freq,psd rows;
// JSON variant mirrors the same fields.
void save_psd_csv(const PsdEstimate& est, const std::string& path);
void save_psd_json(const PsdEstimate& est, const std::string& path);

}  // namespace qhet::spectral
