#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "scenario.hpp"

namespace qhet::synth {

// Sampled differential-photocurrent record. Immutable after creation;
// identical (inputs, seed) reproduce it bit for bit.
struct TimeSeries {
  double sample_rate = 0.0;
  std::vector<double> samples;
  uint64_t seed = 0;
  std::string scenario_hash;
};

// Frequency-domain synthesis: independent complex Gaussian bins scaled by
// √(psd·fs·n_fft)/2 with Hermitian symmetry (DC and Nyquist real), inverse
// real FFT, truncated to n samples. The ensemble one-sided PSD equals
// one_sided_psd(ω) on the grid ω_k = 2π k fs / n_fft, where n_fft is the
// next power of two >= max(n, 256). ω is angular frequency.
TimeSeries synthesize_colored_noise(
    const std::function<double(double)>& one_sided_psd, double fs, size_t n,
    uint64_t seed, std::string scenario_hash = "");

TimeSeries synthesize_colored_noise(const analytic::PsdModel& psd, double fs,
                                    size_t n, uint64_t seed);

// Deterministic beat (analytic::beat_signal) plus colored noise with the
// exact-form one-sided noise density of the scenario.
TimeSeries synthesize_photocurrent(const Scenario& s, double fs,
                                   double duration, uint64_t seed);

// Biased autocorrelation of the fluctuations; when beat_omega > 0 the two
// beat quadratures (and the mean) are regressed out first, otherwise only
// the mean is removed.
std::vector<double> autocorrelation_estimate(const TimeSeries& ts,
                                             size_t max_lag,
                                             double beat_omega = 0.0);

// Raw little-endian float64 samples plus a JSON sidecar carrying fs, seed,
// scenario hash and length.
void save_binary(const TimeSeries& ts, const std::string& data_path,
                 const std::string& sidecar_path);
TimeSeries load_binary(const std::string& data_path,
                       const std::string& sidecar_path);

// (t, value) rows; intended for small records.
void save_csv(const TimeSeries& ts, const std::string& path);

}  // namespace qhet::synth
