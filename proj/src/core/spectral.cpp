#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "errors.hpp"
#include "fft.hpp"
#include "textutil.hpp"
#include "version.hpp"

namespace qhet::spectral {

const char* window_name(Window w) {
  return w == Window::hann ? "hann" : "rectangular";
}

PsdEstimate welch_psd(const synth::TimeSeries& ts, size_t segment_len,
                      double overlap, Window window) {
  const size_t n = ts.samples.size();
  if (segment_len < 8 || segment_len > n)
    throw LengthError("welch_psd: segment_len must lie in [8, record length]");
  if (!(overlap >= 0.0) || overlap > 0.9)
    throw DomainError("welch_psd: overlap must lie in [0, 0.9]");

  const size_t hop = std::max<size_t>(
      1, static_cast<size_t>(std::llround((1.0 - overlap) *
                                          static_cast<double>(segment_len))));
  const int n_segments = static_cast<int>((n - segment_len) / hop + 1);

  std::vector<double> w(segment_len, 1.0);
  if (window == Window::hann)
    for (size_t i = 0; i < segment_len; ++i)
      w[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) /
                                   static_cast<double>(segment_len)));
  const double u =
      std::inner_product(w.begin(), w.end(), w.begin(), 0.0) /
      static_cast<double>(segment_len);  // window power correction

  const size_t nbins = segment_len / 2 + 1;
  std::vector<double> acc(nbins, 0.0);
  std::vector<double> seg(segment_len);
  for (int si = 0; si < n_segments; ++si) {
    const size_t start = static_cast<size_t>(si) * hop;
    for (size_t i = 0; i < segment_len; ++i)
      seg[i] = ts.samples[start + i] * w[i];
    auto spec = fft::rfft(seg);
    for (size_t k = 0; k < nbins; ++k) acc[k] += std::norm(spec[k]);
  }

  PsdEstimate est;
  est.n_segments = n_segments;
  est.window = window;
  est.segment_len = segment_len;
  est.overlap = overlap;
  est.fs = ts.sample_rate;
  est.seed = ts.seed;
  est.scenario_hash = ts.scenario_hash;
  est.freqs.resize(nbins);
  est.values.resize(nbins);
  const double scale = 1.0 / (static_cast<double>(n_segments) * ts.sample_rate *
                              static_cast<double>(segment_len) * u);
  for (size_t k = 0; k < nbins; ++k) {
    est.freqs[k] =
        static_cast<double>(k) * ts.sample_rate / static_cast<double>(segment_len);
    const double onesided = (k == 0 || k == nbins - 1) ? 1.0 : 2.0;
    est.values[k] = onesided * acc[k] * scale;
  }
  return est;
}

namespace {

TonePower demodulate(const synth::TimeSeries& ts, double omega) {
  const size_t n = ts.samples.size();
  if (n < 8) throw LengthError("tone_power: record too short");
  if (!(omega > 0.0) || omega >= M_PI * ts.sample_rate)
    throw DomainError("tone_power: omega must lie in (0, pi*fs)");

  // Truncate to an integer number of beat periods when at least one fits.
  const double period_samples = 2.0 * M_PI * ts.sample_rate / omega;
  size_t n_use = n;
  if (period_samples <= static_cast<double>(n)) {
    const double k = std::floor(static_cast<double>(n) / period_samples);
    n_use = std::min(n, static_cast<size_t>(std::floor(k * period_samples)));
    n_use = std::max<size_t>(n_use, 8);
  }

  double s1 = static_cast<double>(n_use);
  double sc = 0, ss = 0, scc = 0, sss = 0, scs = 0, sy = 0, syc = 0, sys = 0;
  for (size_t i = 0; i < n_use; ++i) {
    const double t = static_cast<double>(i) / ts.sample_rate;
    const double c = std::cos(omega * t), s = std::sin(omega * t);
    const double y = ts.samples[i];
    sc += c;
    ss += s;
    scc += c * c;
    sss += s * s;
    scs += c * s;
    sy += y;
    syc += y * c;
    sys += y * s;
  }
  const double det = s1 * (scc * sss - scs * scs) - sc * (sc * sss - scs * ss) +
                     ss * (sc * scs - scc * ss);
  if (std::abs(det) < 1e-12 * s1 * s1 * s1)
    throw DomainError("tone_power: demodulation basis is singular");
  const double b0 = (sy * (scc * sss - scs * scs) - sc * (syc * sss - scs * sys) +
                     ss * (syc * scs - scc * sys)) /
                    det;
  const double c_amp = (s1 * (syc * sss - sys * scs) - sy * (sc * sss - scs * ss) +
                        ss * (sc * sys - syc * ss)) /
                       det;
  const double s_amp = (s1 * (scc * sys - syc * scs) - sc * (sc * sys - syc * ss) +
                        sy * (sc * scs - scc * ss)) /
                       det;

  double ss_res = 0.0;
  for (size_t i = 0; i < n_use; ++i) {
    const double t = static_cast<double>(i) / ts.sample_rate;
    const double fit = b0 + c_amp * std::cos(omega * t) + s_amp * std::sin(omega * t);
    const double res = ts.samples[i] - fit;
    ss_res += res * res;
  }
  const double var_res = ss_res / static_cast<double>(n_use);
  // Var(ĉ) ≈ 2σ²/N for a half-power sinusoid basis.
  const double sigma_coef = std::sqrt(2.0 * var_res / static_cast<double>(n_use));

  TonePower tp;
  tp.power = 0.5 * (c_amp * c_amp + s_amp * s_amp);
  tp.sigma = sigma_coef * std::sqrt(std::max(2.0 * tp.power, sigma_coef * sigma_coef));
  return tp;
}

}  // namespace

double tone_power(const synth::TimeSeries& ts, double omega) {
  return demodulate(ts, omega).power;
}

TonePower tone_power_ex(const synth::TimeSeries& ts, double omega) {
  return demodulate(ts, omega);
}

PsdValue psd_noise_at(const PsdEstimate& est, double omega, double tone_omega) {
  if (est.values.size() < 16)
    throw LengthError("psd_noise_at: estimate has too few bins");
  const double df = est.freqs[1] - est.freqs[0];
  const double f_target = omega / (2.0 * M_PI);
  if (!(f_target >= 0.0) || f_target > est.freqs.back())
    throw DomainError("psd_noise_at: omega outside the estimated band");

  long tone_bin = -10;  // far away when no tone is present
  if (tone_omega > 0.0)
    tone_bin = std::lround(tone_omega / (2.0 * M_PI) / df);

  const long nbins = static_cast<long>(est.values.size());
  const long center = std::lround(f_target / df);
  // 4 nearest usable bins: skip DC and anything within one bin of the tone.
  std::vector<long> order(static_cast<size_t>(nbins));
  std::iota(order.begin(), order.end(), 0L);
  std::sort(order.begin(), order.end(), [center](long a, long b) {
    const long da = std::abs(a - center), db = std::abs(b - center);
    return da != db ? da < db : a < b;
  });
  std::vector<double> picked;
  for (long k : order) {
    if (k == 0) continue;
    if (std::abs(k - tone_bin) <= 1) continue;
    picked.push_back(est.values[static_cast<size_t>(k)]);
    if (picked.size() == 4) break;
  }
  if (picked.size() < 4)
    throw LengthError("psd_noise_at: fewer than 4 usable bins");

  PsdValue out;
  out.value = std::accumulate(picked.begin(), picked.end(), 0.0) / 4.0;
  // Per-bin relative variance of a Welch bin is about 1.06/n_segments for
  // hann at 50% overlap; the 4 bins are independent.
  out.sigma = out.value * std::sqrt(1.06 / (4.0 * est.n_segments));
  return out;
}

McNoiseFigure measure_nf(const synth::TimeSeries& ts, const Scenario& s,
                         const WelchParams& params) {
  PsdEstimate est = welch_psd(ts, params.segment_len, params.overlap,
                              params.window);
  if (est.n_segments < 50)
    throw LengthError("measure_nf: record is too short for >= 50 Welch "
                      "segments (got " +
                      std::to_string(est.n_segments) + ")");
  const DerivedParams d = derive(s);
  const TonePower tone = tone_power_ex(ts, d.omega);
  const PsdValue chi = psd_noise_at(est, d.omega, d.omega);

  McNoiseFigure mc;
  mc.n_segments = est.n_segments;
  mc.tone_power = tone.power;
  mc.psd_at_omega = chi.value;
  mc.result.snr_in = analytic::snr_in(s);
  mc.result.snr_out = tone.power / (chi.value * s.bandwidth_B);
  mc.result.nf_db = 10.0 * std::log10(mc.result.snr_in / mc.result.snr_out);
  mc.result.method = analytic::NoiseFigureResult::Method::monte_carlo;
  const double rel_tone = tone.sigma / std::max(tone.power, 1e-300);
  const double rel_chi = chi.sigma / std::max(chi.value, 1e-300);
  mc.sigma_db = (10.0 / std::log(10.0)) *
                std::sqrt(rel_tone * rel_tone + rel_chi * rel_chi);
  return mc;
}

void save_psd_csv(const PsdEstimate& est, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << "# qhet " << kVersion << "\n";
  out << "# window = " << window_name(est.window) << "\n";
  out << "# segment_len = " << est.segment_len << "\n";
  out << "# overlap = " << fmt_g17(est.overlap) << "\n";
  out << "# n_segments = " << est.n_segments << "\n";
  out << "# fs = " << fmt_g17(est.fs) << "\n";
  out << "# seed = " << est.seed << "\n";
  out << "# scenario_hash = " << est.scenario_hash << "\n";
  out << "freq,psd\n";
  for (size_t k = 0; k < est.freqs.size(); ++k)
    out << fmt_g17(est.freqs[k]) << "," << fmt_g17(est.values[k]) << "\n";
}

void save_psd_json(const PsdEstimate& est, const std::string& path) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["window"] = window_name(est.window);
  j["segment_len"] = est.segment_len;
  j["overlap"] = est.overlap;
  j["n_segments"] = est.n_segments;
  j["fs"] = est.fs;
  j["seed"] = std::to_string(est.seed);
  j["scenario_hash"] = est.scenario_hash;
  j["freqs"] = est.freqs;
  j["values"] = est.values;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace qhet::spectral
