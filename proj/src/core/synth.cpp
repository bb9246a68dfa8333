#include "synth.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "errors.hpp"
#include "fft.hpp"
#include "rng.hpp"
#include "textutil.hpp"

namespace qhet::synth {

namespace {

size_t next_pow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

constexpr uint64_t kNoiseStream = 0;

}  // namespace

TimeSeries synthesize_colored_noise(
    const std::function<double(double)>& one_sided_psd, double fs, size_t n,
    uint64_t seed, std::string scenario_hash) {
  if (fs <= 0.0) throw DomainError("synthesize: fs must be > 0");
  if (n < 2) throw LengthError("synthesize: need at least 2 samples");

  const size_t nfft = next_pow2(std::max<size_t>(n, 256));
  const size_t nbins = nfft / 2 + 1;
  const double domega = 2.0 * M_PI * fs / static_cast<double>(nfft);

  rng::CounterRng gen(seed, kNoiseStream);
  std::vector<std::complex<double>> bins(nbins);
  for (size_t k = 0; k < nbins; ++k) {
    const double target = one_sided_psd(domega * static_cast<double>(k));
    if (!(target >= 0.0) || !std::isfinite(target))
      throw DomainError("synthesize: target PSD must be finite and >= 0 on "
                        "the grid (bin " +
                        std::to_string(k) + " gave " + fmt_g17(target) + ")");
    double z0, z1;
    gen.normal_pair(z0, z1);
    if (k == 0 || k == nbins - 1) {
      // Real bins carry the full bin power in one component.
      bins[k] = std::sqrt(target * fs * static_cast<double>(nfft) / 2.0) * z0;
    } else {
      const double scale =
          std::sqrt(target * fs * static_cast<double>(nfft)) / 2.0;
      bins[k] = std::complex<double>(scale * z0, scale * z1);
    }
  }

  std::vector<double> x = fft::irfft(bins, nfft);
  const double norm = 1.0 / static_cast<double>(nfft);

  TimeSeries ts;
  ts.sample_rate = fs;
  ts.seed = seed;
  ts.scenario_hash = std::move(scenario_hash);
  ts.samples.resize(n);
  for (size_t i = 0; i < n; ++i) ts.samples[i] = x[i] * norm;
  return ts;
}

TimeSeries synthesize_colored_noise(const analytic::PsdModel& psd, double fs,
                                    size_t n, uint64_t seed) {
  return synthesize_colored_noise(
      [&psd](double omega) { return psd.evaluate(omega); }, fs, n, seed,
      scenario_hash(psd.scenario));
}

TimeSeries synthesize_photocurrent(const Scenario& s, double fs,
                                   double duration, uint64_t seed) {
  const DerivedParams d = derive(s);
  // Beat must sit well below Nyquist.
  if (!(fs > 4.0 * d.omega / (2.0 * M_PI)))
    throw DomainError("synthesize_photocurrent: fs must exceed 4*Omega/(2pi) "
                      "= " +
                      fmt_g17(4.0 * d.omega / (2.0 * M_PI)));
  const double n_real = duration * fs;
  if (!(n_real >= 2.0) || n_real > 1e9)
    throw DomainError("synthesize_photocurrent: duration*fs must give between "
                      "2 and 1e9 samples, got " +
                      fmt_g17(n_real));
  const size_t n = static_cast<size_t>(std::llround(n_real));

  analytic::PsdModel psd{s, analytic::PsdForm::exact, true, false};
  TimeSeries ts = synthesize_colored_noise(psd, fs, n, seed);
  for (size_t i = 0; i < n; ++i)
    ts.samples[i] += analytic::beat_signal(static_cast<double>(i) / fs, s);
  return ts;
}

std::vector<double> autocorrelation_estimate(const TimeSeries& ts,
                                             size_t max_lag,
                                             double beat_omega) {
  const size_t n = ts.samples.size();
  if (n < 8) throw LengthError("autocorrelation: record too short");
  if (max_lag >= n / 4)
    throw LengthError("autocorrelation: max_lag must be < length/4 (" +
                      std::to_string(max_lag) + " vs length " +
                      std::to_string(n) + ")");

  std::vector<double> d(ts.samples);
  if (beat_omega > 0.0) {
    // Least-squares projection onto [1, cos(Ωt), sin(Ωt)].
    double s1 = static_cast<double>(n);
    double sc = 0, ss = 0, scc = 0, sss = 0, scs = 0;
    double sy = 0, syc = 0, sys = 0;
    for (size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / ts.sample_rate;
      const double c = std::cos(beat_omega * t), s = std::sin(beat_omega * t);
      sc += c;
      ss += s;
      scc += c * c;
      sss += s * s;
      scs += c * s;
      sy += d[i];
      syc += d[i] * c;
      sys += d[i] * s;
    }
    // Solve the 3x3 normal equations by Cramer's rule.
    const double a11 = s1, a12 = sc, a13 = ss;
    const double a22 = scc, a23 = scs, a33 = sss;
    const double det = a11 * (a22 * a33 - a23 * a23) -
                       a12 * (a12 * a33 - a23 * a13) +
                       a13 * (a12 * a23 - a22 * a13);
    if (std::abs(det) < 1e-12 * s1 * s1 * s1)
      throw DomainError("autocorrelation: beat regression is singular");
    const double b0 = (sy * (a22 * a33 - a23 * a23) -
                       a12 * (syc * a33 - a23 * sys) +
                       a13 * (syc * a23 - a22 * sys)) /
                      det;
    const double b1 = (a11 * (syc * a33 - sys * a23) -
                       sy * (a12 * a33 - a23 * a13) +
                       a13 * (a12 * sys - syc * a13)) /
                      det;
    const double b2 = (a11 * (a22 * sys - syc * a23) -
                       a12 * (a12 * sys - syc * a13) +
                       sy * (a12 * a23 - a22 * a13)) /
                      det;
    for (size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / ts.sample_rate;
      d[i] -= b0 + b1 * std::cos(beat_omega * t) + b2 * std::sin(beat_omega * t);
    }
  } else {
    double mean = 0.0;
    for (double v : d) mean += v;
    mean /= static_cast<double>(n);
    for (double& v : d) v -= mean;
  }

  std::vector<double> acf(max_lag + 1, 0.0);
  for (size_t k = 0; k <= max_lag; ++k) {
    double acc = 0.0;
    for (size_t i = 0; i + k < n; ++i) acc += d[i] * d[i + k];
    acf[k] = acc / static_cast<double>(n);  // biased estimator
  }
  return acf;
}

void save_binary(const TimeSeries& ts, const std::string& data_path,
                 const std::string& sidecar_path) {
  std::ofstream out(data_path, std::ios::binary);
  if (!out) throw IoError("cannot write " + data_path);
  out.write(reinterpret_cast<const char*>(ts.samples.data()),
            static_cast<std::streamsize>(ts.samples.size() * sizeof(double)));
  if (!out) throw IoError("short write to " + data_path);
  out.close();

  nlohmann::ordered_json side;
  side["format"] = "float64-le";
  side["length"] = ts.samples.size();
  side["sample_rate"] = ts.sample_rate;
  side["seed"] = std::to_string(ts.seed);
  side["scenario_hash"] = ts.scenario_hash;
  std::ofstream js(sidecar_path, std::ios::binary);
  if (!js) throw IoError("cannot write " + sidecar_path);
  js << side.dump(2) << "\n";
}

TimeSeries load_binary(const std::string& data_path,
                       const std::string& sidecar_path) {
  std::ifstream js(sidecar_path, std::ios::binary);
  if (!js) throw IoError("cannot open " + sidecar_path);
  nlohmann::json side = nlohmann::json::parse(js);

  TimeSeries ts;
  ts.sample_rate = side.at("sample_rate").get<double>();
  ts.seed = std::stoull(side.at("seed").get<std::string>());
  ts.scenario_hash = side.value("scenario_hash", "");
  const size_t n = side.at("length").get<size_t>();

  std::ifstream in(data_path, std::ios::binary);
  if (!in) throw IoError("cannot open " + data_path);
  ts.samples.resize(n);
  in.read(reinterpret_cast<char*>(ts.samples.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (static_cast<size_t>(in.gcount()) != n * sizeof(double))
    throw IoError("short read from " + data_path);
  return ts;
}

void save_csv(const TimeSeries& ts, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << "t,value\n";
  for (size_t i = 0; i < ts.samples.size(); ++i)
    out << fmt_g17(static_cast<double>(i) / ts.sample_rate) << ","
        << fmt_g17(ts.samples[i]) << "\n";
}

}  // namespace qhet::synth
