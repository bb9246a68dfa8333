#include "qhet/qhet.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "analytic.hpp"
#include "errors.hpp"
#include "gaussian.hpp"
#include "oracle.hpp"
#include "presets.hpp"
#include "rng.hpp"
#include "scenario.hpp"
#include "spectral.hpp"
#include "synth.hpp"
#include "textutil.hpp"
#include "validate.hpp"
#include "version.hpp"

using namespace qhet;

// Opaque handle definitions. Scenario handles cache the canonical text and
// digest so the C-string accessors can hand out stable pointers.
struct qhet_scenario {
  Scenario s;
  std::string text;
  std::string hash;
};

struct qhet_series {
  synth::TimeSeries ts;
};

struct qhet_psd {
  spectral::PsdEstimate est;
};

namespace {

thread_local std::string t_last_error;

qhet_status fail(qhet_status code, const char* what) {
  t_last_error = what;
  return code;
}

// Runs `body` translating the C++ error taxonomy into status codes.
template <typename F>
qhet_status guarded(F&& body) {
  try {
    body();
    return QHET_OK;
  } catch (const ParseError& e) {
    return fail(QHET_ERR_PARSE, e.what());
  } catch (const ValidationError& e) {
    return fail(QHET_ERR_VALIDATION, e.what());
  } catch (const DomainError& e) {
    return fail(QHET_ERR_DOMAIN, e.what());
  } catch (const IndexError& e) {
    return fail(QHET_ERR_INDEX, e.what());
  } catch (const ShapeError& e) {
    return fail(QHET_ERR_SHAPE, e.what());
  } catch (const LengthError& e) {
    return fail(QHET_ERR_LENGTH, e.what());
  } catch (const IoError& e) {
    return fail(QHET_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(QHET_ERR_INTERNAL, e.what());
  }
}

qhet_scenario* wrap(Scenario s) {
  auto* h = new qhet_scenario;
  h->s = std::move(s);
  h->text = serialize_scenario(h->s);
  h->hash = hex16(fnv1a64(h->text));
  return h;
}

void fill_nf(const analytic::NoiseFigureResult& r, qhet_nf_result* out) {
  out->snr_in = r.snr_in;
  out->snr_out = r.snr_out;
  out->nf_db = r.nf_db;
  std::snprintf(out->method, sizeof(out->method), "%s",
                analytic::method_name(r.method));
}

#define REQUIRE_PTR(p)                                   \
  do {                                                   \
    if (!(p)) return fail(QHET_ERR_NULLPTR, "null " #p); \
  } while (0)

}  // namespace

extern "C" {

const char* qhet_version(void) { return kVersion; }

const char* qhet_last_error(void) { return t_last_error.c_str(); }

uint64_t qhet_derive_seed(uint64_t base, uint64_t index) {
  return rng::derive_stream(base, index);
}

/* ---- scenario ---------------------------------------------------------- */

qhet_status qhet_scenario_parse(const char* text, qhet_scenario** out) {
  REQUIRE_PTR(text);
  REQUIRE_PTR(out);
  return guarded([&] { *out = wrap(load_scenario(text)); });
}

qhet_status qhet_scenario_load(const char* path, qhet_scenario** out) {
  REQUIRE_PTR(path);
  REQUIRE_PTR(out);
  return guarded([&] { *out = wrap(load_scenario_file(path)); });
}

qhet_status qhet_scenario_default(qhet_scenario** out) {
  REQUIRE_PTR(out);
  return guarded([&] { *out = wrap(presets::default_scenario()); });
}

qhet_status qhet_scenario_with(const qhet_scenario* s, const char* key,
                               double value, qhet_scenario** out) {
  REQUIRE_PTR(s);
  REQUIRE_PTR(key);
  REQUIRE_PTR(out);
  return guarded([&] {
    ConfigMap keys = parse_config(s->text);
    const std::string k = key;
    if (k == "omega_s" || k == "omega_l") keys.erase("omega_i");
    if (k == "theta_s") {
      // drop delta_theta when it still tracks the default -theta_s
      if (keys.count("delta_theta") &&
          s->s.delta_theta == -s->s.theta_s)
        keys.erase("delta_theta");
    }
    keys[k] = fmt_g17(value);
    *out = wrap(scenario_from_keys(keys));
  });
}

qhet_status qhet_scenario_with_str(const qhet_scenario* s, const char* key,
                                   const char* value, qhet_scenario** out) {
  REQUIRE_PTR(s);
  REQUIRE_PTR(key);
  REQUIRE_PTR(value);
  REQUIRE_PTR(out);
  return guarded([&] {
    ConfigMap keys = parse_config(s->text);
    keys[key] = value;
    *out = wrap(scenario_from_keys(keys));
  });
}

qhet_status qhet_scenario_get(const qhet_scenario* s, const char* name,
                              double* out) {
  REQUIRE_PTR(s);
  REQUIRE_PTR(name);
  REQUIRE_PTR(out);
  return guarded([&] {
    const std::string n = name;
    const Scenario& sc = s->s;
    const DerivedParams d = derive(sc);
    if (n == "omega_s") *out = sc.omega_s;
    else if (n == "omega_i") *out = sc.omega_i;
    else if (n == "omega_l") *out = sc.omega_l;
    else if (n == "alpha_s_mag") *out = sc.alpha_s_mag;
    else if (n == "theta_s") *out = sc.theta_s;
    else if (n == "epsilon_l") *out = sc.epsilon_l;
    else if (n == "theta_l") *out = sc.theta_l;
    else if (n == "r") *out = sc.r;
    else if (n == "q") *out = sc.q;
    else if (n == "bandwidth_B") *out = sc.bandwidth_B;
    else if (n == "delta_theta") *out = sc.delta_theta;
    else if (n == "omega") *out = d.omega;
    else if (n == "eta") *out = d.eta;
    else if (n == "gain_g") *out = d.gain_g;
    else if (n == "shot_level") *out = d.shot_level;
    else if (n == "hbar") *out = sc.constants.hbar;
    else if (n == "c") *out = sc.constants.c;
    else if (n == "epsilon0") *out = sc.constants.epsilon0;
    else if (n == "e_charge") *out = sc.constants.e_charge;
    else throw DomainError("unknown field `" + n + "`");
  });
}

const char* qhet_scenario_text(const qhet_scenario* s) {
  return s ? s->text.c_str() : "";
}

const char* qhet_scenario_hash(const qhet_scenario* s) {
  return s ? s->hash.c_str() : "";
}

void qhet_scenario_free(qhet_scenario* s) { delete s; }

/* ---- closed-form results ------------------------------------------------ */

qhet_status qhet_snr_in(const qhet_scenario* s, double* out) {
  REQUIRE_PTR(s);
  REQUIRE_PTR(out);
  return guarded([&] { *out = analytic::snr_in(s->s); });
}

qhet_status qhet_snr_out(const qhet_scenario* s, double* out) {
  REQUIRE_PTR(s);
  REQUIRE_PTR(out);
  return guarded([&] { *out = analytic::snr_out(s->s); });
}

qhet_status qhet_output_power(const qhet_scenario* s, double* out) {
  REQUIRE_PTR(s);
  REQUIRE_PTR(out);
  return guarded([&] { *out = analytic::output_power(s->s); });
}

qhet_status qhet_beat_signal(const qhet_scenario* s, double t, double* out) {
  REQUIRE_PTR(s);
  REQUIRE_PTR(out);
  return guarded([&] { *out = analytic::beat_signal(t, s->s); });
}

qhet_status qhet_spectral_factor(const qhet_scenario* s, double omega,
                                 int strict, double* out) {
  REQUIRE_PTR(s);
  REQUIRE_PTR(out);
  return guarded(
      [&] { *out = analytic::spectral_factor_f(omega, s->s, strict != 0); });
}

qhet_status qhet_noise_psd(const qhet_scenario* s, double omega, int form,
                           int strict, double* out) {
  REQUIRE_PTR(s);
  REQUIRE_PTR(out);
  if (form != QHET_PSD_EXACT && form != QHET_PSD_HIGH_GAIN)
    return fail(QHET_ERR_DOMAIN, "form must be QHET_PSD_EXACT or "
                                 "QHET_PSD_HIGH_GAIN");
  return guarded([&] {
    *out = analytic::noise_psd(omega, s->s,
                               form == QHET_PSD_EXACT
                                   ? analytic::PsdForm::exact
                                   : analytic::PsdForm::high_gain,
                               strict != 0);
  });
}

qhet_status qhet_noise_figure(const qhet_scenario* s, qhet_nf_result* out) {
  REQUIRE_PTR(s);
  REQUIRE_PTR(out);
  return guarded([&] { fill_nf(analytic::noise_figure(s->s), out); });
}

qhet_status qhet_noise_figure_regular(double xi, double* out) {
  REQUIRE_PTR(out);
  return guarded([&] { *out = analytic::noise_figure_regular(xi); });
}

/* ---- Gaussian-engine oracle --------------------------------------------- */

qhet_status qhet_oracle_beat_stats(const qhet_scenario* s, double out[4]) {
  REQUIRE_PTR(s);
  REQUIRE_PTR(out);
  return guarded([&] {
    const auto b = oracle::beat_statistics(s->s);
    out[0] = b.cos_mean;
    out[1] = b.sin_mean;
    out[2] = b.cos_var;
    out[3] = b.sin_var;
  });
}

qhet_status qhet_oracle_output_power(const qhet_scenario* s, double* out) {
  REQUIRE_PTR(s);
  REQUIRE_PTR(out);
  return guarded([&] { *out = oracle::output_power(s->s); });
}

qhet_status qhet_oracle_noise_psd(const qhet_scenario* s, double* out) {
  REQUIRE_PTR(s);
  REQUIRE_PTR(out);
  return guarded([&] { *out = oracle::noise_psd_baseband(s->s); });
}

qhet_status qhet_oracle_noise_figure(const qhet_scenario* s,
                                     qhet_nf_result* out) {
  REQUIRE_PTR(s);
  REQUIRE_PTR(out);
  return guarded([&] { fill_nf(oracle::noise_figure(s->s), out); });
}

/* ---- time-domain synthesis ----------------------------------------------- */

qhet_status qhet_synthesize_photocurrent(const qhet_scenario* s, double fs,
                                         double duration, uint64_t seed,
                                         qhet_series** out) {
  REQUIRE_PTR(s);
  REQUIRE_PTR(out);
  return guarded([&] {
    *out = new qhet_series{
        synth::synthesize_photocurrent(s->s, fs, duration, seed)};
  });
}

qhet_status qhet_synthesize_noise(const qhet_scenario* s, int form, double fs,
                                  uint64_t n, uint64_t seed,
                                  qhet_series** out) {
  REQUIRE_PTR(s);
  REQUIRE_PTR(out);
  if (form != QHET_PSD_EXACT && form != QHET_PSD_HIGH_GAIN)
    return fail(QHET_ERR_DOMAIN, "form must be QHET_PSD_EXACT or "
                                 "QHET_PSD_HIGH_GAIN");
  return guarded([&] {
    analytic::PsdModel psd{s->s,
                           form == QHET_PSD_EXACT ? analytic::PsdForm::exact
                                                  : analytic::PsdForm::high_gain,
                           true, false};
    *out = new qhet_series{synth::synthesize_colored_noise(
        psd, fs, static_cast<size_t>(n), seed)};
  });
}

size_t qhet_series_length(const qhet_series* ts) {
  return ts ? ts->ts.samples.size() : 0;
}

double qhet_series_fs(const qhet_series* ts) {
  return ts ? ts->ts.sample_rate : 0.0;
}

uint64_t qhet_series_seed(const qhet_series* ts) {
  return ts ? ts->ts.seed : 0;
}

const double* qhet_series_samples(const qhet_series* ts) {
  return ts ? ts->ts.samples.data() : nullptr;
}

const char* qhet_series_scenario_hash(const qhet_series* ts) {
  return ts ? ts->ts.scenario_hash.c_str() : "";
}

qhet_status qhet_series_autocorrelation(const qhet_series* ts, size_t max_lag,
                                        double beat_omega, double* out) {
  REQUIRE_PTR(ts);
  REQUIRE_PTR(out);
  return guarded([&] {
    auto acf = synth::autocorrelation_estimate(ts->ts, max_lag, beat_omega);
    std::memcpy(out, acf.data(), acf.size() * sizeof(double));
  });
}

qhet_status qhet_series_save(const qhet_series* ts, const char* data_path,
                             const char* sidecar_path) {
  REQUIRE_PTR(ts);
  REQUIRE_PTR(data_path);
  REQUIRE_PTR(sidecar_path);
  return guarded([&] { synth::save_binary(ts->ts, data_path, sidecar_path); });
}

qhet_status qhet_series_save_csv(const qhet_series* ts, const char* path) {
  REQUIRE_PTR(ts);
  REQUIRE_PTR(path);
  return guarded([&] { synth::save_csv(ts->ts, path); });
}

void qhet_series_free(qhet_series* ts) { delete ts; }

/* ---- spectral estimation -------------------------------------------------- */

qhet_status qhet_welch_psd(const qhet_series* ts, size_t segment_len,
                           double overlap, int window, qhet_psd** out) {
  REQUIRE_PTR(ts);
  REQUIRE_PTR(out);
  if (window != QHET_WINDOW_RECTANGULAR && window != QHET_WINDOW_HANN)
    return fail(QHET_ERR_DOMAIN, "unknown window");
  return guarded([&] {
    *out = new qhet_psd{spectral::welch_psd(
        ts->ts, segment_len, overlap,
        window == QHET_WINDOW_HANN ? spectral::Window::hann
                                   : spectral::Window::rectangular)};
  });
}

size_t qhet_psd_length(const qhet_psd* p) {
  return p ? p->est.freqs.size() : 0;
}

const double* qhet_psd_freqs(const qhet_psd* p) {
  return p ? p->est.freqs.data() : nullptr;
}

const double* qhet_psd_values(const qhet_psd* p) {
  return p ? p->est.values.data() : nullptr;
}

int qhet_psd_n_segments(const qhet_psd* p) {
  return p ? p->est.n_segments : 0;
}

qhet_status qhet_psd_noise_at(const qhet_psd* p, double omega,
                              double tone_omega, double* value,
                              double* sigma) {
  REQUIRE_PTR(p);
  REQUIRE_PTR(value);
  return guarded([&] {
    const auto v = spectral::psd_noise_at(p->est, omega, tone_omega);
    *value = v.value;
    if (sigma) *sigma = v.sigma;
  });
}

qhet_status qhet_psd_save_csv(const qhet_psd* p, const char* path) {
  REQUIRE_PTR(p);
  REQUIRE_PTR(path);
  return guarded([&] { spectral::save_psd_csv(p->est, path); });
}

qhet_status qhet_psd_save_json(const qhet_psd* p, const char* path) {
  REQUIRE_PTR(p);
  REQUIRE_PTR(path);
  return guarded([&] { spectral::save_psd_json(p->est, path); });
}

void qhet_psd_free(qhet_psd* p) { delete p; }

qhet_status qhet_tone_power(const qhet_series* ts, double omega, double* power,
                            double* sigma) {
  REQUIRE_PTR(ts);
  REQUIRE_PTR(power);
  return guarded([&] {
    const auto tp = spectral::tone_power_ex(ts->ts, omega);
    *power = tp.power;
    if (sigma) *sigma = tp.sigma;
  });
}

qhet_status qhet_measure_nf(const qhet_series* ts, const qhet_scenario* s,
                            qhet_nf_result* out, double* sigma_db) {
  REQUIRE_PTR(ts);
  REQUIRE_PTR(s);
  REQUIRE_PTR(out);
  return guarded([&] {
    const auto mc = spectral::measure_nf(ts->ts, s->s);
    fill_nf(mc.result, out);
    if (sigma_db) *sigma_db = mc.sigma_db;
  });
}

/* ---- cross-method validation ---------------------------------------------- */

qhet_status qhet_validate(int level, uint64_t seed, char** report,
                          int* n_checks, int* n_failed) {
  if (level != QHET_VALIDATE_QUICK && level != QHET_VALIDATE_FULL)
    return fail(QHET_ERR_DOMAIN, "level must be QHET_VALIDATE_QUICK or "
                                 "QHET_VALIDATE_FULL");
  return guarded([&] {
    const auto checks = validate::run_validation(
        level == QHET_VALIDATE_FULL ? validate::Level::full
                                    : validate::Level::quick,
        seed);
    if (report) {
      const std::string text = validate::format_report(checks);
      *report = static_cast<char*>(std::malloc(text.size() + 1));
      if (*report) std::memcpy(*report, text.c_str(), text.size() + 1);
    }
    if (n_checks) *n_checks = static_cast<int>(checks.size());
    if (n_failed) *n_failed = validate::count_failed(checks);
  });
}

void qhet_string_free(char* s) { std::free(s); }

}  // extern "C"
