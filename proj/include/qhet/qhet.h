#ifndef QHET_H
#define QHET_H

/* qhet — heterodyne detection with a quantum-correlated image band.
 *
 * C API of the simulation core. All objects are opaque handles created and
 * destroyed by the library; every function that can fail returns a
 * qhet_status, with a human-readable message available from
 * qhet_last_error() (thread-local) until the next failing call on the same
 * thread. Handles are immutable after creation and safe to share across
 * threads.
 *
 * Angular frequencies are used throughout ("omega", rad per unit time);
 * sample rates and PSD frequency grids are in cycles per unit time.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(__cplusplus)
extern "C" {
#endif

typedef enum {
  QHET_OK = 0,
  QHET_ERR_PARSE = 1,      /* malformed config text */
  QHET_ERR_VALIDATION = 2, /* scenario invariant violated */
  QHET_ERR_DOMAIN = 3,     /* argument outside its domain */
  QHET_ERR_INDEX = 4,      /* bad mode index */
  QHET_ERR_SHAPE = 5,      /* state/transform dimension mismatch */
  QHET_ERR_LENGTH = 6,     /* record or lag length constraint violated */
  QHET_ERR_IO = 7,         /* file read/write failure */
  QHET_ERR_NULLPTR = 8,    /* required pointer argument was NULL */
  QHET_ERR_INTERNAL = 9
} qhet_status;

typedef struct qhet_scenario qhet_scenario;
typedef struct qhet_series qhet_series;       /* sampled photocurrent record */
typedef struct qhet_psd qhet_psd;             /* Welch PSD estimate */

typedef struct {
  double snr_in;
  double snr_out;
  double nf_db;
  char method[16]; /* "analytic" | "oracle" | "monte-carlo" */
} qhet_nf_result;

const char* qhet_version(void);
const char* qhet_last_error(void);

/* Deterministic per-task seed derivation (counter-based stream split). */
uint64_t qhet_derive_seed(uint64_t base, uint64_t index);

/* ---- scenario ---------------------------------------------------------- */

/* Config text: `key = value` lines, '#' comments. Keys: omega_s, omega_l,
 * alpha_s_mag, theta_s, epsilon_l, theta_l, r, q, bandwidth_B are required;
 * omega_i (default 2*omega_l - omega_s), delta_theta (default -theta_s) and
 * unit_system (scaled|si, default scaled) are optional. */
qhet_status qhet_scenario_parse(const char* text, qhet_scenario** out);
qhet_status qhet_scenario_load(const char* path, qhet_scenario** out);
/* Built-in near-degenerate reference scenario (same as configs/default.cfg). */
qhet_status qhet_scenario_default(qhet_scenario** out);

/* New scenario with one numeric key replaced and all invariants re-checked.
 * Setting omega_s or omega_l re-derives omega_i; setting theta_s re-derives
 * delta_theta when it was at its default. */
qhet_status qhet_scenario_with(const qhet_scenario* s, const char* key,
                               double value, qhet_scenario** out);
/* Same for the string-valued key unit_system ("scaled"|"si"). */
qhet_status qhet_scenario_with_str(const qhet_scenario* s, const char* key,
                                   const char* value, qhet_scenario** out);

/* Field or derived-parameter lookup. Accepts every config key plus:
 * omega (beat frequency), eta, gain_g, shot_level. */
qhet_status qhet_scenario_get(const qhet_scenario* s, const char* name,
                              double* out);

/* Canonical config text / its FNV-1a digest; pointers stay valid until the
 * handle is freed. */
const char* qhet_scenario_text(const qhet_scenario* s);
const char* qhet_scenario_hash(const qhet_scenario* s);

void qhet_scenario_free(qhet_scenario* s);

/* ---- closed-form results ------------------------------------------------ */

qhet_status qhet_snr_in(const qhet_scenario* s, double* out);
qhet_status qhet_snr_out(const qhet_scenario* s, double* out);
qhet_status qhet_output_power(const qhet_scenario* s, double* out);
qhet_status qhet_beat_signal(const qhet_scenario* s, double t, double* out);

/* strict != 0 turns |omega| > omega_l into QHET_ERR_DOMAIN instead of
 * continuing the square-root term as zero. */
qhet_status qhet_spectral_factor(const qhet_scenario* s, double omega,
                                 int strict, double* out);

#define QHET_PSD_EXACT 0
#define QHET_PSD_HIGH_GAIN 1
qhet_status qhet_noise_psd(const qhet_scenario* s, double omega, int form,
                           int strict, double* out);

qhet_status qhet_noise_figure(const qhet_scenario* s, qhet_nf_result* out);
qhet_status qhet_noise_figure_regular(double xi, double* out);

/* ---- Gaussian-engine oracle --------------------------------------------- */

/* Beat statistics of the prepared detection-chain state:
 * out[0..3] = cos mean, sin mean, cos var, sin var (vacuum = 1/2 per mode
 * per quadrature). */
qhet_status qhet_oracle_beat_stats(const qhet_scenario* s, double out[4]);
qhet_status qhet_oracle_output_power(const qhet_scenario* s, double* out);
qhet_status qhet_oracle_noise_psd(const qhet_scenario* s, double* out);
qhet_status qhet_oracle_noise_figure(const qhet_scenario* s,
                                     qhet_nf_result* out);

/* ---- time-domain synthesis ----------------------------------------------- */

qhet_status qhet_synthesize_photocurrent(const qhet_scenario* s, double fs,
                                         double duration, uint64_t seed,
                                         qhet_series** out);
/* Noise-only record with the scenario's one-sided density as target. */
qhet_status qhet_synthesize_noise(const qhet_scenario* s, int form, double fs,
                                  uint64_t n, uint64_t seed,
                                  qhet_series** out);

size_t qhet_series_length(const qhet_series* ts);
double qhet_series_fs(const qhet_series* ts);
uint64_t qhet_series_seed(const qhet_series* ts);
const double* qhet_series_samples(const qhet_series* ts);
const char* qhet_series_scenario_hash(const qhet_series* ts);

/* Biased autocorrelation of the fluctuations into out[0..max_lag]; when
 * beat_omega > 0 the beat quadratures are regressed out first. */
qhet_status qhet_series_autocorrelation(const qhet_series* ts, size_t max_lag,
                                        double beat_omega, double* out);

/* Raw little-endian float64 record plus JSON sidecar (fs, seed, hash). */
qhet_status qhet_series_save(const qhet_series* ts, const char* data_path,
                             const char* sidecar_path);
qhet_status qhet_series_save_csv(const qhet_series* ts, const char* path);

void qhet_series_free(qhet_series* ts);

/* ---- spectral estimation -------------------------------------------------- */

#define QHET_WINDOW_RECTANGULAR 0
#define QHET_WINDOW_HANN 1

qhet_status qhet_welch_psd(const qhet_series* ts, size_t segment_len,
                           double overlap, int window, qhet_psd** out);

size_t qhet_psd_length(const qhet_psd* p);
const double* qhet_psd_freqs(const qhet_psd* p); /* cycles per unit time */
const double* qhet_psd_values(const qhet_psd* p);
int qhet_psd_n_segments(const qhet_psd* p);

/* Noise density near angular frequency omega, excluding bins contaminated
 * by a tone at tone_omega (pass tone_omega < 0 when none). sigma may be
 * NULL. */
qhet_status qhet_psd_noise_at(const qhet_psd* p, double omega,
                              double tone_omega, double* value, double* sigma);

qhet_status qhet_psd_save_csv(const qhet_psd* p, const char* path);
qhet_status qhet_psd_save_json(const qhet_psd* p, const char* path);

void qhet_psd_free(qhet_psd* p);

/* Coherent demodulation at angular frequency omega over an integer number
 * of periods; power = (c^2 + s^2)/2 of the fitted pair. sigma may be NULL. */
qhet_status qhet_tone_power(const qhet_series* ts, double omega, double* power,
                            double* sigma);

/* Monte-Carlo noise figure of a photocurrent record (Welch defaults: hann,
 * 50% overlap, 4096-sample segments; >= 50 segments required). sigma_db may
 * be NULL. */
qhet_status qhet_measure_nf(const qhet_series* ts, const qhet_scenario* s,
                            qhet_nf_result* out, double* sigma_db);

/* ---- cross-method validation ---------------------------------------------- */

#define QHET_VALIDATE_QUICK 0
#define QHET_VALIDATE_FULL 1

/* Runs the invariant suite. Returns QHET_OK also when checks fail; inspect
 * *n_failed. *report (malloc'd, free with qhet_string_free) holds the
 * pass/fail table. */
qhet_status qhet_validate(int level, uint64_t seed, char** report,
                          int* n_checks, int* n_failed);

void qhet_string_free(char* s);

#if defined(__cplusplus)
}
#endif

#endif /* QHET_H */
