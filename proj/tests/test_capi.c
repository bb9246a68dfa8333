/* C-linkage smoke test of the shared-library surface: every family of calls
 * is exercised once from plain C, including the error paths. */

#include <qhet/qhet.h>

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int g_failures = 0;

#define EXPECT(cond, what)                                        \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "FAIL %s:%d  %s\n", __FILE__, __LINE__, what); \
      g_failures++;                                               \
    }                                                             \
  } while (0)

int main(void) {
  EXPECT(strlen(qhet_version()) > 0, "version string");

  /* parse + validation error naming the key */
  qhet_scenario* bad = NULL;
  qhet_status st = qhet_scenario_parse(
      "omega_l = 1\nomega_s = 1.001\nq = 1.5\nr = 0\nepsilon_l = 1\n"
      "alpha_s_mag = 1\ntheta_s = 0\ntheta_l = 0\nbandwidth_B = 1\n",
      &bad);
  EXPECT(st == QHET_ERR_VALIDATION, "q out of range maps to validation");
  EXPECT(strstr(qhet_last_error(), "q") != NULL, "message names the key");
  EXPECT(bad == NULL, "no handle on failure");

  qhet_scenario* scn = NULL;
  EXPECT(qhet_scenario_default(&scn) == QHET_OK, "default scenario");
  EXPECT(strlen(qhet_scenario_hash(scn)) == 16, "hash is 16 hex chars");

  double omega_l = 0.0, omega = 0.0;
  EXPECT(qhet_scenario_get(scn, "omega_l", &omega_l) == QHET_OK, "get");
  EXPECT(omega_l == 1.0, "default omega_l");
  EXPECT(qhet_scenario_get(scn, "omega", &omega) == QHET_OK, "get derived");
  EXPECT(omega > 0.0, "beat frequency positive");
  EXPECT(qhet_scenario_get(scn, "nonsense", &omega) == QHET_ERR_DOMAIN,
         "unknown field");

  /* closed forms at q = 1: 0 dB regardless of r */
  qhet_scenario* s25 = NULL;
  EXPECT(qhet_scenario_with(scn, "r", 2.5, &s25) == QHET_OK, "with r");
  qhet_nf_result nf;
  EXPECT(qhet_noise_figure(s25, &nf) == QHET_OK, "noise figure");
  EXPECT(fabs(nf.nf_db) < 1e-12, "0 dB at unit efficiency");
  EXPECT(strcmp(nf.method, "analytic") == 0, "method tag");

  double nf_reg = 0.0;
  EXPECT(qhet_noise_figure_regular(0.5, &nf_reg) == QHET_OK, "nf regular");
  EXPECT(fabs(nf_reg - 3.0102999566398120) < 1e-12, "10 log10 2");
  EXPECT(qhet_noise_figure_regular(1.5, &nf_reg) == QHET_ERR_DOMAIN,
         "xi domain error");

  /* oracle equals analytic */
  qhet_nf_result nfo;
  EXPECT(qhet_oracle_noise_figure(s25, &nfo) == QHET_OK, "oracle nf");
  EXPECT(fabs(nfo.nf_db - nf.nf_db) < 1e-9, "oracle vs analytic");
  double beat[4];
  EXPECT(qhet_oracle_beat_stats(s25, beat) == QHET_OK, "beat stats");
  EXPECT(fabs(beat[0] - sqrt(2.0) * exp(2.5)) < 1e-9, "cos mean e^r");

  double chi = 0.0, f_factor = 0.0;
  EXPECT(qhet_noise_psd(s25, 0.0, QHET_PSD_EXACT, 0, &chi) == QHET_OK, "chi");
  EXPECT(chi > 0.0, "chi positive");
  EXPECT(qhet_noise_psd(s25, 0.0, 17, 0, &chi) == QHET_ERR_DOMAIN,
         "bad form");
  EXPECT(qhet_spectral_factor(s25, 5.0, 1, &f_factor) == QHET_ERR_DOMAIN,
         "strict outside the band");

  /* synthesis: deterministic, measurable  */
  qhet_scenario* mc = NULL;
  EXPECT(qhet_scenario_with(scn, "omega_l", 1.0e4, &mc) == QHET_OK, "mc 1");
  qhet_scenario* mc2 = NULL;
  EXPECT(qhet_scenario_with(mc, "omega_s", 1.0e4 + 2.0 * M_PI, &mc2) == QHET_OK,
         "mc 2");
  qhet_scenario* mc3 = NULL;
  EXPECT(qhet_scenario_with(mc2, "alpha_s_mag", 500.0, &mc3) == QHET_OK,
         "mc 3");

  qhet_series* ts = NULL;
  EXPECT(qhet_synthesize_photocurrent(mc3, 64.0, 6432.0, 42, &ts) == QHET_OK,
         "synthesize");
  EXPECT(qhet_series_length(ts) == 411648, "record length");
  EXPECT(qhet_series_fs(ts) == 64.0, "fs");
  EXPECT(qhet_series_seed(ts) == 42, "seed");
  EXPECT(qhet_series_samples(ts) != NULL, "sample pointer");
  EXPECT(strcmp(qhet_series_scenario_hash(ts), qhet_scenario_hash(mc3)) == 0,
         "hash provenance");

  qhet_series* ts_b = NULL;
  EXPECT(qhet_synthesize_photocurrent(mc3, 64.0, 6432.0, 42, &ts_b) == QHET_OK,
         "synthesize again");
  EXPECT(memcmp(qhet_series_samples(ts), qhet_series_samples(ts_b),
                qhet_series_length(ts) * sizeof(double)) == 0,
         "bit-identical for the same seed");
  qhet_series_free(ts_b);

  double acf[4];
  double beat_omega = 0.0;
  qhet_scenario_get(mc3, "omega", &beat_omega);
  EXPECT(qhet_series_autocorrelation(ts, 3, beat_omega, acf) == QHET_OK,
         "autocorrelation");
  EXPECT(acf[0] > 0.0, "lag-0 positive");

  qhet_psd* psd = NULL;
  EXPECT(qhet_welch_psd(ts, 4096, 0.5, QHET_WINDOW_HANN, &psd) == QHET_OK,
         "welch");
  EXPECT(qhet_psd_length(psd) == 2049, "bin count");
  EXPECT(qhet_psd_n_segments(psd) >= 200, "segments");
  EXPECT(qhet_psd_freqs(psd)[1] > 0.0, "freq grid");

  double tone = 0.0, sigma = 0.0;
  EXPECT(qhet_tone_power(ts, beat_omega, &tone, &sigma) == QHET_OK, "tone");
  double p_out = 0.0;
  EXPECT(qhet_output_power(mc3, &p_out) == QHET_OK, "p_out");
  EXPECT(fabs(tone - p_out) < 0.05 * p_out, "tone near analytic power");

  double floor_val = 0.0, floor_sigma = 0.0;
  EXPECT(qhet_psd_noise_at(psd, beat_omega, beat_omega, &floor_val,
                           &floor_sigma) == QHET_OK,
         "psd_noise_at");
  EXPECT(floor_val > 0.0, "noise floor positive");

  qhet_nf_result mcnf;
  double mcsigma = 0.0;
  EXPECT(qhet_measure_nf(ts, mc3, &mcnf, &mcsigma) == QHET_OK, "measure nf");
  EXPECT(strcmp(mcnf.method, "monte-carlo") == 0, "mc method tag");
  EXPECT(fabs(mcnf.nf_db) < 0.5, "mc nf near 0 dB");

  /* io */
  EXPECT(qhet_series_save(ts, "/tmp/qhet_capi_ts.f64",
                          "/tmp/qhet_capi_ts.json") == QHET_OK,
         "series save");
  EXPECT(qhet_psd_save_csv(psd, "/tmp/qhet_capi_psd.csv") == QHET_OK,
         "psd csv");
  EXPECT(qhet_psd_save_json(psd, "/tmp/qhet_capi_psd.json") == QHET_OK,
         "psd json");
  remove("/tmp/qhet_capi_ts.f64");
  remove("/tmp/qhet_capi_ts.json");
  remove("/tmp/qhet_capi_psd.csv");
  remove("/tmp/qhet_capi_psd.json");

  /* null-pointer contract */
  EXPECT(qhet_snr_in(NULL, &chi) == QHET_ERR_NULLPTR, "null scenario");
  EXPECT(qhet_snr_in(scn, NULL) == QHET_ERR_NULLPTR, "null out");

  /* seed derivation is stable */
  EXPECT(qhet_derive_seed(1, 2) == qhet_derive_seed(1, 2), "seed stable");
  EXPECT(qhet_derive_seed(1, 2) != qhet_derive_seed(1, 3), "seed distinct");

  qhet_psd_free(psd);
  qhet_series_free(ts);
  qhet_scenario_free(mc);
  qhet_scenario_free(mc2);
  qhet_scenario_free(mc3);
  qhet_scenario_free(s25);
  qhet_scenario_free(scn);

  if (g_failures) {
    fprintf(stderr, "%d C API check(s) failed\n", g_failures);
    return 1;
  }
  printf("C API checks passed\n");
  return 0;
}
