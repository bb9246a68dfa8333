// qhet CLI: analytic evaluation, parameter sweeps, end-to-end simulation and
// the cross-method validation suite, all through the shared-library C API.

#include <qhet/qhet.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using nlohmann::ordered_json;

volatile std::sig_atomic_t g_interrupted = 0;

void on_sigint(int) { g_interrupted = 1; }

// Exit classes: 0 ok, 1 validation failure, 2 config error, 3 domain error.
int exit_code_for(qhet_status st) {
  switch (st) {
    case QHET_OK: return 0;
    case QHET_ERR_PARSE:
    case QHET_ERR_VALIDATION:
    case QHET_ERR_IO:
    case QHET_ERR_NULLPTR: return 2;
    default: return 3;
  }
}

struct CliError {
  int code;
  std::string message;
};

void check(qhet_status st) {
  if (st != QHET_OK) throw CliError{exit_code_for(st), qhet_last_error()};
}

struct ScenarioHandle {
  qhet_scenario* p = nullptr;
  ScenarioHandle() = default;
  explicit ScenarioHandle(qhet_scenario* h) : p(h) {}
  ScenarioHandle(ScenarioHandle&& o) noexcept : p(o.p) { o.p = nullptr; }
  ScenarioHandle& operator=(ScenarioHandle&& o) noexcept {
    if (this != &o) {
      qhet_scenario_free(p);
      p = o.p;
      o.p = nullptr;
    }
    return *this;
  }
  ScenarioHandle(const ScenarioHandle&) = delete;
  ScenarioHandle& operator=(const ScenarioHandle&) = delete;
  ~ScenarioHandle() { qhet_scenario_free(p); }
};

struct SeriesHandle {
  qhet_series* p = nullptr;
  ~SeriesHandle() { qhet_series_free(p); }
};

struct PsdHandle {
  qhet_psd* p = nullptr;
  ~PsdHandle() { qhet_psd_free(p); }
};

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Fixed 9-decimal output; extreme magnitudes of linear quantities fall back
// to scientific notation. A value that rounds to zero prints unsigned.
std::string format9(double v, bool db_scale) {
  char buf[512];
  if (!db_scale && v != 0.0 &&
      (std::abs(v) >= 1e15 || std::abs(v) < 1e-9)) {
    std::snprintf(buf, sizeof(buf), "%.9e", v);
    return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  std::string s = buf;
  bool zeros = true;
  for (char c : s)
    if (c != '-' && c != '.' && c != '0') {
      zeros = false;
      break;
    }
  if (zeros && !s.empty() && s[0] == '-') s.erase(0, 1);
  return s;
}

double scenario_get(const qhet_scenario* s, const char* name) {
  double v = 0.0;
  check(qhet_scenario_get(s, name, &v));
  return v;
}

// ---- scenario assembly ------------------------------------------------------

struct Override {
  std::string key;
  double value;
};

ScenarioHandle build_scenario(const std::string& config_path,
                              const std::string& unit_system,
                              const std::vector<Override>& overrides) {
  ScenarioHandle h;
  if (config_path.empty()) {
    check(qhet_scenario_default(&h.p));
  } else {
    check(qhet_scenario_load(config_path.c_str(), &h.p));
  }
  if (!unit_system.empty()) {
    qhet_scenario* next = nullptr;
    check(qhet_scenario_with_str(h.p, "unit_system", unit_system.c_str(), &next));
    h = ScenarioHandle(next);
  }
  // Frequencies first so omega_i re-derivation happens before the rest.
  static const char* kOrder[] = {"omega_l",   "omega_s",   "omega_i",
                                 "alpha_s_mag", "theta_s", "epsilon_l",
                                 "theta_l",   "r",         "q",
                                 "bandwidth_B", "delta_theta"};
  for (const char* key : kOrder)
    for (const auto& o : overrides)
      if (o.key == key) {
        qhet_scenario* next = nullptr;
        check(qhet_scenario_with(h.p, key, o.value, &next));
        h = ScenarioHandle(next);
      }
  return h;
}

// ---- analytic subcommand ----------------------------------------------------

struct AnalyticArgs {
  std::string quantity;
  double xi = 0.5;
  bool xi_set = false;
  double omega = 0.0;
  bool omega_set = false;
  std::string form = "exact";
  bool strict = false;
  double t = 0.0;
};

int run_analytic(const ScenarioHandle& scn, const AnalyticArgs& a) {
  const std::string& quantity = a.quantity;
  double value = 0.0;
  bool db_scale = false;
  if (quantity == "nf") {
    qhet_nf_result res;
    check(qhet_noise_figure(scn.p, &res));
    value = res.nf_db;
    db_scale = true;
  } else if (quantity == "nf-regular") {
    check(qhet_noise_figure_regular(a.xi_set ? a.xi : scenario_get(scn.p, "q"),
                                    &value));
    db_scale = true;
  } else if (quantity == "snr-in") {
    check(qhet_snr_in(scn.p, &value));
  } else if (quantity == "snr-out") {
    check(qhet_snr_out(scn.p, &value));
  } else if (quantity == "p-out") {
    check(qhet_output_power(scn.p, &value));
  } else if (quantity == "chi") {
    const double omega = a.omega_set ? a.omega : scenario_get(scn.p, "omega");
    const int form = (a.form == "high_gain") ? QHET_PSD_HIGH_GAIN
                                             : QHET_PSD_EXACT;
    if (a.form != "exact" && a.form != "high_gain")
      throw CliError{2, "--form must be exact or high_gain"};
    check(qhet_noise_psd(scn.p, omega, form, a.strict ? 1 : 0, &value));
  } else if (quantity == "spectral-f") {
    const double omega = a.omega_set ? a.omega : scenario_get(scn.p, "omega");
    check(qhet_spectral_factor(scn.p, omega, a.strict ? 1 : 0, &value));
  } else if (quantity == "beat") {
    check(qhet_beat_signal(scn.p, a.t, &value));
  } else {
    throw CliError{2, "unknown quantity `" + quantity +
                          "`; expected one of nf, nf-regular, snr-in, "
                          "snr-out, p-out, chi, spectral-f, beat"};
  }
  std::printf("%s\n", format9(value, db_scale).c_str());
  return 0;
}

// ---- sweep subcommand -------------------------------------------------------

struct SweepSpec {
  std::string parameter;  // r | q | theta_l | omega
  std::vector<double> values;
  std::vector<std::string> outputs;
  std::vector<std::string> methods;
  uint64_t seed_base = 1;
  bool seed_base_set = false;
  double mc_fs = 64.0;
  double mc_duration = 12816.0;  // 400 hann segments of 4096 at 50% overlap
  size_t mc_segment_len = 4096;
  int mc_seeds_per_point = 1;
  std::map<std::string, std::string> set_overrides;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t b = item.find_first_not_of(" \t");
    size_t e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

SweepSpec parse_sweep_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{2, "cannot open sweep file: " + path};
  std::map<std::string, std::string> keys;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const size_t b = line.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw CliError{2, "sweep file line " + std::to_string(lineno) +
                            ": expected key = value"};
    auto trim = [](std::string s) {
      const size_t x = s.find_first_not_of(" \t\r\n");
      if (x == std::string::npos) return std::string();
      const size_t y = s.find_last_not_of(" \t\r\n");
      return s.substr(x, y - x + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (keys.count(key))
      throw CliError{2, "sweep file: duplicate key `" + key + "`"};
    keys[key] = value;
  }

  static const std::set<std::string> known = {
      "parameter", "values", "start", "stop", "count", "scale",
      "as_gain_db", "outputs", "methods", "seed_base", "mc_fs",
      "mc_duration", "mc_segment_len", "mc_seeds_per_point"};
  for (const auto& [k, v] : keys)
    if (!known.count(k) && k.rfind("set.", 0) != 0)
      throw CliError{2, "sweep file: unknown key `" + k + "`"};

  auto need = [&keys](const char* k) -> std::string {
    auto it = keys.find(k);
    if (it == keys.end())
      throw CliError{2, std::string("sweep file: missing key `") + k + "`"};
    return it->second;
  };
  auto to_double = [](const std::string& k, const std::string& v) {
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
      throw CliError{2, "sweep file: invalid number for `" + k + "`: " + v};
    return d;
  };

  SweepSpec spec;
  spec.parameter = need("parameter");
  if (spec.parameter != "r" && spec.parameter != "q" &&
      spec.parameter != "theta_l" && spec.parameter != "omega")
    throw CliError{2, "sweep file: parameter must be r, q, theta_l or omega"};

  const bool as_gain_db =
      keys.count("as_gain_db") && keys["as_gain_db"] == "true";
  if (as_gain_db && spec.parameter != "r")
    throw CliError{2, "sweep file: as_gain_db applies only to parameter r"};

  if (keys.count("values")) {
    for (const auto& v : split_list(keys["values"]))
      spec.values.push_back(to_double("values", v));
  } else {
    const double start = to_double("start", need("start"));
    const double stop = to_double("stop", need("stop"));
    const long count = std::lround(to_double("count", need("count")));
    if (count < 1 || count > 100000)
      throw CliError{2, "sweep file: count must lie in [1, 100000]"};
    const std::string scale =
        keys.count("scale") ? keys["scale"] : std::string("linear");
    for (long i = 0; i < count; ++i) {
      const double f =
          count == 1 ? 0.0
                     : static_cast<double>(i) / static_cast<double>(count - 1);
      if (scale == "linear") {
        spec.values.push_back(start + f * (stop - start));
      } else if (scale == "log") {
        if (start <= 0.0 || stop <= 0.0)
          throw CliError{2, "sweep file: log scale needs positive bounds"};
        spec.values.push_back(start * std::pow(stop / start, f));
      } else {
        throw CliError{2, "sweep file: scale must be linear or log"};
      }
    }
  }
  if (spec.values.empty())
    throw CliError{2, "sweep file: values must be nonempty"};
  if (as_gain_db)
    for (double& v : spec.values) v = v * std::log(10.0) / 20.0;

  spec.outputs = split_list(need("outputs"));
  static const std::set<std::string> known_outputs = {"nf_db", "p_out", "chi",
                                                      "F", "snr_out"};
  for (const auto& o : spec.outputs)
    if (!known_outputs.count(o))
      throw CliError{2, "sweep file: unknown output `" + o + "`"};

  spec.methods = split_list(need("methods"));
  for (const auto& m : spec.methods) {
    if (m != "analytic" && m != "oracle" && m != "monte-carlo")
      throw CliError{2, "sweep file: unknown method `" + m + "`"};
    if (m == "oracle" &&
        std::find(spec.outputs.begin(), spec.outputs.end(), "F") !=
            spec.outputs.end())
      throw CliError{2, "sweep file: the oracle method cannot produce F"};
    if (m == "oracle" && spec.parameter == "omega")
      throw CliError{2,
                     "sweep file: the oracle method has no omega dependence"};
  }

  if (keys.count("seed_base")) {
    spec.seed_base = std::stoull(keys["seed_base"]);
    spec.seed_base_set = true;
  }
  if (keys.count("mc_fs")) spec.mc_fs = to_double("mc_fs", keys["mc_fs"]);
  if (keys.count("mc_duration"))
    spec.mc_duration = to_double("mc_duration", keys["mc_duration"]);
  if (keys.count("mc_segment_len"))
    spec.mc_segment_len =
        static_cast<size_t>(std::stoull(keys["mc_segment_len"]));
  if (keys.count("mc_seeds_per_point"))
    spec.mc_seeds_per_point = std::stoi(keys["mc_seeds_per_point"]);
  if (spec.mc_seeds_per_point < 1 || spec.mc_seeds_per_point > 1000)
    throw CliError{2, "sweep file: mc_seeds_per_point must lie in [1, 1000]"};

  for (const auto& [k, v] : keys)
    if (k.rfind("set.", 0) == 0) spec.set_overrides[k.substr(4)] = v;
  return spec;
}

struct SweepRecord {
  double param_value;
  std::string quantity;
  std::string method;
  double value;
  double sigma = 0.0;
  bool has_sigma = false;
  uint64_t seed = 0;
  bool has_seed = false;
};

ScenarioHandle sweep_point_scenario(const ScenarioHandle& base,
                                    const SweepSpec& spec, double value) {
  ScenarioHandle h;
  check(qhet_scenario_parse(qhet_scenario_text(base.p), &h.p));
  for (const auto& [k, v] : spec.set_overrides) {
    qhet_scenario* next = nullptr;
    if (k == "unit_system")
      check(qhet_scenario_with_str(h.p, k.c_str(), v.c_str(), &next));
    else
      check(qhet_scenario_with(h.p, k.c_str(), std::strtod(v.c_str(), nullptr),
                               &next));
    h = ScenarioHandle(next);
  }
  if (spec.parameter != "omega") {
    qhet_scenario* next = nullptr;
    check(qhet_scenario_with(h.p, spec.parameter.c_str(), value, &next));
    h = ScenarioHandle(next);
  }
  return h;
}

void validate_sweep_domain(const ScenarioHandle& base, const SweepSpec& spec) {
  const double omega_l = scenario_get(base.p, "omega_l");
  for (double v : spec.values) {
    if (spec.parameter == "q" && (v <= 0.0 || v > 1.0))
      throw CliError{2, "sweep file: q value " + fmt_g17(v) +
                            " outside (0, 1]"};
    if (spec.parameter == "r" && v < 0.0)
      throw CliError{2, "sweep file: r value " + fmt_g17(v) + " negative"};
    if (spec.parameter == "omega" && std::abs(v) >= omega_l)
      throw CliError{2, "sweep file: |omega| value " + fmt_g17(v) +
                            " must stay below omega_l"};
  }
}

std::vector<SweepRecord> evaluate_sweep_point(const ScenarioHandle& base,
                                              const SweepSpec& spec,
                                              size_t index) {
  const double pvalue = spec.values[index];
  ScenarioHandle scn = sweep_point_scenario(base, spec, pvalue);
  const double omega_eval = (spec.parameter == "omega")
                                ? pvalue
                                : scenario_get(scn.p, "omega");
  const double bandwidth = scenario_get(scn.p, "bandwidth_B");

  std::vector<SweepRecord> records;
  auto add = [&](const std::string& quantity, const std::string& method,
                 double value) -> SweepRecord& {
    records.push_back({pvalue, quantity, method, value, 0.0, false, 0, false});
    return records.back();
  };

  for (const auto& method : spec.methods) {
    if (method == "analytic") {
      for (const auto& out : spec.outputs) {
        double v = 0.0;
        if (out == "nf_db") {
          qhet_nf_result res;
          check(qhet_noise_figure(scn.p, &res));
          v = res.nf_db;
        } else if (out == "p_out") {
          check(qhet_output_power(scn.p, &v));
        } else if (out == "chi") {
          check(qhet_noise_psd(scn.p, omega_eval, QHET_PSD_EXACT, 0, &v));
        } else if (out == "F") {
          check(qhet_spectral_factor(scn.p, omega_eval, 0, &v));
        } else if (out == "snr_out") {
          check(qhet_snr_out(scn.p, &v));
        }
        add(out, method, v);
      }
    } else if (method == "oracle") {
      for (const auto& out : spec.outputs) {
        double v = 0.0;
        if (out == "nf_db") {
          qhet_nf_result res;
          check(qhet_oracle_noise_figure(scn.p, &res));
          v = res.nf_db;
        } else if (out == "p_out") {
          check(qhet_oracle_output_power(scn.p, &v));
        } else if (out == "chi") {
          check(qhet_oracle_noise_psd(scn.p, &v));
        } else if (out == "snr_out") {
          qhet_nf_result res;
          check(qhet_oracle_noise_figure(scn.p, &res));
          v = res.snr_out;
        }
        add(out, method, v);
      }
    } else {  // monte-carlo
      struct Acc {
        double sum = 0.0, var = 0.0;
        int n = 0;
      };
      std::map<std::string, Acc> acc;
      const uint64_t point_seed = qhet_derive_seed(spec.seed_base, index);
      for (int si = 0; si < spec.mc_seeds_per_point; ++si) {
        const uint64_t seed = qhet_derive_seed(point_seed, si);
        SeriesHandle ts;
        check(qhet_synthesize_photocurrent(scn.p, spec.mc_fs, spec.mc_duration,
                                           seed, &ts.p));
        PsdHandle psd;
        check(qhet_welch_psd(ts.p, spec.mc_segment_len, 0.5, QHET_WINDOW_HANN,
                             &psd.p));
        const double beat_omega = scenario_get(scn.p, "omega");
        double tone = 0.0, tone_sigma = 0.0;
        check(qhet_tone_power(ts.p, beat_omega, &tone, &tone_sigma));
        double chi = 0.0, chi_sigma = 0.0;
        check(qhet_psd_noise_at(psd.p, omega_eval, beat_omega, &chi,
                                &chi_sigma));
        for (const auto& out : spec.outputs) {
          double v = 0.0, s = 0.0;
          if (out == "nf_db") {
            qhet_nf_result res;
            check(qhet_measure_nf(ts.p, scn.p, &res, &s));
            v = res.nf_db;
          } else if (out == "p_out") {
            v = tone;
            s = tone_sigma;
          } else if (out == "chi") {
            v = chi;
            s = chi_sigma;
          } else if (out == "F") {
            continue;  // no direct Monte-Carlo estimator for F
          } else if (out == "snr_out") {
            v = tone / (chi * bandwidth);
            const double rt = tone_sigma / tone, rc = chi_sigma / chi;
            s = v * std::sqrt(rt * rt + rc * rc);
          }
          auto& a = acc[out];
          a.sum += v;
          a.var += s * s;
          a.n += 1;
        }
      }
      for (const auto& out : spec.outputs) {
        auto it = acc.find(out);
        if (it == acc.end()) continue;
        const auto& a = it->second;
        auto& rec = add(out, method, a.sum / a.n);
        rec.sigma = std::sqrt(a.var) / a.n;
        rec.has_sigma = true;
        rec.seed = point_seed;
        rec.has_seed = true;
      }
    }
  }
  return records;
}

int run_sweep(const ScenarioHandle& base, const SweepSpec& spec,
              const std::string& out_dir, const std::string& format) {
  validate_sweep_domain(base, spec);
  std::filesystem::create_directories(out_dir);

  const auto t0 = std::chrono::steady_clock::now();
  const size_t n_points = spec.values.size();
  std::vector<std::vector<SweepRecord>> results(n_points);
  std::vector<char> done(n_points, 0);

  unsigned n_threads = std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  if (const char* env = std::getenv("QHET_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n_threads = std::min<unsigned>(n_threads, cap);
  }
  n_threads = std::min<unsigned>(n_threads, n_points);

  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::string fail_message;
  int fail_code = 0;
  std::mutex fail_mutex;

  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= n_points || g_interrupted || failed.load()) return;
      try {
        results[i] = evaluate_sweep_point(base, spec, i);
        done[i] = 1;
      } catch (const CliError& e) {
        std::lock_guard<std::mutex> lock(fail_mutex);
        if (!failed.exchange(true)) {
          fail_message = e.message;
          fail_code = e.code;
        }
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failed.load()) throw CliError{fail_code, fail_message};

  const bool truncated = g_interrupted != 0;
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  // CSV: '#' header block, one header row, one row per point x quantity x
  // method. Bodies are byte-stable for a fixed seed.
  if (format == "csv" || format == "both") {
    std::ofstream csv(out_dir + "/sweep.csv", std::ios::binary);
    if (!csv) throw CliError{2, "cannot write " + out_dir + "/sweep.csv"};
    csv << "# qhet " << qhet_version() << "\n";
    csv << "# seed_base = " << spec.seed_base << "\n";
    csv << "# scenario_hash = " << qhet_scenario_hash(base.p) << "\n";
    csv << "# parameter = " << spec.parameter << "\n";
    csv << "# truncated = " << (truncated ? "true" : "false") << "\n";
    csv << "parameter,value,quantity,method,result,sigma,seed\n";
    for (size_t i = 0; i < n_points; ++i) {
      if (!done[i]) continue;
      for (const auto& r : results[i]) {
        csv << spec.parameter << "," << fmt_g17(r.param_value) << ","
            << r.quantity << "," << r.method << "," << fmt_g17(r.value) << ",";
        if (r.has_sigma) csv << fmt_g17(r.sigma);
        csv << ",";
        if (r.has_seed) csv << r.seed;
        csv << "\n";
      }
    }
  }

  if (format == "json" || format == "both") {
    ordered_json j;
    j["version"] = qhet_version();
    j["seed_base"] = spec.seed_base;
    j["scenario_hash"] = qhet_scenario_hash(base.p);
    j["scenario_config"] = qhet_scenario_text(base.p);
    j["parameter"] = spec.parameter;
    j["truncated"] = truncated;
    j["wall_clock_s"] = wall;
    ordered_json records = ordered_json::array();
    for (size_t i = 0; i < n_points; ++i) {
      if (!done[i]) continue;
      for (const auto& r : results[i]) {
        ordered_json rec;
        rec["value"] = r.param_value;
        rec["quantity"] = r.quantity;
        rec["method"] = r.method;
        rec["result"] = r.value;
        if (r.has_sigma) rec["sigma"] = r.sigma;
        if (r.has_seed) rec["seed"] = std::to_string(r.seed);
        records.push_back(std::move(rec));
      }
    }
    j["records"] = std::move(records);
    std::ofstream js(out_dir + "/sweep.json", std::ios::binary);
    if (!js) throw CliError{2, "cannot write " + out_dir + "/sweep.json"};
    js << j.dump(2) << "\n";
  }

  if (truncated) {
    std::fprintf(stderr, "interrupted: partial results flagged truncated\n");
    return 130;
  }
  return 0;
}

// ---- simulate subcommand ----------------------------------------------------

int run_simulate(const ScenarioHandle& scn, double fs, double duration,
                 size_t segment_len, uint64_t seed, const std::string& out_dir,
                 const std::string& format) {
  std::filesystem::create_directories(out_dir);

  SeriesHandle ts;
  check(qhet_synthesize_photocurrent(scn.p, fs, duration, seed, &ts.p));
  check(qhet_series_save(ts.p, (out_dir + "/timeseries.f64").c_str(),
                         (out_dir + "/timeseries.json").c_str()));
  if (qhet_series_length(ts.p) <= 65536)
    check(qhet_series_save_csv(ts.p, (out_dir + "/timeseries.csv").c_str()));

  PsdHandle psd;
  check(qhet_welch_psd(ts.p, segment_len, 0.5, QHET_WINDOW_HANN, &psd.p));
  if (format == "csv" || format == "both")
    check(qhet_psd_save_csv(psd.p, (out_dir + "/psd.csv").c_str()));
  if (format == "json" || format == "both")
    check(qhet_psd_save_json(psd.p, (out_dir + "/psd.json").c_str()));

  qhet_nf_result nf;
  double nf_sigma = 0.0;
  check(qhet_measure_nf(ts.p, scn.p, &nf, &nf_sigma));

  const double beat_omega = scenario_get(scn.p, "omega");
  double tone = 0.0, tone_sigma = 0.0;
  check(qhet_tone_power(ts.p, beat_omega, &tone, &tone_sigma));
  double chi = 0.0, chi_sigma = 0.0;
  check(qhet_psd_noise_at(psd.p, beat_omega, beat_omega, &chi, &chi_sigma));

  qhet_nf_result nf_analytic;
  check(qhet_noise_figure(scn.p, &nf_analytic));

  ordered_json j;
  j["version"] = qhet_version();
  j["scenario_hash"] = qhet_scenario_hash(scn.p);
  j["scenario_config"] = qhet_scenario_text(scn.p);
  j["seed"] = std::to_string(seed);
  j["fs"] = fs;
  j["duration"] = duration;
  j["n_samples"] = qhet_series_length(ts.p);
  j["n_segments"] = qhet_psd_n_segments(psd.p);
  j["tone_power"] = tone;
  j["tone_power_sigma"] = tone_sigma;
  j["psd_at_omega"] = chi;
  j["psd_at_omega_sigma"] = chi_sigma;
  j["snr_in"] = nf.snr_in;
  j["snr_out"] = nf.snr_out;
  j["nf_db"] = nf.nf_db;
  j["nf_sigma_db"] = nf_sigma;
  j["method"] = nf.method;
  j["nf_db_analytic"] = nf_analytic.nf_db;
  std::ofstream js(out_dir + "/summary.json", std::ios::binary);
  if (!js) throw CliError{2, "cannot write " + out_dir + "/summary.json"};
  js << j.dump(2) << "\n";

  std::printf("nf_db = %s +- %s (analytic %s)\n",
              format9(nf.nf_db, true).c_str(), format9(nf_sigma, true).c_str(),
              format9(nf_analytic.nf_db, true).c_str());
  return 0;
}

// ---- validate subcommand ----------------------------------------------------

int run_validate(const std::string& level, uint64_t seed) {
  int lvl;
  if (level == "quick")
    lvl = QHET_VALIDATE_QUICK;
  else if (level == "full")
    lvl = QHET_VALIDATE_FULL;
  else
    throw CliError{2, "--level must be quick or full"};
  char* report = nullptr;
  int n_checks = 0, n_failed = 0;
  check(qhet_validate(lvl, seed, &report, &n_checks, &n_failed));
  if (report) {
    std::fputs(report, stdout);
    qhet_string_free(report);
  }
  return n_failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_sigint);

  CLI::App app{"qhet — heterodyne detection with a quantum-correlated image "
               "band: simulator and analysis toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string format = "both";
  std::string unit_system;
  uint64_t seed = 1;
  app.add_option("--config", config_path, "scenario config file")
      ->envname("QHET_CONFIG");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "base random seed");
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_option("--unit-system", unit_system, "unit system override")
      ->check(CLI::IsMember({"scaled", "si"}));

  // analytic
  auto* cmd_analytic = app.add_subcommand(
      "analytic", "evaluate a closed-form quantity and print it");
  AnalyticArgs aa;
  std::vector<Override> overrides;
  cmd_analytic->add_option("quantity", aa.quantity,
                           "nf | nf-regular | snr-in | snr-out | p-out | chi "
                           "| spectral-f | beat")
      ->required();
  auto add_override = [&overrides](CLI::App* cmd, const char* flag,
                                   const char* key, const char* help) {
    cmd->add_option_function<double>(
        flag,
        [&overrides, key](const double& v) {
          overrides.push_back({key, v});
        },
        help);
  };
  add_override(cmd_analytic, "--q", "q", "quantum efficiency override");
  add_override(cmd_analytic, "--r", "r", "squeeze parameter override");
  add_override(cmd_analytic, "--theta-l", "theta_l", "LO phase override");
  add_override(cmd_analytic, "--theta-s", "theta_s", "signal phase override");
  add_override(cmd_analytic, "--alpha", "alpha_s_mag",
               "signal amplitude override");
  add_override(cmd_analytic, "--epsilon-l", "epsilon_l",
               "LO amplitude override");
  add_override(cmd_analytic, "--omega-s", "omega_s",
               "signal frequency override");
  add_override(cmd_analytic, "--omega-l", "omega_l", "LO frequency override");
  add_override(cmd_analytic, "--omega-i", "omega_i",
               "image frequency override");
  add_override(cmd_analytic, "--bandwidth", "bandwidth_B",
               "measurement bandwidth override");
  add_override(cmd_analytic, "--delta-theta", "delta_theta",
               "composite phase override");
  cmd_analytic->add_option("--xi", aa.xi, "efficiency for nf-regular")
      ->each([&aa](const std::string&) { aa.xi_set = true; });
  cmd_analytic->add_option("--omega", aa.omega,
                           "evaluation frequency for chi/spectral-f")
      ->each([&aa](const std::string&) { aa.omega_set = true; });
  cmd_analytic->add_option("--form", aa.form, "chi form: exact | high_gain");
  cmd_analytic->add_flag("--strict", aa.strict,
                         "error when |omega| exceeds omega_l");
  cmd_analytic->add_option("--t", aa.t, "evaluation time for beat");

  // sweep
  auto* cmd_sweep =
      app.add_subcommand("sweep", "run a parameter sweep from a sweep file");
  std::string sweep_path;
  cmd_sweep->add_option("--sweep", sweep_path, "sweep spec file")->required();

  // simulate
  auto* cmd_simulate = app.add_subcommand(
      "simulate", "synthesize a record, estimate its PSD and noise figure");
  double sim_fs = 64.0;
  double sim_duration = 25632.0;
  size_t sim_segment = 4096;
  cmd_simulate->add_option("--fs", sim_fs, "sample rate");
  cmd_simulate->add_option("--duration", sim_duration, "record duration");
  cmd_simulate->add_option("--segment-len", sim_segment,
                           "Welch segment length");

  // validate
  auto* cmd_validate = app.add_subcommand(
      "validate", "run the cross-method invariant suite");
  std::string level = "quick";
  cmd_validate->add_option("--level", level, "quick | full")
      ->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // bad usage is a config error
  }

  try {
    if (cmd_analytic->parsed()) {
      ScenarioHandle scn = build_scenario(config_path, unit_system, overrides);
      return run_analytic(scn, aa);
    }
    if (cmd_sweep->parsed()) {
      SweepSpec spec = parse_sweep_file(sweep_path);
      if (!spec.seed_base_set) spec.seed_base = seed;
      ScenarioHandle base = build_scenario(config_path, unit_system, {});
      return run_sweep(base, spec, out_dir, format);
    }
    if (cmd_simulate->parsed()) {
      ScenarioHandle scn = build_scenario(config_path, unit_system, {});
      return run_simulate(scn, sim_fs, sim_duration, sim_segment, seed,
                          out_dir, format);
    }
    if (cmd_validate->parsed()) {
      return run_validate(level, seed);
    }
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
