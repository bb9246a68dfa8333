#include "scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "errors.hpp"
#include "textutil.hpp"

namespace qhet {

namespace {

const std::set<std::string> kKnownKeys = {
    "omega_s",   "omega_i",     "omega_l",     "alpha_s_mag",
    "theta_s",   "epsilon_l",   "theta_l",     "r",
    "q",         "bandwidth_B", "unit_system", "delta_theta"};

const char* kRequiredKeys[] = {"omega_s", "omega_l", "alpha_s_mag",
                               "theta_s", "epsilon_l", "theta_l",
                               "r",       "q",         "bandwidth_B"};

double parse_number(const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || !trim(std::string_view(end)).empty())
    throw ParseError("invalid number for key `" + key + "`: " + value);
  return v;
}

void require_finite(const char* key, double v) {
  if (!std::isfinite(v))
    throw ValidationError(std::string("key `") + key + "` must be finite");
}

}  // namespace

PhysicalConstants PhysicalConstants::scaled() { return {1.0, 1.0, 1.0, 1.0}; }

PhysicalConstants PhysicalConstants::si() {
  PhysicalConstants k;
  k.hbar = 1.054571817e-34;
  k.c = 299792458.0;
  k.epsilon0 = 8.8541878128e-12;
  k.e_charge = 1.602176634e-19;
  return k;
}

ConfigMap parse_config(std::string_view text) {
  ConfigMap out;
  size_t pos = 0;
  int lineno = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++lineno;

    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected `key = value`, got: " + std::string(line));
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty())
      throw ParseError("line " + std::to_string(lineno) +
                       ": empty key or value");
    if (!kKnownKeys.count(key))
      throw ParseError("unknown key `" + key + "`");
    if (out.count(key)) throw ParseError("duplicate key `" + key + "`");
    out.emplace(std::move(key), std::move(value));
  }
  return out;
}

Scenario scenario_from_keys(const ConfigMap& keys) {
  for (const char* k : kRequiredKeys)
    if (!keys.count(k))
      throw ParseError(std::string("missing required key `") + k + "`");

  Scenario s;
  if (auto it = keys.find("unit_system"); it != keys.end()) {
    if (it->second == "scaled")
      s.unit_system = UnitSystem::scaled;
    else if (it->second == "si")
      s.unit_system = UnitSystem::si;
    else
      throw ValidationError("key `unit_system` must be `scaled` or `si`, got `" +
                            it->second + "`");
  }
  s.constants = (s.unit_system == UnitSystem::si) ? PhysicalConstants::si()
                                                  : PhysicalConstants::scaled();

  auto num = [&keys](const char* k) {
    return parse_number(k, keys.at(k));
  };
  s.omega_s = num("omega_s");
  s.omega_l = num("omega_l");
  s.alpha_s_mag = num("alpha_s_mag");
  s.theta_s = num("theta_s");
  s.epsilon_l = num("epsilon_l");
  s.theta_l = num("theta_l");
  s.r = num("r");
  s.q = num("q");
  s.bandwidth_B = num("bandwidth_B");

  s.omega_i = keys.count("omega_i") ? num("omega_i")
                                    : 2.0 * s.omega_l - s.omega_s;
  s.delta_theta =
      keys.count("delta_theta") ? num("delta_theta") : -s.theta_s;

  require_finite("omega_s", s.omega_s);
  require_finite("omega_i", s.omega_i);
  require_finite("omega_l", s.omega_l);
  require_finite("alpha_s_mag", s.alpha_s_mag);
  require_finite("theta_s", s.theta_s);
  require_finite("epsilon_l", s.epsilon_l);
  require_finite("theta_l", s.theta_l);
  require_finite("r", s.r);
  require_finite("q", s.q);
  require_finite("bandwidth_B", s.bandwidth_B);
  require_finite("delta_theta", s.delta_theta);

  if (s.omega_l <= 0.0)
    throw ValidationError("key `omega_l` must be > 0, got " +
                          fmt_g17(s.omega_l));
  if (std::abs(s.omega_s + s.omega_i - 2.0 * s.omega_l) > 1e-12 * s.omega_l)
    throw ValidationError(
        "key `omega_i` breaks phase matching: omega_s + omega_i must equal "
        "2*omega_l (got " +
        fmt_g17(s.omega_s + s.omega_i) + " vs " + fmt_g17(2.0 * s.omega_l) +
        ")");
  if (s.omega_i <= 0.0)
    throw ValidationError("key `omega_i` must be > 0, got " +
                          fmt_g17(s.omega_i));
  if (s.omega_s <= s.omega_i)
    throw ValidationError("key `omega_s` must exceed omega_i (omega_s = " +
                          fmt_g17(s.omega_s) + ", omega_i = " +
                          fmt_g17(s.omega_i) + ")");
  if (s.epsilon_l <= 0.0)
    throw ValidationError("key `epsilon_l` must be > 0, got " +
                          fmt_g17(s.epsilon_l));
  if (s.alpha_s_mag < 0.0)
    throw ValidationError("key `alpha_s_mag` must be >= 0, got " +
                          fmt_g17(s.alpha_s_mag));
  if (s.r < 0.0)
    throw ValidationError("key `r` must be >= 0, got " + fmt_g17(s.r));
  if (s.q <= 0.0 || s.q > 1.0)
    throw ValidationError("key `q` must lie in (0, 1], got " + fmt_g17(s.q));
  if (s.bandwidth_B <= 0.0)
    throw ValidationError("key `bandwidth_B` must be > 0, got " +
                          fmt_g17(s.bandwidth_B));
  if (s.constants.hbar <= 0.0 || s.constants.c <= 0.0 ||
      s.constants.epsilon0 <= 0.0 || s.constants.e_charge <= 0.0)
    throw ValidationError("physical constants must all be > 0");

  return s;
}

Scenario load_scenario(std::string_view config_text) {
  return scenario_from_keys(parse_config(config_text));
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_scenario(ss.str());
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "unit_system = "
      << (s.unit_system == UnitSystem::si ? "si" : "scaled") << "\n";
  out << "omega_s = " << fmt_g17(s.omega_s) << "\n";
  out << "omega_i = " << fmt_g17(s.omega_i) << "\n";
  out << "omega_l = " << fmt_g17(s.omega_l) << "\n";
  out << "alpha_s_mag = " << fmt_g17(s.alpha_s_mag) << "\n";
  out << "theta_s = " << fmt_g17(s.theta_s) << "\n";
  out << "epsilon_l = " << fmt_g17(s.epsilon_l) << "\n";
  out << "theta_l = " << fmt_g17(s.theta_l) << "\n";
  out << "r = " << fmt_g17(s.r) << "\n";
  out << "q = " << fmt_g17(s.q) << "\n";
  out << "bandwidth_B = " << fmt_g17(s.bandwidth_B) << "\n";
  out << "delta_theta = " << fmt_g17(s.delta_theta) << "\n";
  return out.str();
}

std::string scenario_hash(const Scenario& s) {
  return hex16(fnv1a64(serialize_scenario(s)));
}

DerivedParams derive(const Scenario& s) {
  DerivedParams d;
  d.omega = 0.5 * (s.omega_s - s.omega_i);
  d.eta = s.q / (s.constants.hbar * s.omega_s);
  d.gain_g = std::exp(2.0 * s.r);
  d.shot_level = d.eta * s.constants.c * s.constants.epsilon0 *
                 s.constants.e_charge * s.constants.e_charge * s.epsilon_l *
                 s.epsilon_l;
  return d;
}

}  // namespace qhet
