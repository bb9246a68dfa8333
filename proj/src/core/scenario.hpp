#pragma once

#include <map>
#include <string>
#include <string_view>

namespace qhet {

enum class UnitSystem { scaled, si };

struct PhysicalConstants {
  double hbar = 1.0;      // reduced Planck constant
  double c = 1.0;         // speed of light
  double epsilon0 = 1.0;  // vacuum permittivity
  double e_charge = 1.0;  // electron charge

  static PhysicalConstants scaled();  // all four exactly 1
  static PhysicalConstants si();
};

// Full physical configuration of one detection run. Immutable after
// construction; build through load_scenario()/scenario_from_keys() so the
// invariants are checked exactly once. omega_s + omega_i = 2 omega_l is
// enforced to 1e-12 relative; the composite beat phase delta_theta defaults
// to -theta_s (evaluation point with zero wavevector mismatch).
struct Scenario {
  double omega_s = 0.0;      // signal angular frequency
  double omega_i = 0.0;      // image-band angular frequency
  double omega_l = 0.0;      // local-oscillator angular frequency
  double alpha_s_mag = 0.0;  // |alpha_s|, field units
  double theta_s = 0.0;      // signal phase [rad]
  double epsilon_l = 0.0;    // LO amplitude, real, field units
  double theta_l = 0.0;      // LO phase [rad]
  double r = 0.0;            // squeeze parameter, >= 0
  double q = 1.0;            // dimensionless quantum efficiency, (0,1]
  double bandwidth_B = 0.0;  // measurement bandwidth
  double delta_theta = 0.0;  // composite beat phase [rad]
  UnitSystem unit_system = UnitSystem::scaled;
  PhysicalConstants constants;
};

struct DerivedParams {
  double omega;       // beat angular frequency, (omega_s - omega_i)/2
  double eta;         // detector efficiency q/(hbar omega_s)
  double gain_g;      // amplification gain e^{2r}
  double shot_level;  // eta c eps0 e^2 eps_l^2, two-sided shot PSD unit
};

using ConfigMap = std::map<std::string, std::string>;

// `key = value` lines, '#' comments. Rejects malformed lines, duplicate and
// unknown keys (ParseError).
ConfigMap parse_config(std::string_view text);

// Builds and validates a Scenario. Missing required keys -> ParseError;
// invariant violations -> ValidationError naming the offending key.
Scenario scenario_from_keys(const ConfigMap& keys);

Scenario load_scenario(std::string_view config_text);
Scenario load_scenario_file(const std::string& path);

// Canonical config text; load_scenario(serialize_scenario(s)) reproduces s
// field-wise exactly.
std::string serialize_scenario(const Scenario& s);

// FNV-1a 64 digest of the canonical serialization, 16 hex chars.
std::string scenario_hash(const Scenario& s);

DerivedParams derive(const Scenario& s);

}  // namespace qhet
