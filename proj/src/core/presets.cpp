#include "presets.hpp"

#include <cmath>

#include "textutil.hpp"

namespace qhet::presets {

namespace {

Scenario build(double omega_l, double omega_s, double q, double r,
               double theta_l, double alpha) {
  ConfigMap keys;
  keys["omega_l"] = fmt_g17(omega_l);
  keys["omega_s"] = fmt_g17(omega_s);
  keys["alpha_s_mag"] = fmt_g17(alpha);
  keys["theta_s"] = "0";
  keys["epsilon_l"] = "1";
  keys["theta_l"] = fmt_g17(theta_l);
  keys["r"] = fmt_g17(r);
  keys["q"] = fmt_g17(q);
  keys["bandwidth_B"] = "1";
  return scenario_from_keys(keys);
}

}  // namespace

const char* default_config_text() {
  return
      "# Default heterodyne scenario, scaled units (hbar = c = eps0 = e = 1).\n"
      "# The image-band frequency and the composite beat phase are derived:\n"
      "# omega_i = 2*omega_l - omega_s, delta_theta = -theta_s.\n"
      "unit_system = scaled\n"
      "omega_l = 1.0\n"
      "omega_s = 1.00000000000002\n"
      "alpha_s_mag = 1.0\n"
      "theta_s = 0.0\n"
      "epsilon_l = 1.0\n"
      "theta_l = 0.0\n"
      "r = 1.0\n"
      "q = 1.0\n"
      "bandwidth_B = 1.0\n";
}

Scenario default_scenario() { return load_scenario(default_config_text()); }

Scenario near_degenerate(double q, double r, double theta_l, double alpha) {
  return build(1.0, 1.00000000000002, q, r, theta_l, alpha);
}

Scenario monte_carlo(double q, double r, double theta_l, double alpha) {
  return build(1.0e4, 1.0e4 + 2.0 * M_PI, q, r, theta_l, alpha);
}

Scenario f_example() {
  // sinh r = 1, i.e. r = ln(1 + sqrt 2)
  return build(100.0, 100.000000000002, 1.0, std::log(1.0 + std::sqrt(2.0)),
               0.0, 1.0);
}

}  // namespace qhet::presets
