#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "rng.hpp"
#include "scenario.hpp"
#include "textutil.hpp"

using namespace qhet;

namespace {

const char* kBase =
    "omega_l = 1\n"
    "omega_s = 1.001\n"
    "q = 1\n"
    "r = 0\n"
    "epsilon_l = 1\n"
    "alpha_s_mag = 1\n"
    "theta_s = 0\n"
    "theta_l = 0\n"
    "bandwidth_B = 1\n";

template <typename E, typename F>
std::string error_message(F&& f) {
  try {
    f();
  } catch (const E& e) {
    return e.what();
  }
  return "<no exception>";
}

}  // namespace

TEST_CASE("load_scenario derives the image frequency") {
  Scenario s = load_scenario(kBase);
  CHECK(s.omega_i == doctest::Approx(0.999).epsilon(1e-12));
  CHECK(s.delta_theta == 0.0);
  CHECK(s.unit_system == UnitSystem::scaled);
  CHECK(s.constants.hbar == 1.0);
  CHECK(s.constants.e_charge == 1.0);
}

TEST_CASE("load_scenario rejects q out of range, naming the key") {
  std::string text = kBase;
  text.replace(text.find("q = 1"), 5, "q = 1.5");
  const std::string msg =
      error_message<ValidationError>([&] { load_scenario(text); });
  CHECK(msg.find("`q`") != std::string::npos);
}

TEST_CASE("load_scenario rejects an explicit omega_i breaking phase matching") {
  std::string text = std::string(kBase) + "omega_i = 0.5\n";
  const std::string msg =
      error_message<ValidationError>([&] { load_scenario(text); });
  CHECK(msg.find("omega_i") != std::string::npos);
  CHECK(msg.find("phase matching") != std::string::npos);
}

TEST_CASE("parse errors: malformed, duplicate, unknown, missing keys") {
  CHECK_THROWS_AS(load_scenario("omega_l 1\n"), ParseError);
  CHECK_THROWS_AS(load_scenario(std::string(kBase) + "q = 0.5\n"), ParseError);
  CHECK_THROWS_AS(load_scenario(std::string(kBase) + "volume = 2\n"),
                  ParseError);
  CHECK(error_message<ParseError>([] {
          load_scenario("omega_l = 1\n");
        }).find("omega_s") != std::string::npos);
  CHECK_THROWS_AS(load_scenario(std::string(kBase) + "delta_theta = abc\n"),
                  ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
  Scenario s = load_scenario(std::string("# header\n\n") + kBase +
                             "  # trailing comment line\n");
  CHECK(s.omega_s == 1.001);
}

TEST_CASE("validation bounds") {
  auto with = [](const char* from, const char* to) {
    std::string text = kBase;
    text.replace(text.find(from), std::string(from).size(), to);
    return text;
  };
  CHECK_THROWS_AS(load_scenario(with("epsilon_l = 1", "epsilon_l = 0")),
                  ValidationError);
  CHECK_THROWS_AS(load_scenario(with("alpha_s_mag = 1", "alpha_s_mag = -1")),
                  ValidationError);
  CHECK_THROWS_AS(load_scenario(with("r = 0", "r = -0.1")), ValidationError);
  CHECK_THROWS_AS(load_scenario(with("q = 1", "q = 0")), ValidationError);
  CHECK_THROWS_AS(load_scenario(with("bandwidth_B = 1", "bandwidth_B = 0")),
                  ValidationError);
  // omega_s must exceed omega_i, i.e. sit above the LO
  CHECK_THROWS_AS(load_scenario(with("omega_s = 1.001", "omega_s = 0.999")),
                  ValidationError);
}

TEST_CASE("si unit system populates physical constants") {
  Scenario s = load_scenario(std::string(kBase) + "unit_system = si\n");
  CHECK(s.constants.hbar == doctest::Approx(1.054571817e-34));
  CHECK(s.constants.c == 299792458.0);
  CHECK(derive(s).eta == doctest::Approx(1.0 / (1.054571817e-34 * 1.001)));
}

TEST_CASE("serialize/load round-trips scenarios exactly") {
  rng::CounterRng gen(20240810, 1);
  for (int trial = 0; trial < 30; ++trial) {
    ConfigMap keys;
    const double omega_l = std::exp(8.0 * gen.uniform() - 2.0);
    const double delta = omega_l * 1e-6 * (0.1 + gen.uniform());
    keys["omega_l"] = fmt_g17(omega_l);
    keys["omega_s"] = fmt_g17(omega_l + delta);
    keys["alpha_s_mag"] = fmt_g17(5.0 * gen.uniform());
    keys["theta_s"] = fmt_g17(6.28 * gen.uniform() - 3.14);
    keys["epsilon_l"] = fmt_g17(0.1 + 3.0 * gen.uniform());
    keys["theta_l"] = fmt_g17(6.28 * gen.uniform() - 3.14);
    keys["r"] = fmt_g17(5.0 * gen.uniform());
    keys["q"] = fmt_g17(0.05 + 0.95 * gen.uniform());
    keys["bandwidth_B"] = fmt_g17(0.01 + gen.uniform());
    const Scenario a = scenario_from_keys(keys);
    const Scenario b = load_scenario(serialize_scenario(a));
    CHECK(a.omega_s == b.omega_s);
    CHECK(a.omega_i == b.omega_i);
    CHECK(a.omega_l == b.omega_l);
    CHECK(a.alpha_s_mag == b.alpha_s_mag);
    CHECK(a.theta_s == b.theta_s);
    CHECK(a.epsilon_l == b.epsilon_l);
    CHECK(a.theta_l == b.theta_l);
    CHECK(a.r == b.r);
    CHECK(a.q == b.q);
    CHECK(a.bandwidth_B == b.bandwidth_B);
    CHECK(a.delta_theta == b.delta_theta);
    CHECK(scenario_hash(a) == scenario_hash(b));
    // phase matching holds for every valid scenario
    CHECK(std::abs(a.omega_s + a.omega_i - 2.0 * a.omega_l) <=
          1e-12 * a.omega_l);
  }
}

TEST_CASE("derive computes the beat frequency and gain") {
  Scenario s = load_scenario(kBase);
  DerivedParams d = derive(s);
  CHECK(d.omega == doctest::Approx(0.001).epsilon(1e-9));
  CHECK(d.gain_g == 1.0);  // exactly 1 at r = 0
  CHECK(d.eta == doctest::Approx(1.0 / 1.001).epsilon(1e-15));
  CHECK(d.shot_level == doctest::Approx(1.0 / 1.001).epsilon(1e-15));

  // eta = q/(hbar omega_s) evaluates to exactly 0.5 for q = 0.5, omega_s = 1
  ConfigMap keys = parse_config(kBase);
  keys["omega_l"] = "0.9995";
  keys["omega_s"] = "1.0";
  keys["q"] = "0.5";
  DerivedParams d2 = derive(scenario_from_keys(keys));
  CHECK(d2.eta == 0.5);

  // gain e^{2r} = 4 at r = ln 2
  keys["r"] = fmt_g17(std::log(2.0));
  CHECK(derive(scenario_from_keys(keys)).gain_g ==
        doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("delta_theta defaults to -theta_s and accepts an override") {
  std::string text = kBase;
  text.replace(text.find("theta_s = 0"), 11, "theta_s = 0.7");
  Scenario s = load_scenario(text);
  CHECK(s.delta_theta == doctest::Approx(-0.7));
  Scenario s2 = load_scenario(text + "delta_theta = 0.2\n");
  CHECK(s2.delta_theta == 0.2);
}
