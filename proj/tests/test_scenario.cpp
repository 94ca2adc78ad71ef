#include "doctest.h"
#include "tensoralg/scenario.hpp"

using namespace tensoralg;

namespace {

/// Machine report bytes with the wall-time field removed.
std::string stable_bytes(const ScenarioReport& r) {
  Json j = r.to_json();
  j.erase("wall_time_ms");
  return j.dump();
}

Scenario small(ScenarioKind kind, int trials) {
  Scenario s;
  s.kind = kind;
  s.trials = trials;
  return s;
}

}  // namespace

TEST_CASE("kind names round-trip and unknown names are rejected") {
  for (ScenarioKind k : all_scenario_kinds()) {
    ScenarioKind back;
    REQUIRE(scenario_kind_from_name(scenario_kind_name(k), &back));
    CHECK(back == k);
    CHECK_FALSE(default_tolerances(k).empty());
  }
  ScenarioKind out;
  CHECK_FALSE(scenario_kind_from_name("nonsense", &out));
}

TEST_CASE("scenarios round-trip through JSON including overrides") {
  Scenario s;
  s.kind = ScenarioKind::reconstruct;
  s.seed = 987654321;
  s.trials = 12;
  s.nmax = 4;
  s.tolerance_overrides["popescu_equality"] = 5e-13;
  const Scenario back = Scenario::from_json(s.to_json());
  CHECK(back.kind == s.kind);
  CHECK(back.seed == s.seed);
  CHECK(back.trials == s.trials);
  CHECK(back.nmax == s.nmax);
  CHECK(back.tolerance_overrides == s.tolerance_overrides);
}

TEST_CASE("every campaign kind passes a short run") {
  for (ScenarioKind k : all_scenario_kinds()) {
    CAPTURE(scenario_kind_name(k));
    const ScenarioReport r = run_scenario(small(k, 3));
    CHECK(int(r.records.size()) == 3);
    CHECK(r.passed());
  }
}

TEST_CASE("identical scenarios produce identical machine reports") {
  const Scenario s = small(ScenarioKind::functor, 4);
  const std::string a = stable_bytes(run_scenario(s));
  const std::string b = stable_bytes(run_scenario(s));
  CHECK(a == b);

  Scenario other = s;
  other.seed = s.seed + 1;
  CHECK(stable_bytes(run_scenario(other)) != a);
}

TEST_CASE("tolerance overrides flip the verdict") {
  Scenario s = small(ScenarioKind::disc_convergence, 1);
  // The truncation gap of the fixed degree-one polynomial is ~6e-5, so an
  // override far below it must fail the run.
  s.tolerance_overrides["sup_gap"] = 1e-12;
  CHECK_FALSE(run_scenario(s).passed());
  s.tolerance_overrides["sup_gap"] = 1e-2;
  CHECK(run_scenario(s).passed());
}

TEST_CASE("generated instances are reproducible and verify cleanly") {
  for (ScenarioKind k : all_scenario_kinds()) {
    CAPTURE(scenario_kind_name(k));
    CHECK(generate_instance(k, 9).dump() == generate_instance(k, 9).dump());
  }
  Scenario s = small(ScenarioKind::cp_lemma, 3);
  s.instance = generate_instance(ScenarioKind::cp_lemma, 9);
  CHECK(run_scenario(s).passed());

  Scenario r = small(ScenarioKind::reconstruct, 2);
  r.instance = generate_instance(ScenarioKind::reconstruct, 5);
  CHECK(run_scenario(r).passed());
}

TEST_CASE("stored reports rebuild losslessly") {
  const ScenarioReport r = run_scenario(small(ScenarioKind::stabilize, 2));
  const Json j = r.to_json();
  const ScenarioReport back = report_from_json(j);
  CHECK(back.to_json().dump() == j.dump());
  CHECK(back.passed() == r.passed());
  CHECK(back.human(true) == r.human(true));
}
