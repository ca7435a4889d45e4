#include <gtest/gtest.h>

#include "eqcw/runner.hpp"

using namespace eqcw;

namespace {

std::vector<SchemaError> errors_of(const std::string& text) {
  try {
    parse_scenario_text(text);
  } catch (const ScenarioError& e) {
    return e.errors();
  }
  return {};
}

bool mentions(const std::vector<SchemaError>& errors, int line, const std::string& fragment) {
  for (const auto& e : errors)
    if (e.line == line && e.message.find(fragment) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(ParseScenario, Minimal) {
  const Scenario sc = parse_scenario_text("symmetry = su2\nstructure = u1\ntruncation = 6\n");
  EXPECT_EQ(sc.symmetry, "su2");
  EXPECT_EQ(sc.structure_algebra().dim(), 1);
  EXPECT_EQ(sc.truncation, 6);
  EXPECT_FALSE(sc.series);
  EXPECT_EQ(sc.suites, (std::vector<std::string>{"verify-core", "universal-check"}));
}

TEST(ParseScenario, UnknownKeyNamesKeyAndLine) {
  const auto errors = errors_of("symmetry = su2\nstructure_grp = u1\ntruncation = 6\n");
  EXPECT_TRUE(mentions(errors, 2, "structure_grp"));
  EXPECT_TRUE(mentions(errors, 0, "missing required key 'structure'"));
}

TEST(ParseScenario, MonopoleBlock) {
  const Scenario sc = parse_scenario_text(
      "symmetry = u1\nstructure = u1\ntruncation = 4\n# comment\n[monopole]\ncharge = 2\ngrid = 200x400\n");
  ASSERT_TRUE(sc.monopole);
  EXPECT_EQ(sc.monopole->charges, std::vector<int>{2});
  EXPECT_EQ(sc.monopole->n_theta, 200);
  EXPECT_EQ(sc.monopole->n_phi, 400);
  EXPECT_EQ(sc.monopole->gauge, std::vector<Rational>{Rational(1)});
  EXPECT_EQ(sc.suites.back(), "anomaly");
}

TEST(ParseScenario, TableFillsAntisymmetricPartner) {
  const Scenario sc = parse_scenario_text(
      "symmetry = table:t\nstructure = u1\ntruncation = 4\n[table t]\ndim = 3\n"
      "f 3 1 2 = 1\nf 1 2 3 = 1\nf 2 1 3 = -1 # same as f 2 3 1 = 1\n");
  const LieAlgebraData g = sc.symmetry_algebra();
  const LieAlgebraData ref = so3();
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) EXPECT_EQ(g.f(c, a, b), ref.f(c, a, b));
}

TEST(ParseScenario, SchemaErrorsCarryLineNumbers) {
  const auto errors = errors_of(
      "symmetry = su3\nstructure = u1\ntruncation = x\nseries = chern 4\nsuites = all\n"
      "[monopole]\ngrid = 4x4\ncolour = red\n[table t]\nf 1 1 2 = 1\n[bogus]\n");
  EXPECT_TRUE(mentions(errors, 0, "unknown algebra 'su3'"));
  EXPECT_TRUE(mentions(errors, 3, "truncation"));
  EXPECT_TRUE(mentions(errors, 4, "unknown series 'chern'"));
  EXPECT_TRUE(mentions(errors, 5, "unknown suite 'all'"));
  EXPECT_TRUE(mentions(errors, 7, "grid"));
  EXPECT_TRUE(mentions(errors, 8, "colour"));
  EXPECT_TRUE(mentions(errors, 10, "'dim' must precede"));
  EXPECT_TRUE(mentions(errors, 11, "unknown section [bogus]"));
}

TEST(ParseScenario, DuplicatesAndConflicts) {
  auto errors = errors_of("symmetry = su2\nsymmetry = so3\nstructure = u1\ntruncation = 4\n");
  EXPECT_TRUE(mentions(errors, 2, "duplicate key 'symmetry'"));
  errors = errors_of("symmetry = table:t\nstructure = u1\ntruncation = 4\n[table t]\ndim = 2\nf 1 1 2 = 1\nf 1 2 1 = 1\n");
  EXPECT_TRUE(mentions(errors, 7, "conflicting"));
  errors = errors_of("symmetry = table:missing\nstructure = u1\ntruncation = 4\n");
  EXPECT_TRUE(mentions(errors, 0, "undeclared table 'missing'"));
}

TEST(ParseScenario, SeriesNeedsTruncationFour) {
  const auto errors = errors_of("symmetry = u1\nstructure = u1\ntruncation = 2\nseries = ch 4\n");
  EXPECT_TRUE(mentions(errors, 0, "at least 4"));
  Scenario sc = parse_scenario_text("symmetry = u1\nstructure = u1\ntruncation = 6\nseries = ch 4\n");
  EXPECT_THROW(override_truncation(sc, 3), ScenarioError);
  override_truncation(sc, 4);
  EXPECT_EQ(sc.truncation, 4);
}

TEST(ParseScenario, ResolvedRoundTrip) {
  const Scenario sc = parse_scenario_text(
      "structure = table:t\nsymmetry = su2\ntruncation = 5\nseries = a_hat 6\nnormalization = 4pi\n"
      "[table t]\ndim = 2\nf 2 1 2 = 3/6\n[monopole]\ncharge = -1 0\ngrid = 12x24\ngauge = 2/4 -1\n");
  const std::string text = sc.resolved();
  EXPECT_EQ(parse_scenario_text(text).resolved(), text);
  EXPECT_NE(text.find("f 2 1 2 = 1/2"), std::string::npos) << text;
  EXPECT_NE(text.find("gauge = 1/2 -1"), std::string::npos) << text;
  // Embedded in a report, only the marked block is read.
  const std::string report = "junk = 1\nBEGIN SCENARIO\n" + text + "END SCENARIO\nmore junk\n";
  EXPECT_EQ(parse_scenario_text(report).resolved(), text);
}

TEST(Run, UniversalCheckReportsProp1) {
  const Scenario sc = parse_scenario_text("symmetry = su2\nstructure = u1\ntruncation = 6\n");
  const RunOutput out = run("universal-check", sc);
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_NE(out.report.find("Prop1: PASS (exact)"), std::string::npos);
  EXPECT_NE(machine_section(out.report).find("CHECK prop1 PASS exact"), std::string::npos);
}

TEST(Run, JacobiViolationSetsVerifyCoreBitAndNamesTriple) {
  const Scenario sc = parse_scenario_text(
      "symmetry = table:b\nstructure = u1\ntruncation = 4\n[table b]\ndim = 3\n"
      "f 3 1 2 = 1\nf 3 2 3 = 1\nf 2 3 1 = 1\n");
  const RunOutput out = run("verify-core", sc);
  EXPECT_EQ(out.exit_code, exit_verify_core);
  EXPECT_NE(out.report.find("jacobi (1,2,3)"), std::string::npos);
  // Universal-check on the same algebra refuses to build and fails its own bit.
  EXPECT_EQ(run("all", parse_scenario_text(sc.resolved() + "")).exit_code, exit_verify_core | exit_universal_check);
}

TEST(Run, SeriesPrintsExactCoefficients) {
  const Scenario sc = parse_scenario_text("symmetry = so3\nstructure = so3\ntruncation = 4\nseries = a_hat 4\n");
  const RunOutput out = run("series", sc);
  EXPECT_EQ(out.exit_code, 0) << out.report;
  const std::string m = machine_section(out.report);
  EXPECT_NE(m.find("VALUE series.a_hat.coefficient 2 -1/24"), std::string::npos) << m;
  EXPECT_NE(m.find("VALUE series.a_hat.coefficient 4 7/5760"), std::string::npos) << m;
}

TEST(Run, AHatOnUnitaryStructureFailsSeriesBit) {
  const Scenario sc = parse_scenario_text("symmetry = su2\nstructure = u1\ntruncation = 4\nseries = a_hat 4\n");
  EXPECT_EQ(run("series", sc).exit_code, exit_series);
}

TEST(Run, MissingInputsAreScenarioErrors) {
  const Scenario sc = parse_scenario_text("symmetry = su2\nstructure = u1\ntruncation = 6\n");
  EXPECT_THROW(run("series", sc), ScenarioError);
  EXPECT_THROW(run("anomaly", sc), ScenarioError);
  EXPECT_THROW(run("everything", sc), std::invalid_argument);
}

TEST(Run, AnomalyIsDeterministicAndReplays) {
  const Scenario sc = parse_scenario_text(
      "symmetry = u1\nstructure = u1\ntruncation = 4\n[monopole]\ncharge = 1 -3\ngrid = 100x200\ngauge = 1/3\n");
  const RunOutput a = run("all", sc), b = run("all", sc);
  EXPECT_EQ(a.exit_code, 0) << a.report;
  EXPECT_EQ(machine_section(a.report), machine_section(b.report));
  const RunOutput replay = run("all", parse_scenario_text(a.report));
  EXPECT_EQ(machine_section(a.report), machine_section(replay.report));
  EXPECT_NE(a.report.find("VALUE anomaly k=-3 generator=3 lambda=1/3"), std::string::npos);
}
