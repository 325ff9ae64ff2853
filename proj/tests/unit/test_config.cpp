#include <string>

#include <gtest/gtest.h>

#include "envalg/config.hpp"

using namespace envalg;

namespace {

const char* kMinimal = R"({
  "lie_algebra": {"builtin": "abelian", "dim": 1},
  "functionals": {"delta": {"algebra": "g", "kind": "delta", "degree": 2}}
})";

std::string error_of(const std::string& text) {
  try {
    resolve(parse_config(text));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Config, MinimalConfigParses) {
  WorkbenchConfig c = parse_config(kMinimal);
  ASSERT_EQ(c.algebras.size(), 1u);
  EXPECT_EQ(c.algebras.at("g").basis.size(), 1u);
  Workbench wb = resolve(c);
  const FunctionalTable& delta = *wb.functionals.at("delta");
  EXPECT_EQ(delta.value(MultiIndex{0}), Scalar(1));
  EXPECT_EQ(delta.value(MultiIndex{2}), Scalar(0));
}

TEST(Config, UnknownKeyIsNamed) {
  std::string err = error_of(R"({"lie_algebra": {"basis": ["x"], "weigths": ["1"]}})");
  EXPECT_NE(err.find("weigths"), std::string::npos) << err;
}

TEST(Config, SyntaxErrorHasLineAndColumn) {
  std::string err = error_of("{\n  \"lie_algebra\": {\n    \"basis\": [\"x\",]\n  }\n}");
  EXPECT_NE(err.find("line 3"), std::string::npos) << err;
  EXPECT_NE(err.find("column"), std::string::npos) << err;
}

TEST(Config, SignFlippedSo3IsAccepted) {
  // so(2,1)
  EXPECT_EQ(error_of(R"({"lie_algebra": {
    "basis": ["e1", "e2", "e3"],
    "brackets": {"e1,e2": {"e3": 1}, "e2,e3": {"e1": -1}, "e3,e1": {"e2": 1}}}})"), "");
}

TEST(Config, JacobiFailureHasWitness) {
  std::string err = error_of(R"({"lie_algebra": {
    "basis": ["e1", "e2", "e3"],
    "brackets": {"e1,e2": {"e3": 1}, "e2,e3": {"e1": 1}, "e3,e1": {"e1": 1}}}})");
  EXPECT_NE(err.find("Jacobi"), std::string::npos) << err;
  EXPECT_NE(err.find("(e1, e2, e3)"), std::string::npos) << err;
}

TEST(Config, SubmultFailureHasWitness) {
  std::string err = error_of(R"({"lie_algebra": {
    "basis": ["p", "q", "z"], "brackets": {"p,q": {"z": 1}}, "weights": [1, 1, 3]}})");
  EXPECT_NE(err.find("submultiplicative"), std::string::npos) << err;
  EXPECT_NE(err.find("(p, q)"), std::string::npos) << err;
}

TEST(Config, RangesAreEnforced) {
  const std::string head = R"({"lie_algebra": {"builtin": "abelian", "dim": 1}, "suites": [)";
  EXPECT_NE(error_of(head + R"({"suite": "bch-identity", "degree": 11}]})").find("degree"), std::string::npos);
  EXPECT_NE(error_of(head + R"({"suite": "bch-identity", "tolerance": 0.1}]})").find("tolerance"), std::string::npos);
  EXPECT_NE(error_of(head + R"({"suite": "nope"}]})").find("unknown suite"), std::string::npos);
  EXPECT_NE(error_of(head + R"({"suite": "positivity", "functional": "missing"}]})").find("missing"), std::string::npos);
}

TEST(Config, ValueEncodings) {
  WorkbenchConfig c = parse_config(R"({
    "lie_algebra": {"builtin": "abelian", "dim": 2},
    "functionals": {"f": {"algebra": "g", "degree": 2,
      "values": {"0,0": 1, "1,0": "-3/6", "1,1": ["1/2", "-2"]}}}
  })");
  const auto& values = c.functionals.at("f").values;
  EXPECT_EQ(values.at(MultiIndex({1, 0})), Scalar(Rational(-1, 2)));
  EXPECT_EQ(values.at(MultiIndex({1, 1})), Scalar(Rational(1, 2), Rational(-2)));
  EXPECT_THROW(parse_config(R"({"lie_algebra": {"builtin": "abelian", "dim": 1},
    "functionals": {"f": {"algebra": "g", "degree": 1, "values": {"0": 0.5}}}})"), ConfigError);
}

TEST(Config, RoundTrip) {
  WorkbenchConfig c = load_config_file(ENVALG_CONFIG_DIR "/workbench.json");
  const std::string text = serialize_config(c);
  WorkbenchConfig again = parse_config(text);
  EXPECT_EQ(again, c);
  EXPECT_EQ(serialize_config(again), text);
}

TEST(Config, ExplicitRepresentation) {
  Workbench wb = resolve(parse_config(R"({
    "lie_algebra": {"builtin": "abelian", "dim": 1},
    "representations": {"rot": {"algebra": "g",
      "generators": [[[0, -1], [1, 0]]], "cyclic": [1, 0]}},
    "functionals": {"f": {"algebra": "g", "kind": "representation", "representation": "rot", "degree": 4}}
  })"));
  const FunctionalTable& f = *wb.functionals.at("f");
  EXPECT_EQ(f.value(MultiIndex{2}), Scalar(-1));
  EXPECT_EQ(f.value(MultiIndex{4}), Scalar(1));

  EXPECT_NE(error_of(R"({"lie_algebra": {"builtin": "abelian", "dim": 1},
    "representations": {"bad": {"algebra": "g", "generators": [[[1, 0], [0, 1]]], "cyclic": [1, 0]}}})")
                .find("skew"),
            std::string::npos);
}

TEST(Config, MissingFile) { EXPECT_THROW(load_config_file("/nonexistent/config.json"), ConfigError); }
