#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "ltivp/problem_io.hpp"

namespace {

using namespace ltivp;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string parse_error_field(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const ParseError& e) {
    return e.field();
  }
  return "<no error>";
}

TEST(ParseProblem, Example2File) {
  const ProblemFile pf = parse_problem(read_file(LTIVP_PROBLEMS_DIR "/example2_cos_to_ramp.json"));
  EXPECT_EQ(pf.problem.ode.order(), 2);
  EXPECT_EQ(pf.problem.kind, ConditionKind::previous);
  EXPECT_EQ(pf.problem.y, (ConditionStack{1, 0}));
  EXPECT_NEAR(pf.problem.input.past(0.7), std::cos(0.7), 1e-15);
  EXPECT_EQ(pf.problem.input.future(0.7), 0.7);
  ASSERT_TRUE(pf.horizon.has_value());
  EXPECT_EQ(*pf.horizon, 3.0);
}

TEST(ParseProblem, SignalSugar) {
  const auto parse_future = [](const std::string& spec) {
    return parse_problem(R"({"ode": {"a": [1], "b": [0, 1]}, "input": {"future": )" + spec +
                         R"(}, "conditions": {"kind": "first", "y": [0]}})")
        .problem.input.future;
  };
  EXPECT_EQ(parse_future("2.5")(1.0), 2.5);
  EXPECT_EQ(parse_future(R"("3*ramp")")(2.0), 6.0);
  EXPECT_NEAR(parse_future(R"("-2*sin 3")")(0.4), -2 * std::sin(1.2), 1e-15);
  EXPECT_NEAR(parse_future(R"("exp -0.5")")(2.0), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(parse_future(R"(["step", {"amp_re": 1, "power": 1, "rate_re": -1}])")(1.0), 1 + std::exp(-1.0), 1e-15);
}

TEST(ParseProblem, ErrorsNameTheField) {
  EXPECT_EQ(parse_error_field(R"({"ode": {"a": [1, 2], "b": [1, 2]}, "input": {"future": "step"},
                                  "conditions": {"kind": "first", "y": [0, 0]}})"),
            "ode.b");
  EXPECT_EQ(parse_error_field(R"({"ode": {"a": [1, 2], "b": [1, 2, 3]}, "input": {"future": "step"},
                                  "conditions": {"kind": "first", "y": [0]}})"),
            "conditions.y");
  EXPECT_EQ(parse_error_field(R"({"ode": {"a": [1], "b": [1, 2]}, "input": {"future": "stpe"},
                                  "conditions": {"kind": "first", "y": [0]}})"),
            "input.future");
  EXPECT_EQ(parse_error_field(R"({"ode": {"a": [1], "b": [1, 2]}, "input": {"future": "step"},
                                  "conditions": {"kind": "previous", "y": [0]}})"),
            "input.past");
  EXPECT_EQ(parse_error_field(R"({"ode": {"a": [1], "b": [1, 2]}, "input": {"future": "cos"},
                                  "conditions": {"kind": "first", "y": [0]}})"),
            "input.future");
  EXPECT_EQ(parse_error_field(R"({"ode": {"a": [1], "b": [1, 2]}, "input": {"future": "step"},
                                  "conditions": {"kind": "later", "y": [0]}})"),
            "conditions.kind");
  EXPECT_EQ(parse_error_field(R"({"ode": {"a": [1]}})"), "ode.b");
  EXPECT_EQ(parse_error_field("{\n  \"ode\": [1,\n}"), "line 3, column 1");
}

TEST(EmitProblem, RoundTripIsExact) {
  for (const char* name : {"example1_ramp.json", "example2_cos_to_ramp.json", "step_from_rest.json",
                           "unobservable_ssr.json", "no_jump.json"}) {
    const ProblemFile a = parse_problem(read_file(std::string(LTIVP_PROBLEMS_DIR) + "/" + name));
    const std::string text = emit_problem(a);
    const ProblemFile b = parse_problem(text);
    EXPECT_EQ(emit_problem(b), text) << name;
    EXPECT_EQ(a.problem.ode.a(), b.problem.ode.a());
    EXPECT_EQ(a.problem.ode.b(), b.problem.ode.b());
    EXPECT_EQ(a.problem.y, b.problem.y);
    EXPECT_EQ(a.problem.kind, b.problem.kind);
    EXPECT_EQ(a.horizon, b.horizon);
    EXPECT_EQ(a.grid, b.grid);
    EXPECT_EQ(a.ssr.has_value(), b.ssr.has_value());
    ASSERT_EQ(a.problem.input.future.modes().size(), b.problem.input.future.modes().size());
    for (std::size_t i = 0; i < a.problem.input.future.modes().size(); ++i) {
      EXPECT_EQ(a.problem.input.future.modes()[i].amp, b.problem.input.future.modes()[i].amp);
      EXPECT_EQ(a.problem.input.future.modes()[i].rate, b.problem.input.future.modes()[i].rate);
      EXPECT_EQ(a.problem.input.future.modes()[i].power, b.problem.input.future.modes()[i].power);
    }
  }
}

}  // namespace
