#pragma once

// Problem files: JSON documents of the form
//
//   {
//     "ode":        {"a": [a1, ..., an], "b": [b0, ..., bn]},
//     "input":      {"past": <signal>, "future": <signal>},
//     "conditions": {"kind": "previous" | "first", "y": [y^(n-1), ..., y]},
//     "horizon":    3.0,            (optional)
//     "grid":       200,            (optional)
//     "ssr":        {"A": [[...]], "B": [...], "C": [...], "D": 0}   (optional)
//   }
//
// A <signal> is a number (constant), a sugar string ("zero", "step", "ramp",
// "cos w", "sin w", "exp a", optionally prefixed by "c*"), a mode record
// {"amp_re", "amp_im", "power", "rate_re", "rate_im"}, or an array of those,
// summed.

#include <cstddef>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

#include "ltivp/error.hpp"
#include "ltivp/laplace.hpp"
#include "ltivp/realization.hpp"
#include "ltivp/signal.hpp"

namespace ltivp {

struct ProblemFile {
  IVProblem problem;
  std::optional<double> horizon;
  std::optional<int> grid;
  std::optional<StateSpace> ssr;
};

namespace detail {

using nlohmann::json;

inline double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError(field, "expected a number");
  return j.get<double>();
}

inline Eigen::VectorXd vector_at(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError(field, "expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = number_at(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

inline const json& member(const json& j, const std::string& key, const std::string& field) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(field.empty() ? key : field + "." + key, "missing");
  return j.at(key);
}

inline Signal sugar_signal(const std::string& text, const std::string& field) {
  static const std::regex re(
      R"(^\s*(?:([-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*\*\s*)?(zero|step|ramp|cos|sin|exp)\s*([-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw ParseError(field, "unrecognized signal \"" + text + "\"");
  const double scale = m[1].matched ? std::stod(m[1].str()) : 1.0;
  const std::string name = m[2].str();
  const bool has_arg = m[3].matched;
  const double arg = has_arg ? std::stod(m[3].str()) : 0.0;
  const bool needs_arg = name == "cos" || name == "sin" || name == "exp";
  if (needs_arg != has_arg)
    throw ParseError(field, "\"" + name + "\"" + (needs_arg ? " needs a rate argument" : " takes no argument"));
  if (name == "zero") return Signal::zero();
  if (name == "step") return Signal::step(scale);
  if (name == "ramp") return Signal::ramp(scale);
  if (name == "cos") return Signal::cos(arg, scale);
  if (name == "sin") return Signal::sin(arg, scale);
  return Signal::exp(arg, scale);
}

inline Mode mode_record(const json& j, const std::string& field) {
  Mode m;
  auto opt = [&](const char* key) {
    return j.contains(key) ? number_at(j.at(key), field + "." + key) : 0.0;
  };
  m.amp = Complex(number_at(member(j, "amp_re", field), field + ".amp_re"), opt("amp_im"));
  m.rate = Complex(opt("rate_re"), opt("rate_im"));
  if (j.contains("power")) {
    const json& p = j.at("power");
    if (!p.is_number_integer() || p.get<long long>() < 0)
      throw ParseError(field + ".power", "expected a nonnegative integer");
    m.power = p.get<int>();
  }
  return m;
}

inline Signal signal_at(const json& j, const std::string& field) {
  if (j.is_number()) return Signal::constant(j.get<double>());
  if (j.is_string()) return sugar_signal(j.get<std::string>(), field);
  if (j.is_object()) return Signal({mode_record(j, field)});
  if (j.is_array()) {
    Signal sum;
    for (std::size_t i = 0; i < j.size(); ++i) sum = sum + signal_at(j[i], field + "[" + std::to_string(i) + "]");
    return sum;
  }
  throw ParseError(field, "expected a signal (number, string, mode record or array)");
}

inline json signal_to_json(const Signal& x) {
  json arr = json::array();
  for (const auto& m : x.modes()) {
    arr.push_back({{"amp_re", m.amp.real()},
                   {"amp_im", m.amp.imag()},
                   {"power", m.power},
                   {"rate_re", m.rate.real()},
                   {"rate_im", m.rate.imag()}});
  }
  return arr;
}

inline json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

inline std::string position_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline StateSpace ssr_at(const json& j) {
  const json& a = member(j, "A", "ssr");
  if (!a.is_array() || a.empty()) throw ParseError("ssr.A", "expected a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd A(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::string f = "ssr.A[" + std::to_string(i) + "]";
    const Eigen::VectorXd row = vector_at(a[static_cast<std::size_t>(i)], f);
    if (row.size() != n) throw ParseError(f, "expected " + std::to_string(n) + " entries");
    A.row(i) = row.transpose();
  }
  const Eigen::VectorXd B = vector_at(member(j, "B", "ssr"), "ssr.B");
  const Eigen::VectorXd C = vector_at(member(j, "C", "ssr"), "ssr.C");
  if (B.size() != n) throw ParseError("ssr.B", "expected " + std::to_string(n) + " entries");
  if (C.size() != n) throw ParseError("ssr.C", "expected " + std::to_string(n) + " entries");
  const double D = j.contains("D") ? number_at(j.at("D"), "ssr.D") : 0.0;
  return {A, B, C.transpose(), D};
}

}  // namespace detail

inline ProblemFile parse_problem(const std::string& text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(detail::position_of(text, e.byte == 0 ? 0 : e.byte - 1), "invalid JSON");
  }
  if (!doc.is_object()) throw ParseError("", "top level must be an object");

  const json& ode_j = detail::member(doc, "ode", "");
  const Eigen::VectorXd a = detail::vector_at(detail::member(ode_j, "a", "ode"), "ode.a");
  const Eigen::VectorXd b = detail::vector_at(detail::member(ode_j, "b", "ode"), "ode.b");
  if (a.size() < 1) throw ParseError("ode.a", "order n = length(a) must be at least 1");
  if (b.size() != a.size() + 1)
    throw ParseError("ode.b", "expected n+1 = " + std::to_string(a.size() + 1) + " entries, got " +
                                  std::to_string(b.size()));
  if ((b.array() == 0.0).all()) throw ParseError("ode.b", "at least one coefficient must be nonzero");
  const int n = static_cast<int>(a.size());

  const json& cond = detail::member(doc, "conditions", "");
  const json& kind_j = detail::member(cond, "kind", "conditions");
  if (!kind_j.is_string()) throw ParseError("conditions.kind", "expected \"previous\" or \"first\"");
  const std::string kind = kind_j.get<std::string>();
  if (kind != "previous" && kind != "first")
    throw ParseError("conditions.kind", "expected \"previous\" or \"first\", got \"" + kind + "\"");
  const Eigen::VectorXd y = detail::vector_at(detail::member(cond, "y", "conditions"), "conditions.y");
  if (y.size() != n)
    throw ParseError("conditions.y", "expected n = " + std::to_string(n) + " entries, got " + std::to_string(y.size()));

  const json& input = detail::member(doc, "input", "");
  const Signal future = detail::signal_at(detail::member(input, "future", "input"), "input.future");
  Signal past;
  if (input.contains("past"))
    past = detail::signal_at(input.at("past"), "input.past");
  else if (kind == "previous")
    throw ParseError("input.past", "required when conditions.kind is \"previous\"");

  ProblemFile pf{IVProblem{LinearODE(a, b), PiecewiseInput{past, future},
                           kind == "previous" ? ConditionKind::previous : ConditionKind::first,
                           ConditionStack(y)},
                 std::nullopt, std::nullopt, std::nullopt};
  if (doc.contains("horizon")) {
    const double h = detail::number_at(doc.at("horizon"), "horizon");
    if (!(h > 0.0)) throw ParseError("horizon", "must be positive");
    pf.horizon = h;
    pf.problem.horizon = h;
  }
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    if (!g.is_number_integer() || g.get<long long>() < 1) throw ParseError("grid", "expected a positive integer");
    pf.grid = g.get<int>();
    pf.problem.grid_points = *pf.grid;
  }
  if (doc.contains("ssr")) pf.ssr = detail::ssr_at(doc.at("ssr"));
  return pf;
}

/// Canonical re-emission; signals are written as explicit mode records so
/// parse_problem(emit_problem(pf)) reproduces pf exactly.
inline std::string emit_problem(const ProblemFile& pf) {
  using detail::json;
  const IVProblem& p = pf.problem;
  json doc;
  doc["ode"] = {{"a", detail::vector_to_json(p.ode.a())}, {"b", detail::vector_to_json(p.ode.b())}};
  doc["input"] = {{"past", detail::signal_to_json(p.input.past)},
                  {"future", detail::signal_to_json(p.input.future)}};
  doc["conditions"] = {{"kind", p.kind == ConditionKind::previous ? "previous" : "first"},
                       {"y", detail::vector_to_json(p.y.values())}};
  if (pf.horizon) doc["horizon"] = *pf.horizon;
  if (pf.grid) doc["grid"] = *pf.grid;
  if (pf.ssr) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < pf.ssr->A.rows(); ++i)
      rows.push_back(detail::vector_to_json(pf.ssr->A.row(i).transpose()));
    doc["ssr"] = {{"A", rows},
                  {"B", detail::vector_to_json(pf.ssr->B)},
                  {"C", detail::vector_to_json(pf.ssr->C.transpose())},
                  {"D", pf.ssr->D}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace ltivp
