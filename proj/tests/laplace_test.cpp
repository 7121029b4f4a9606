#include <gtest/gtest.h>

#include <cmath>

#include "ltivp/laplace.hpp"
#include "test_support.hpp"

namespace {

using namespace ltivp;

LinearODE example1() { return {Eigen::Vector2d(6, 5), Eigen::Vector3d(0, 1, 1)}; }
LinearODE example2() { return {Eigen::Vector2d(6, 5), Eigen::Vector3d(1, 3, 2)}; }

double solex2(double t) { return t / 5 - (1 - std::exp(-5 * t)) / 25 + (std::exp(-t) - std::exp(-5 * t)) / 4; }
double example2_closed(double t) {
  return 3.0 / 25 + 0.4 * t - 3.0 / 25 * std::exp(-5 * t) - 0.25 * std::exp(-t) - 0.75 * std::exp(-5 * t);
}

RationalFunction plmm() {
  const Polynomial A{5, 6, 1};
  const Polynomial s2{0, 0, 1};
  return RationalFunction(Polynomial{2, 3, 1}, A * s2) + RationalFunction(Polynomial{-2, -1}, A);
}

IVProblem example2_problem(ConditionKind kind) {
  IVProblem p{example2(), {Signal::cos(1.0), Signal::ramp()}, kind,
              kind == ConditionKind::previous ? ConditionStack{1, 0} : ConditionStack{5, -1}};
  return p;
}

TEST(Assemble, Example2BothForms) {
  const RationalFunction Us = laplace_transform(Signal::ramp());
  const LaplaceSolution first = assemble(example2(), Us, {5, -1}, {1, 0});
  const LaplaceSolution prev = assemble(example2(), Us, {1, 0}, {0, 1});
  EXPECT_LE(rational_mismatch(first.Ys, plmm()), 1e-9);
  EXPECT_LE(rational_mismatch(prev.Ys, plmm()), 1e-9);
  EXPECT_EQ(first.ic_numerator, (Polynomial{-2, -1}));
  EXPECT_EQ(prev.ic_numerator, (Polynomial{-2, -1}));
  EXPECT_LE(rational_mismatch(first.zero_state_part + first.zero_input_part, first.Ys), 1e-12);
}

TEST(Assemble, ZeroProblem) {
  const LaplaceSolution sol =
      assemble(example1(), laplace_transform(Signal::zero()), ConditionStack::zeros(2), ConditionStack::zeros(2));
  EXPECT_TRUE(sol.Ys.num().is_zero());
}

TEST(Invert, Examples) {
  const Signal a = invert(RationalFunction(Polynomial{1}, Polynomial{5, 6, 1}));
  const Signal b = invert(RationalFunction(Polynomial{1}, Polynomial{0, 0, 1}));
  const Signal c = invert(RationalFunction(Polynomial{-2, -1}, Polynomial{5, 6, 1}));
  for (double t = 0.0; t <= 3.0; t += 0.1) {
    EXPECT_NEAR(a(t), (std::exp(-t) - std::exp(-5 * t)) / 4, 1e-14);
    EXPECT_NEAR(b(t), t, 1e-14);
    EXPECT_NEAR(c(t), -0.25 * std::exp(-t) - 0.75 * std::exp(-5 * t), 1e-14);
  }
  EXPECT_THROW(invert(RationalFunction(Polynomial{1, 1}, Polynomial{2, 1})), NotStrictlyProper);
}

TEST(SolveIVP, Example1) {
  const IVProblem p{example1(), {Signal::ramp(), Signal::ramp()}, ConditionKind::first, {1, 0}};
  const Signal y = solve_ivp(p);
  for (int i = 0; i < 100; ++i) {
    const double t = 3.0 * i / 99;
    EXPECT_NEAR(y(t), solex2(t), 1e-9) << "t=" << t;
  }
}

TEST(SolveIVP, Example2BothForms) {
  for (const auto kind : {ConditionKind::previous, ConditionKind::first}) {
    const Signal y = solve_ivp(example2_problem(kind));
    for (double t = 0.0; t <= 3.0; t += 0.05) EXPECT_NEAR(y(t), example2_closed(t), 1e-10);
    EXPECT_NEAR(y(0.0), -1.0, 1e-12);
    EXPECT_NEAR(y.derivative()(0.0), 5.0, 1e-12);
  }
}

TEST(SolveIVP, FirstFormIgnoresThePast) {
  IVProblem p = example2_problem(ConditionKind::first);
  const Signal a = solve_ivp(p);
  p.input.past = Signal::exp(3.0, 7.0);
  const Signal b = solve_ivp(p);
  for (double t = 0.0; t <= 3.0; t += 0.3) EXPECT_EQ(a(t), b(t));
}

TEST(SolveIVP, ZeroProblem) {
  const IVProblem p{example2(), {}, ConditionKind::previous, ConditionStack::zeros(2)};
  EXPECT_TRUE(solve_ivp(p).is_zero());
}

TEST(ConditionForms, PreviousAndFirstGiveTheSameY) {
  testkit::Rng rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = testkit::uniform_int(rng, 1, 5);
    const LinearODE ode = testkit::random_ode(rng, n);
    const RationalFunction Us = laplace_transform(testkit::random_signal(rng, {}));
    const ConditionStack yp = testkit::random_stack(rng, n);
    const ConditionStack up = testkit::random_stack(rng, n);
    const ConditionStack uf = testkit::random_stack(rng, n);
    const ConditionStack yf = map_previous_to_first(ode, yp, up, uf);
    const double mis = rational_mismatch(assemble(ode, Us, yp, up).Ys, assemble(ode, Us, yf, uf).Ys);
    EXPECT_LE(mis, 1e-8) << "trial " << trial;
  }
}

struct RandomProblem {
  IVProblem problem;
  std::vector<Complex> poles;
};

RandomProblem random_problem(testkit::Rng& rng, int max_n) {
  std::vector<Complex> taken;
  const int n = testkit::uniform_int(rng, 1, max_n);
  const LinearODE ode = testkit::random_pole_ode(rng, n, 3.0, taken);
  const Signal past = testkit::random_signal(rng, {});
  const Signal future = testkit::random_signal(rng, taken);
  const auto kind = testkit::uniform_int(rng, 0, 1) ? ConditionKind::previous : ConditionKind::first;
  return {IVProblem{ode, {past, future}, kind, testkit::random_stack(rng, n)}, taken};
}

TEST(SolveIVP, SatisfiesTheODE) {
  testkit::Rng rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const IVProblem p = random_problem(rng, 5).problem;
    const Signal y = solve_ivp(p);
    for (int i = 1; i <= 50; ++i) {
      const double t = 3.0 * i / 50;
      const auto r = testkit::ode_sides(p.ode, y, p.input.future, t);
      const double scale = std::max(1.0, std::abs(r.rhs));
      EXPECT_LE(std::abs(r.lhs - r.rhs), 1e-6 * scale) << "trial " << trial << " t=" << t;
    }
  }
}

TEST(SolveIVP, ReproducesTheFirstConditions) {
  testkit::Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const IVProblem p = random_problem(rng, 5).problem;
    const ConditionStack got = condition_stack(solve_ivp(p), p.ode.order());
    const ConditionStack want = first_conditions(p);
    const double err = (got.values() - want.values()).cwiseAbs().maxCoeff();
    EXPECT_LE(err, 1e-8 * std::max(1.0, want.values().cwiseAbs().maxCoeff())) << "trial " << trial;
  }
}

TEST(SolveIVP, Superposition) {
  testkit::Rng rng(73);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Complex> taken;
    const int n = testkit::uniform_int(rng, 1, 4);
    const LinearODE ode = testkit::random_pole_ode(rng, n, 2.0, taken);
    const IVProblem p1{ode, {testkit::random_signal(rng, {}), testkit::random_signal(rng, taken)},
                       ConditionKind::previous, testkit::random_stack(rng, n)};
    const IVProblem p2{ode, {testkit::random_signal(rng, {}), testkit::random_signal(rng, taken)},
                       ConditionKind::previous, testkit::random_stack(rng, n)};
    const IVProblem sum{ode, {p1.input.past + p2.input.past, p1.input.future + p2.input.future},
                        ConditionKind::previous, p1.y + p2.y};
    const Signal y1 = solve_ivp(p1);
    const Signal y2 = solve_ivp(p2);
    const Signal y = solve_ivp(sum);
    for (double t = 0.0; t <= 2.0; t += 0.25)
      EXPECT_TRUE(testkit::close_rel(y(t), y1(t) + y2(t), 1e-8, 1e-8)) << "trial " << trial << " t=" << t;
  }
}

TEST(Assemble, StrictlyProperForProperInputs) {
  testkit::Rng rng(79);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = testkit::uniform_int(rng, 1, 6);
    const LinearODE ode = testkit::random_ode(rng, n);
    const RationalFunction Us = laplace_transform(testkit::random_signal(rng, {}));
    const auto sol = assemble(ode, Us, testkit::random_stack(rng, n), testkit::random_stack(rng, n));
    EXPECT_TRUE(sol.Ys.num().is_zero() || sol.Ys.is_strictly_proper());
  }
}

}  // namespace
