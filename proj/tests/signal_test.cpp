#include <gtest/gtest.h>

#include <cmath>

#include "ltivp/signal.hpp"
#include "test_support.hpp"

namespace {

using namespace ltivp;

// Closed form of the ramp example's response.
Signal example1_solution() {
  return Signal({{0.2, 1, 0.0}, {-0.04, 0, 0.0}, {0.04, 0, -5.0}, {0.25, 0, -1.0}, {-0.25, 0, -5.0}});
}

TEST(SignalEval, Examples) {
  EXPECT_DOUBLE_EQ(Signal::ramp()(3.0), 3.0);
  EXPECT_NEAR(example1_solution()(0.0), 0.0, 1e-15);
  EXPECT_NEAR(Signal::cos(1.0)(0.0), 1.0, 1e-15);
  EXPECT_NEAR(Signal::sin(2.0)(0.3), std::sin(0.6), 1e-15);
  EXPECT_NEAR(Signal::exp(-5.0)(0.4), std::exp(-2.0), 1e-15);
}

TEST(SignalEval, ImaginaryResidueVanishesForClosedSignals) {
  const Signal x = Signal::cos(1.3, 2.0) + Signal::sin(0.7, -1.0) + Signal({{Complex(1, 2), 1, Complex(-1, 3)},
                                                                            {Complex(1, -2), 1, Complex(-1, -3)}});
  ASSERT_TRUE(x.is_conjugate_closed());
  for (double t = 0.0; t < 3.0; t += 0.37) EXPECT_LE(std::abs(x.eval_complex(t).imag()), 1e-10);
}

TEST(SignalDerivative, Examples) {
  const Signal d = Signal::ramp().derivative();
  ASSERT_EQ(d.modes().size(), 1u);
  EXPECT_EQ(d.modes()[0].power, 0);
  EXPECT_EQ(d.modes()[0].amp, Complex(1.0));

  const Signal dc = Signal::cos(1.0).derivative();
  for (double t = 0.0; t < 3.0; t += 0.25) EXPECT_NEAR(dc(t), -std::sin(t), 1e-15);

  // d/dt [t e^{-t}] = e^{-t} - t e^{-t}
  const Signal te = Signal({{1.0, 1, -1.0}}).derivative();
  const Signal expected({{1.0, 0, -1.0}, {-1.0, 1, -1.0}});
  ASSERT_EQ(te.modes().size(), expected.modes().size());
  for (std::size_t i = 0; i < te.modes().size(); ++i) {
    EXPECT_EQ(te.modes()[i].power, expected.modes()[i].power);
    EXPECT_EQ(te.modes()[i].amp, expected.modes()[i].amp);
  }
}

TEST(SignalDerivative, MatchesCentralDifferences) {
  testkit::Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const Signal x = testkit::random_signal(rng, {});
    const Signal dx = x.derivative();
    for (int k = 0; k < 20; ++k) {
      const double t = testkit::uniform(rng, 0.0, 3.0);
      const double h = 1e-6;
      const double fd = (x(t + h) - x(t - h)) / (2 * h);
      EXPECT_LE(std::abs(dx(t) - fd), 1e-5 * std::max(1.0, std::abs(fd))) << "t=" << t;
    }
  }
}

TEST(Signal, MergesEqualModes) {
  const Signal x({{1.0, 0, -1.0}, {2.0, 0, -1.0 + 1e-12}, {1.0, 1, -1.0}});
  EXPECT_EQ(x.modes().size(), 2u);
  const Signal z = Signal::ramp() - Signal::ramp();
  EXPECT_TRUE(z.is_zero());
  EXPECT_THROW(Signal({{1.0, -1, 0.0}}), DomainError);
}

TEST(ConditionStackOp, Examples) {
  const ConditionStack c = condition_stack(Signal::cos(1.0), 2);
  EXPECT_NEAR(c[0], 0.0, 1e-15);  // -sin(0)
  EXPECT_NEAR(c[1], 1.0, 1e-15);  // cos(0)
  const ConditionStack r = condition_stack(Signal::ramp(), 2);
  EXPECT_EQ(r, (ConditionStack{1.0, 0.0}));
  EXPECT_EQ(condition_stack(Signal::zero(), 4), ConditionStack::zeros(4));
  EXPECT_THROW(condition_stack(Signal::ramp(), 0), DomainError);
}

TEST(ConditionStackOp, ShiftsUnderDifferentiation) {
  testkit::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Signal x = testkit::random_signal(rng, {});
    const int n = testkit::uniform_int(rng, 2, 6);
    const ConditionStack full = condition_stack(x, n);
    const ConditionStack shifted = condition_stack(x.derivative(), n - 1);
    for (int i = 0; i < n - 1; ++i) EXPECT_NEAR(full[i], shifted[i], 1e-12);
    EXPECT_NEAR(full.derivative(0), x(0.0), 1e-14);
  }
}

TEST(Laplace, Examples) {
  const RationalFunction ramp = laplace_transform(Signal::ramp());
  EXPECT_EQ(ramp.num(), Polynomial{1.0});
  EXPECT_EQ(ramp.den(), (Polynomial{0.0, 0.0, 1.0}));

  const RationalFunction c = laplace_transform(Signal::cos(1.0));
  EXPECT_LT(rational_mismatch(c, RationalFunction(Polynomial{0.0, 1.0}, Polynomial{1.0, 0.0, 1.0})), 1e-15);

  const RationalFunction e = laplace_transform(Signal::exp(-5.0));
  EXPECT_EQ(e.num(), Polynomial{1.0});
  EXPECT_EQ(e.den(), (Polynomial{5.0, 1.0}));

  const RationalFunction z = laplace_transform(Signal::zero());
  EXPECT_TRUE(z.num().is_zero());
}

TEST(FromPartialFractions, Examples) {
  PartialFractionExpansion pfe;
  pfe.terms = {{-1.0, 1, 0.25}, {-5.0, 1, -0.25}};
  const Signal x = from_partial_fractions(pfe);
  for (double t = 0.0; t < 3.0; t += 0.3) EXPECT_NEAR(x(t), 0.25 * (std::exp(-t) - std::exp(-5 * t)), 1e-15);

  pfe.terms = {{0.0, 2, 1.0}};
  const Signal ramp = from_partial_fractions(pfe);
  ASSERT_EQ(ramp.modes().size(), 1u);
  EXPECT_EQ(ramp.modes()[0].power, 1);

  // Residue expansion of the switched-input example.
  pfe.terms = {{0.0, 2, 0.4}, {0.0, 1, 3.0 / 25}, {-5.0, 1, -3.0 / 25}, {-1.0, 1, -0.25}, {-5.0, 1, -0.75}};
  const Signal y = from_partial_fractions(pfe);
  EXPECT_NEAR(y(0.0), -1.0, 1e-14);
  EXPECT_NEAR(y.derivative()(0.0), 5.0, 1e-14);

  pfe.polynomial_part = Polynomial{1.0};
  EXPECT_THROW(from_partial_fractions(pfe), NotStrictlyProper);
}

TEST(Laplace, RoundTripThroughPartialFractions) {
  testkit::Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Complex> taken;
    const int dd = testkit::uniform_int(rng, 1, 6);
    const Polynomial den = testkit::random_pole_polynomial(rng, dd, 3.0, taken);
    std::vector<double> num(static_cast<std::size_t>(testkit::uniform_int(rng, 1, dd)));
    for (auto& c : num) c = testkit::uniform(rng, -3.0, 3.0);
    const RationalFunction rf{Polynomial(num), den};
    const Signal x = from_partial_fractions(partial_fractions(rf));
    EXPECT_LE(rational_mismatch(laplace_transform(x), rf), 1e-8) << "trial " << trial;
  }
}

TEST(SignalPoles, RatesWithMultiplicity) {
  const auto poles = signal_poles(Signal::cos(2.0) + Signal({{1.0, 2, -1.0}}) + Signal::exp(-1.0));
  ASSERT_TRUE(poles.has_value());
  ASSERT_EQ(poles->size(), 3u);
  int total = 0;
  for (const auto& r : *poles) total += r.multiplicity;
  EXPECT_EQ(total, 5);
  EXPECT_TRUE(signal_poles(Signal::zero())->empty());
  EXPECT_FALSE(signal_poles(Signal({{1.0, 0, Complex(0.0, 1.0)}})).has_value());
}

TEST(Format, SignalFoldsConjugatePairs) {
  EXPECT_EQ(to_string(Signal::cos(2.0, 3.0)), "3 * cos(2*t)");
  EXPECT_EQ(to_string(Signal::sin(1.0)), "1 * sin(1*t)");
  EXPECT_EQ(to_string(Signal::zero()), "0");
  EXPECT_EQ(to_string(example1_solution()), "-0.21 * exp(-5*t) + 0.25 * exp(-1*t) - 0.04 + 0.2 * t");
  EXPECT_EQ(to_string(Signal({{-1.5, 2, Complex(-1.0, 0.0)}})), "-1.5 * t^2 * exp(-1*t)");
}

}  // namespace
