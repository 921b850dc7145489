#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "purity/chebyshev.hpp"
#include "purity/error.hpp"
#include "purity/power_sum.hpp"

using namespace purity;

TEST(Chebyshev, MatchesTrigonometricForm) {
  for (int m = 0; m < 40; ++m) {
    for (double theta : {0.1, 0.7, 1.3, 2.9}) {
      const double want = std::sin((m + 1) * theta) / std::sin(theta);
      EXPECT_NEAR(chebyshev_U(m, std::cos(theta)), want, 1e-10 * std::max(1.0, std::abs(want))) << m;
    }
  }
}

TEST(Chebyshev, MatchesHyperbolicFormOutsideTheInterval) {
  for (int m = 0; m < 30; ++m) {
    const double s = 0.8;
    const double want = std::sinh((m + 1) * s) / std::sinh(s);
    EXPECT_NEAR(chebyshev_U(m, std::cosh(s)), want, 1e-12 * want);
  }
  EXPECT_EQ(chebyshev_U(-1, 0.3), 0.0);
  EXPECT_EQ(chebyshev_U(5, 1.0), 6.0);
}

TEST(Chebyshev, ExactSpectrumIsDescendingAndBounded) {
  const double a = gate_weight(2);
  for (int n = 4; n <= 60; n += 2) {
    const auto s = exact_nonzero_spectrum(n);
    ASSERT_EQ(s.size(), static_cast<std::size_t>(n / 2 - 1));
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double c = std::cos(static_cast<double>(j + 1) * std::numbers::pi / n);
      ASSERT_NEAR(s[j], 4 * a * a * c * c, 1e-15);
      ASSERT_LT(s[j], 4 * a * a);
      if (j > 0) {
        ASSERT_LT(s[j], s[j - 1]);
      }
    }
  }
  EXPECT_THROW((void)exact_nonzero_spectrum(7), ValidationError);
}

TEST(Chebyshev, ClosedFormVanishesOnTheSpectrum) {
  const double a = gate_weight(2);
  for (int n : {10, 14, 20}) {
    for (double lambda : exact_nonzero_spectrum(n)) {
      const double scale = std::abs(charpoly_closed_form(n, 2, a, lambda * 1.01));
      EXPECT_LT(std::abs(charpoly_closed_form(n, 2, a, lambda)), 1e-9 * scale) << n;
    }
  }
}

TEST(Chebyshev, SecularEquationReducesToTheUnperturbedCase) {
  // With a^(n-2p) replaced by 1 the first term vanishes and the roots are the
  // Chebyshev roots of U_{n-1}.
  const double a = gate_weight(2);
  const int n = 12;
  for (double lambda : exact_nonzero_spectrum(n)) {
    const double x = std::sqrt(lambda) / (2 * a);
    EXPECT_NEAR(chebyshev_U(n - 1, x), 0.0, 1e-10);
  }
  const double value = perturbed_secular(n, 3, a, 0.5);
  const double x = std::sqrt(0.5) / (2 * a);
  const double want = (std::pow(a, n - 6) - 1) * chebyshev_U(5, x) + std::pow(0.5, 3) * chebyshev_U(n - 1, x);
  EXPECT_NEAR(value, want, 1e-12 * std::abs(want));
}
