#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "purity/error.hpp"
#include "purity/power_sum.hpp"

using namespace purity;

TEST(PowerSum, AccumulatesLikeTerms) {
  auto s = PowerSum::power(2) + PowerSum::power(2) + PowerSum::power(3);
  EXPECT_EQ(s.to_string(), "2a^2+a^3");
  s += PowerSum::power(1, 3);
  EXPECT_EQ(s.to_string(), "3a+2a^2+a^3");
  EXPECT_EQ(s.shifted(2).to_string(), "3a^3+2a^4+a^5");
  EXPECT_EQ(PowerSum().to_string(), "0");
  EXPECT_TRUE(PowerSum::power(4, 0).is_zero());
  EXPECT_EQ(PowerSum::one().to_string(), "1");
}

TEST(PowerSum, EvaluatesAgainstDirectPowers) {
  const auto s = PowerSum::power(0) + PowerSum::power(2, 2) + PowerSum::power(7);
  for (double a : {0.0, 0.4, 0.3, 1.0}) {
    EXPECT_NEAR(s.evaluate(a), 1.0 + 2.0 * a * a + std::pow(a, 7), 1e-15);
  }
}

TEST(PowerSum, OrderOfAdditionIsIrrelevant) {
  const auto x = PowerSum::power(5) + PowerSum::power(1) + PowerSum::power(3, 2);
  const auto y = PowerSum::power(3, 2) + PowerSum::power(5) + PowerSum::power(1);
  EXPECT_EQ(x, y);
}

// The gate weight is the coefficient of the identity (and of the full swap)
// in the two-design average of a single-site swap on two sites of dimension d.
TEST(GateWeight, MatchesTwoDesignAverage) {
  for (int d : {2, 3, 4}) {
    const int local = d * d;  // two copies of one site
    const int dim = local * local;
    auto swap_site = [&](int which) {
      Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dim, dim);
      for (int idx = 0; idx < dim; ++idx) {
        int site[2] = {idx % local, idx / local};
        int c1 = site[which] % d, c2 = site[which] / d;
        site[which] = c2 + d * c1;
        s(site[0] + local * site[1], idx) = 1.0;
      }
      return s;
    };
    const Eigen::MatrixXd s1 = swap_site(0);
    const Eigen::MatrixXd full = s1 * swap_site(1);
    const double big_d = d * d;
    const double tr_x = s1.trace();
    const double tr_sx = (full * s1).trace();
    const double coeff_identity = (tr_x - tr_sx / big_d) / (big_d * big_d - 1.0);
    const double coeff_swap = (tr_sx - tr_x / big_d) / (big_d * big_d - 1.0);
    EXPECT_NEAR(coeff_identity, gate_weight(d), 1e-15) << "d=" << d;
    EXPECT_NEAR(coeff_swap, gate_weight(d), 1e-15) << "d=" << d;
  }
  EXPECT_DOUBLE_EQ(gate_weight(2), 0.4);
  EXPECT_THROW((void)gate_weight(1), ValidationError);
}
