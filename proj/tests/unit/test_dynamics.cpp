#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "purity/chebyshev.hpp"
#include "purity/dynamics.hpp"
#include "purity/error.hpp"
#include "purity/full_markov.hpp"

using namespace purity;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> geometric(double start, double ratio, int count) {
  std::vector<double> v;
  for (int t = 0; t < count; ++t) v.push_back(start * std::pow(ratio, t));
  return v;
}

}  // namespace

TEST(Dynamics, PropagateStartsFromOnesAndMatchesTheFullChain) {
  const int n = 10;
  const auto proto = make_canonical(n, 2, Boundary::open);
  const auto m = build_canonical(n, 2);
  const std::vector<Bipartition> comps{Bipartition::first_k(n, 2), Bipartition::first_k(n, 7)};
  const auto traj = propagate(m, 25, comps);
  const auto full = trajectory_full(proto, comps, 25, gate_weight(2));
  for (std::size_t c = 0; c < comps.size(); ++c) {
    EXPECT_EQ(traj[c].values.front(), 1.0);
    for (std::size_t t = 0; t < full.size(); ++t) EXPECT_NEAR(traj[c].values[t], full[t][c], 1e-14);
  }
}

TEST(Dynamics, LubkinAsymptote) {
  EXPECT_NEAR(lubkin_asymptote(2, 1), 0.8, 1e-15);
  EXPECT_NEAR(lubkin_asymptote(10, 3), (8.0 + 128.0) / 1025.0, 1e-15);
  EXPECT_NEAR(lubkin_asymptote(4, 2, 3), 18.0 / 82.0, 1e-15);
  EXPECT_THROW((void)lubkin_asymptote(4, 5), ValidationError);
}

TEST(Dynamics, DeviationSeriesMatchesSubtraction) {
  const int n = 12;
  const auto m = build_canonical(n, 3);
  const auto target = Bipartition::first_k(n, 6);
  const auto values = propagate(m, 30, target).values;
  const auto dev = deviation_series(m, 30, target);
  const double inf = lubkin_asymptote(n, 6);
  ASSERT_EQ(dev.size(), values.size());
  for (std::size_t t = 0; t < dev.size(); ++t) EXPECT_NEAR(dev[t], values[t] - inf, 1e-14);
}

TEST(Dynamics, DifferenceSeriesMatchesSubtraction) {
  const int n = 12;
  const auto m = build_perturbed(n, 3);
  const auto target = Bipartition::first_k(n, 6);
  const auto values = propagate(m, 30, target).values;
  const auto diff = difference_series(m, 30, target);
  ASSERT_EQ(diff.size(), values.size() - 1);
  for (std::size_t t = 0; t < diff.size(); ++t) EXPECT_NEAR(diff[t], values[t + 1] - values[t], 1e-14);
  EXPECT_THROW((void)deviation_series(m, 30, target), ValidationError);
}

TEST(Dynamics, DeviationStopsAtTheFloor) {
  const auto m = build_BW(8);
  const auto dev = deviation_series(m, 100000, Bipartition::first_k(8, 4));
  EXPECT_LT(dev.size(), 100001u);
  EXPECT_LT(std::abs(dev.back()), kDeviationFloor);
  EXPECT_TRUE(ratio_rates(dev).truncated);
}

TEST(Dynamics, RateEstimatorsOnGeometricSeries) {
  const double inf = 0.25;
  auto dev = geometric(1.0, 0.6, 20);
  std::vector<double> values;
  for (double d : dev) values.push_back(inf + d);
  for (double r : instantaneous_rates(values, inf).r) EXPECT_NEAR(r, 0.6, 1e-12);
  const auto succ = successive_rates(values);
  EXPECT_TRUE(std::isnan(succ.r.front()));
  for (std::size_t t = 1; t < succ.r.size(); ++t) EXPECT_NEAR(succ.r[t], 0.6, 1e-12);
  for (double r : ratio_rates(dev).r) EXPECT_NEAR(r, 0.6, 1e-15);
}

TEST(Dynamics, MedianOverTheWindow) {
  const std::vector<double> r{kNaN, 9.0, 1.0, 3.0, 2.0, 100.0};
  EXPECT_EQ(estimate_lambda_eff(r, {1, 4}), 2.5);
  EXPECT_EQ(estimate_lambda_eff(r, {0, 3}), 3.0);
  EXPECT_EQ(estimate_lambda_eff(r, {2, 50}), 2.5);
  EXPECT_THROW((void)estimate_lambda_eff(r, {0, 0}), ValidationError);
  EXPECT_THROW((void)estimate_lambda_eff(r, {3, 2}), ValidationError);
}

TEST(Dynamics, CrossoverArrivalAndPlateauExit) {
  std::vector<double> r(60, 0.66);
  for (std::size_t t = 30; t < r.size(); ++t) r[t] = 0.62;
  r[10] = 0.63;  // isolated dip does not count
  EXPECT_EQ(detect_crossover(r, 0.66, 0.62), 30);
  EXPECT_EQ(detect_arrival(r, 0.62, 0.66), 30);
  EXPECT_EQ(detect_arrival(r, 0.66, 0.62), 0);
  EXPECT_EQ(detect_plateau_exit(r, 0.66, 1e-3), 30);
  EXPECT_EQ(detect_crossover(r, 0.66, 0.62, 40), std::nullopt);
  std::vector<double> start_low(r.rbegin(), r.rend());
  EXPECT_EQ(detect_crossover(start_low, 0.66, 0.62), std::nullopt);
}

TEST(Dynamics, ConjecturedRates) {
  EXPECT_NEAR(conjectured_lambda_eff({0, 1, 0}), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(conjectured_lambda_eff({1, 0, 0}), 0.64, 1e-15);
  EXPECT_NEAR(conjectured_lambda_eff({3, 1, 0}), std::pow(0.64, 3) * 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(conjectured_lambda_eff({2, 0, 0}, 3), std::pow(4 * 0.09, 2), 1e-15);
  EXPECT_THROW((void)conjectured_lambda_eff({0, 1, 0}, 3), ValidationError);
  EXPECT_NEAR(conjectured_lambda_eff({0, 1, 0}, 3, 0.5), 0.5, 1e-15);
}

TEST(Dynamics, AsymptoticRateIsTheChebyshevEigenvalue) {
  for (auto [n, p] : {std::pair{20, 1}, std::pair{20, 10}, std::pair{30, 7}}) {
    EXPECT_NEAR(asymptotic_rate(build_canonical(n, p)), exact_nonzero_spectrum(n).front(), 1e-10);
  }
}

TEST(Dynamics, CrossoverBoundOnADiagonalMatrix) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 0.5;
  m(2, 2) = 0.25;
  const auto dec = eig_general(m);
  const auto b = crossover_bound(dec, 1, 0.1, 0.6);
  EXPECT_EQ(b.excluded_unit, 1);
  EXPECT_NEAR(b.c2, 1.0, 1e-12);  // only the 0.5 mode touches component 1
  EXPECT_NEAR(b.lambda2_modulus, 0.5, 1e-15);
  EXPECT_NEAR(b.t_star, std::log(10.0) / std::log(1.2), 1e-10);
  EXPECT_NEAR(b.bound, std::pow(3.0, 1.5), 1e-10);
  EXPECT_THROW((void)crossover_bound(dec, 1, 0.1, 0.4), ValidationError);
}

TEST(Dynamics, StaircasePlateauAtTwoThirds) {
  const int n = 60;
  const auto m = build_canonical(n, 1);
  const auto proto = make_canonical(n, 1, Boundary::open);
  DecayOptions opts;
  opts.cuts = classify_cuts(proto, Bipartition::first_k(n, 30));
  const auto rep = analyze_decay(m, Bipartition::first_k(n, 30), opts);
  EXPECT_EQ(rep.rate_kind, "asymptotic");
  EXPECT_NEAR(rep.lambda_eff, 2.0 / 3.0, 1e-3);
  EXPECT_NEAR(rep.lambda2, exact_nonzero_spectrum(n).front(), 1e-15);
  EXPECT_EQ(rep.lambda2_source, "chebyshev");
  ASSERT_TRUE(rep.conjecture.has_value());
  EXPECT_NEAR(*rep.conjecture, 2.0 / 3.0, 1e-15);
  EXPECT_EQ(rep.values.size(), static_cast<std::size_t>(3 * n + 1));
  EXPECT_EQ(rep.window.lo, 6);
  EXPECT_EQ(rep.window.hi, 36);
}

TEST(Dynamics, BrickwallDecaysAtItsEigenvalue) {
  const int n = 40;
  const auto rep = analyze_decay(build_BW(n), Bipartition::first_k(n, 20));
  EXPECT_NEAR(rep.lambda_eff, rep.lambda2, 5e-3);
  EXPECT_FALSE(rep.conjecture.has_value());
}

TEST(Dynamics, JunctionNotice) {
  const int n = 40;
  const auto proto = make_canonical(n, 10, Boundary::open);
  DecayOptions opts;
  opts.cuts = classify_cuts(proto, Bipartition::first_k(n, 20));
  const auto rep = analyze_decay(build_canonical(n, 10), Bipartition::first_k(n, 20), opts);
  ASSERT_FALSE(rep.notices.empty());
  EXPECT_NE(rep.notices.front().find("junction"), std::string::npos);
}
