#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <sstream>

#include "purity/csv.hpp"

using namespace purity;

TEST(Csv, DoublesRoundTripExactly) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int s = 0; s < 1000; ++s) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    EXPECT_EQ(std::strtod(format_double(x).c_str(), nullptr), x);
  }
  EXPECT_EQ(format_double(0.4), "0.40000000000000002");
  EXPECT_EQ(format_double(std::nan("")), "nan");
}

TEST(Csv, HeaderAndMatrixLayout) {
  std::ostringstream os;
  write_matrix_csv(os, build_BW(4), {{"n", "4"}, {"kind", "BW"}});
  const std::string want =
      "# n=4\n# kind=BW\n"
      "0000,1100,1111\n"
      "1,0,0\n"
      "0.16000000000000003,0.32000000000000006,0.16000000000000003\n"
      "0,0,1\n";
  EXPECT_EQ(os.str(), want);
}

TEST(Csv, TrajectoryRows) {
  std::ostringstream os;
  const std::vector<double> values{1.0, 0.5, 0.25};
  const std::vector<double> rates{0.5, 0.5};
  write_trajectory_csv(os, values, rates);
  EXPECT_EQ(os.str(), "t,I,rate\n0,1,0.5\n1,0.5,0.5\n2,0.25,nan\n");
}

TEST(Csv, MonteCarloRows) {
  MCEstimate est;
  est.mean = {1.0, 0.75};
  est.std_error = {0.0, 0.01};
  est.samples = 100;
  std::ostringstream os;
  write_mc_csv(os, est, {{"seed", "3"}});
  EXPECT_EQ(os.str(), "# seed=3\nt,mean,stderr,samples\n0,1,0,100\n1,0.75,0.01,100\n");
}
