#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "purity/error.hpp"
#include "purity/full_markov.hpp"
#include "purity/power_sum.hpp"
#include "purity/montecarlo.hpp"

using namespace purity;
using cd = std::complex<double>;

namespace {

StateVector random_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cd(normal(rng), normal(rng));
  v.normalize();
  return StateVector(n, v);
}

// tr rho_A^2 with rho_A built entry by entry from the partial trace over B.
double purity_by_partial_trace(const StateVector& psi, const Bipartition& bp) {
  const int n = psi.n();
  std::vector<int> a_sites, b_sites;
  for (int q = 1; q <= n; ++q) (bp.contains(q) ? a_sites : b_sites).push_back(q);
  const int da = 1 << a_sites.size();
  const int db = 1 << b_sites.size();
  auto index = [&](int xa, int xb) {
    int idx = 0;
    for (std::size_t k = 0; k < a_sites.size(); ++k) idx |= ((xa >> k) & 1) << (a_sites[k] - 1);
    for (std::size_t k = 0; k < b_sites.size(); ++k) idx |= ((xb >> k) & 1) << (b_sites[k] - 1);
    return idx;
  };
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(da, da);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      for (int b = 0; b < db; ++b) rho(i, j) += psi.amplitudes()(index(i, b)) * std::conj(psi.amplitudes()(index(j, b)));
    }
  }
  return (rho * rho).trace().real();
}

// Full 2^n unitary of a two-site gate by explicit matrix elements.
Eigen::MatrixXcd embed(int n, GatePosition g, const Eigen::Matrix4cd& u) {
  const int dim = 1 << n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const int bi = (col >> (g.i - 1)) & 1;
    const int bj = (col >> (g.j - 1)) & 1;
    const int rest = col & ~(1 << (g.i - 1)) & ~(1 << (g.j - 1));
    for (int li = 0; li < 2; ++li) {
      for (int lj = 0; lj < 2; ++lj) {
        const int row = rest | (li << (g.i - 1)) | (lj << (g.j - 1));
        out(row, col) = u(2 * li + lj, 2 * bi + bj);
      }
    }
  }
  return out;
}

}  // namespace

TEST(MonteCarlo, HaarGatesAreUnitary) {
  std::mt19937_64 rng(1);
  for (int s = 0; s < 50; ++s) {
    const auto u = haar_gate(4, rng);
    EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(4, 4)).norm(), 1e-13);
  }
}

TEST(MonteCarlo, HaarMoments) {
  // For Haar U(4): E|U_00|^2 = 1/4 and E|U_00|^4 = 2/(4*5).
  std::mt19937_64 rng(2);
  const int samples = 40000;
  double m2 = 0.0, m4 = 0.0, m4sq = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double x = std::norm(haar_gate(4, rng)(0, 0));
    m2 += x;
    m4 += x * x;
    m4sq += x * x * x * x;
  }
  m2 /= samples;
  m4 /= samples;
  const double sd4 = std::sqrt((m4sq / samples - m4 * m4) / samples);
  EXPECT_NEAR(m2, 0.25, 4 * std::sqrt(0.25 / samples));
  EXPECT_NEAR(m4, 0.1, 4 * sd4);
}

TEST(MonteCarlo, GateApplicationMatchesExplicitEmbedding) {
  std::mt19937_64 rng(3);
  const int n = 4;
  for (GatePosition g : {GatePosition{1, 2}, GatePosition{2, 3}, GatePosition{4, 1}}) {
    auto psi = random_state(n, 9);
    const Eigen::VectorXcd before = psi.amplitudes();
    const Eigen::Matrix4cd u = haar_gate(4, rng);
    apply_gate(psi, g, u);
    const Eigen::VectorXcd want = embed(n, g, u) * before;
    EXPECT_LT((psi.amplitudes() - want).norm(), 1e-13);
  }
}

TEST(MonteCarlo, PurityMatchesPartialTrace) {
  for (int n : {3, 5, 6}) {
    const auto psi = random_state(n, static_cast<std::uint64_t>(n));
    for (std::uint64_t alpha = 0; alpha < (std::uint64_t{1} << n); ++alpha) {
      const auto bp = decode_alpha(n, alpha);
      EXPECT_NEAR(purity_of_state(psi, bp), purity_by_partial_trace(psi, bp), 1e-13);
    }
  }
}

TEST(MonteCarlo, KnownPurities) {
  EXPECT_NEAR(purity_of_state(StateVector(4), Bipartition::first_k(4, 2)), 1.0, 1e-15);
  Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(purity_of_state(StateVector(2, bell), Bipartition::first_k(2, 1)), 0.5, 1e-15);
}

TEST(MonteCarlo, IdentityGatesLeaveTheState) {
  auto psi = random_state(6, 4);
  const Eigen::VectorXcd before = psi.amplitudes();
  const GateSource identity = [] { return Eigen::Matrix4cd::Identity().eval(); };
  evolve_step(psi, make_canonical(6, 2, Boundary::periodic), identity);
  EXPECT_LT((psi.amplitudes() - before).norm(), 1e-15);
}

TEST(MonteCarlo, EvolutionPreservesTheNorm) {
  std::mt19937_64 rng(5);
  StateVector psi(8);
  for (int t = 0; t < 5; ++t) evolve_step(psi, make_canonical(8, 2, Boundary::periodic), rng);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
}

TEST(MonteCarlo, ResultsDoNotDependOnTheThreadCount) {
  const auto proto = make_canonical(6, 3, Boundary::open);
  const auto bp = Bipartition::from_bitstring("101010");
  MCOptions one{300, 7, 1};
  MCOptions three{300, 7, 3};
  const auto x = mc_trajectory(proto, bp, 4, one);
  const auto y = mc_trajectory(proto, bp, 4, three);
  EXPECT_EQ(x.mean, y.mean);
  EXPECT_EQ(x.std_error, y.std_error);
  EXPECT_EQ(x.samples, 300u);
  EXPECT_EQ(x.mean.front(), 1.0);
}

TEST(MonteCarlo, AgreesWithTheMarkovChain) {
  for (auto bc : {Boundary::open, Boundary::periodic}) {
    const auto proto = make_canonical(6, 1, bc);
    const auto bp = Bipartition::first_k(6, 3);
    const auto est = mc_trajectory(proto, bp, 6, MCOptions{4000, 11, 0});
    const auto exact = trajectory_full(proto, bp, 6, gate_weight(2));
    for (std::size_t t = 1; t < exact.size(); ++t) {
      EXPECT_NEAR(est.mean[t], exact[t], 4.5 * est.std_error[t] + 1e-12) << "t=" << t;
    }
  }
}

TEST(MonteCarlo, Guards) {
  EXPECT_THROW(StateVector(kMonteCarloMaxSites + 1), CapacityError);
  EXPECT_THROW((void)mc_trajectory(make_canonical(4, 1, Boundary::open), Bipartition::first_k(4, 2), 3,
                                   MCOptions{10, 0, 1}),
               ValidationError);
}
