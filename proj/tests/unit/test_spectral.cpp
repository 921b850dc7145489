#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "purity/chebyshev.hpp"
#include "purity/error.hpp"
#include "purity/spectral.hpp"

using namespace purity;

TEST(Spectral, NonzeroSpectrumIsIndependentOfTheProtocol) {
  const int n = 14;
  const auto exact = exact_nonzero_spectrum(n);
  for (int p = 1; p <= n / 2; ++p) {
    const auto got = nonzero_spectrum(build_canonical(n, p));
    ASSERT_EQ(got.size(), exact.size()) << p;
    for (std::size_t j = 0; j < exact.size(); ++j) {
      EXPECT_NEAR(got[j].real(), exact[j], 1e-13);
      EXPECT_NEAR(got[j].imag(), 0.0, 1e-13);
    }
  }
}

TEST(Spectral, OddCutExtensionKeepsTheSpectrum) {
  const auto exact = exact_nonzero_spectrum(14);
  const auto got = nonzero_spectrum(extend_odd_k(14, 5, 5));
  ASSERT_EQ(got.size(), exact.size());
  for (std::size_t j = 0; j < exact.size(); ++j) EXPECT_NEAR(got[j].real(), exact[j], 1e-13);
}

TEST(Spectral, LeadingEigenvalueOfTheStaircase) {
  const auto z = leading_eigenvalue(build_S(20));
  EXPECT_NEAR(z.real(), exact_nonzero_spectrum(20).front(), 1e-10);
}

TEST(Spectral, PerturbedRootIsAnEigenvalue) {
  const double a = gate_weight(2);
  for (auto [n, p] : {std::pair{20, 4}, std::pair{24, 9}, std::pair{30, 6}}) {
    const double root = perturbed_lambda2(n, p);
    const auto m = build_perturbed(n, p);
    const auto dec = eig_reduced(m, m.basis().nontrivial(), Precision::extended);
    EXPECT_NEAR(dec.eigenvalues.front().real(), root, 1e-12) << n << "," << p;
    const double lo = perturbed_secular(n, p, a, root * (1 - 1e-9));
    const double hi = perturbed_secular(n, p, a, root * (1 + 1e-9));
    EXPECT_LT(lo * hi, 0.0);
    EXPECT_GT(root, exact_nonzero_spectrum(n).front());
  }
  EXPECT_THROW((void)perturbed_lambda2(20, 10), ValidationError);
  EXPECT_THROW((void)perturbed_lambda2(21, 3), ValidationError);
}

TEST(Spectral, PseudospectrumIsReproducible) {
  const auto m = build_canonical(20, 4);
  const auto r = m.dense_as<double>(m.basis().nontrivial());
  const auto x = pseudospectrum(r, 1e-6, 4, 42);
  const auto y = pseudospectrum(r, 1e-6, 4, 42);
  const auto z = pseudospectrum(r, 1e-6, 4, 43);
  EXPECT_EQ(x.clouds, y.clouds);
  EXPECT_NE(x.clouds, z.clouds);
  EXPECT_EQ(x.clouds.size(), 4u);
  EXPECT_LE(x.typical_modulus, x.largest_modulus);
  EXPECT_THROW((void)pseudospectrum(r, 0.0, 4, 1), ValidationError);
}

TEST(Spectral, PseudospectrumOfANormalMatrixStaysClose) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(5, 5);
  for (int k = 0; k < 5; ++k) d(k, k) = 0.1 * (k + 1);
  const auto ps = pseudospectrum(d, 1e-8, 10, 3);
  EXPECT_NEAR(ps.largest_modulus, 0.5, 1e-6);
  EXPECT_NEAR(ps.typical_modulus, 0.5, 1e-6);
  const auto without_top = pseudospectrum(d, 1e-8, 3, 3, 1);
  EXPECT_NEAR(without_top.largest_modulus, 0.4, 1e-6);
}

TEST(Spectral, LeftNormsOfASymmetricMatrixAreOne) {
  Eigen::MatrixXd s(3, 3);
  s << 2, 1, 0, 1, 3, 1, 0, 1, 4;
  EXPECT_NEAR(left_norm_profile(eig_general(s)), 1.0, 1e-10);
}

TEST(Spectral, CharpolyClosedFormHolds) {
  const std::vector<double> probes{0.05, 0.2, 0.37, 0.5, 0.61, 0.9};
  for (auto [n, p] : {std::pair{10, 3}, std::pair{12, 1}, std::pair{16, 8}}) {
    const auto check = charpoly_residual(n, p, probes);
    EXPECT_LE(check.max_relative_deviation, 1e-9) << n << "," << p;
    EXPECT_EQ(check.evaluated + check.skipped, static_cast<int>(probes.size()));
    EXPECT_GT(check.evaluated, 0);
  }
}

TEST(Spectral, KernelJordanBlock) {
  EXPECT_EQ(kernel_jordan_probe(12, 3), 3);
  EXPECT_EQ(kernel_jordan_probe(10, 1), 4);
  EXPECT_EQ(kernel_jordan_probe(8, 4), 0);
}
