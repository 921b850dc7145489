#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "purity/chebyshev.hpp"
#include "purity/eigensolve.hpp"
#include "purity/reduction.hpp"

namespace purity {

/// Eigenvalues of the nontrivial block with the exact zero eigenvalues removed
/// (the removed count is the algebraic multiplicity of 0), descending modulus.
[[nodiscard]] std::vector<std::complex<double>> nonzero_spectrum(const ReducedTransferMatrix& m,
                                                                 Precision precision = Precision::extended);

/// Largest-modulus eigenvalue of the nontrivial block.
[[nodiscard]] std::complex<double> leading_eigenvalue(const ReducedTransferMatrix& m,
                                                      Precision precision = Precision::standard);

/// Largest real root in (0, 1) of the perturbed secular equation. Requires
/// even n and 1 <= p < n/2.
[[nodiscard]] double perturbed_lambda2(int n, int p, int d = 2);

struct PseudospectrumResult {
  double eps = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<std::complex<double>>> clouds;  // one eigenvalue list per sample
  double largest_modulus = 0.0;  // max over all samples
  double typical_modulus = 0.0;  // median of the per-sample spectral radius
};

/// Eigenvalues of m + eps E for `samples` independent E with i.i.d. standard
/// normal entries. The `exclude_near_one` eigenvalues closest to 1 in each
/// sample are left out of largest_modulus.
[[nodiscard]] PseudospectrumResult pseudospectrum(const Eigen::MatrixXd& m, double eps, int samples,
                                                  std::uint64_t seed, int exclude_near_one = 0);

/// max_k ||l_k|| over unflagged pairs.
[[nodiscard]] double left_norm_profile(const SpectralDecomposition& dec);
/// Same on the nontrivial block of a reduced matrix.
[[nodiscard]] double left_norm_profile(const ReducedTransferMatrix& m, Precision precision = Precision::extended);

struct CharpolyCheck {
  double max_relative_deviation = 0.0;
  int evaluated = 0;
  int skipped = 0;  // probes where the closed form vanishes
};

/// Compares det(R_p^(n) - lambda) against its Chebyshev closed form at each probe.
[[nodiscard]] CharpolyCheck charpoly_residual(int n, int p, std::span<const double> probes, int d = 2);

/// Smallest m with rank(R^m) = rank(R^(m+1)) for R = R_p^(n); ranks are exact.
[[nodiscard]] int kernel_jordan_probe(int n, int p, int d = 2);

}  // namespace purity
