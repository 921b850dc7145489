#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "purity/reduction.hpp"

namespace purity {

/// Eigenpairs sorted by descending modulus. Right vectors have unit 2-norm;
/// left vectors satisfy l_k^T A = lambda_k l_k^T and l_k^T r_k = 1.
struct SpectralDecomposition {
  std::vector<std::complex<double>> eigenvalues;
  Eigen::MatrixXcd right;  // column k pairs with eigenvalues[k]
  Eigen::MatrixXcd left;   // column k holds l_k
  std::vector<double> residuals;       // ||A r_k - lambda_k r_k||
  std::vector<double> biorthogonality; // max_j |l_k^T r_j - delta_kj| over unflagged j
  std::vector<double> left_norms;
  std::vector<bool> flagged;           // member of a degenerate or defective cluster
  double matrix_norm = 0.0;            // infinity norm
  bool has_vectors = false;

  [[nodiscard]] std::size_t size() const noexcept { return eigenvalues.size(); }
};

enum class Precision { standard, extended };

struct EigOptions {
  bool vectors = true;
  /// Eigenvalues closer than cluster_tol * ||A|| are grouped and flagged.
  double cluster_tol = 1e-8;
  /// When known, the algebraic multiplicity of 0; that many smallest-modulus
  /// eigenvalues are flagged.
  std::optional<std::size_t> zero_multiplicity;
};

/// Dense nonsymmetric eigendecomposition in double precision
/// (Hessenberg reduction and shifted QR, left vectors by inverse iteration on
/// the transpose).
[[nodiscard]] SpectralDecomposition eig_general(const Eigen::MatrixXd& m, const EigOptions& opts = {});

/// Eigendecomposition of the block of a reduced matrix on `indices`. Exact
/// coefficients are evaluated in the chosen precision; the multiplicity of the
/// zero eigenvalue is computed exactly and used for flagging.
[[nodiscard]] SpectralDecomposition eig_reduced(const ReducedTransferMatrix& m, std::span<const std::size_t> indices,
                                                Precision precision = Precision::extended, EigOptions opts = {});

/// Decimal digits used by Precision::extended.
inline constexpr unsigned kExtendedDigits = 60;

}  // namespace purity
