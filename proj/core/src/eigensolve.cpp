#include "purity/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "purity/error.hpp"
#include "purity/modular_rank.hpp"
#include "mp_real.hpp"

namespace purity {

namespace {

using detail::MpReal;

template <typename Real>
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CMat = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVec = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
double to_double(const Real& x) {
  if constexpr (std::is_same_v<Real, double>) {
    return x;
  } else {
    return x.template convert_to<double>();
  }
}

template <typename Real>
std::complex<double> to_double(const std::complex<Real>& z) {
  return {to_double(z.real()), to_double(z.imag())};
}

template <typename Real>
Real modulus(const std::complex<Real>& z) {
  using std::sqrt;
  return sqrt(z.real() * z.real() + z.imag() * z.imag());
}

template <typename Real>
Real vec_norm(const CVec<Real>& v) {
  using std::sqrt;
  Real s(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) s += v(i).real() * v(i).real() + v(i).imag() * v(i).imag();
  return sqrt(s);
}

// Single-linkage grouping of eigenvalues within tol of each other.
std::vector<int> cluster_ids(const std::vector<std::complex<double>>& values, double tol) {
  const std::size_t m = values.size();
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
    return i;
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (std::abs(values[i] - values[j]) <= tol) parent[static_cast<std::size_t>(root(static_cast<int>(j)))] =
          root(static_cast<int>(i));
    }
  }
  std::vector<int> ids(m);
  for (std::size_t i = 0; i < m; ++i) ids[i] = root(static_cast<int>(i));
  return ids;
}

template <typename Real>
SpectralDecomposition decompose(const Mat<Real>& a, const EigOptions& opts) {
  using std::pow;
  const Eigen::Index m = a.rows();
  SpectralDecomposition out;
  out.has_vectors = opts.vectors;
  if (m == 0) return out;
  for (Eigen::Index r = 0; r < m; ++r) {
    double row = 0.0;
    for (Eigen::Index c = 0; c < m; ++c) row += std::abs(to_double(a(r, c)));
    if (!std::isfinite(row)) throw ValidationError("matrix has non-finite entries");
    out.matrix_norm = std::max(out.matrix_norm, row);
  }

  Eigen::EigenSolver<Mat<Real>> es;
  es.compute(a, opts.vectors);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("QR iteration did not converge for a " + std::to_string(m) + "x" + std::to_string(m) +
                           " matrix");
  }
  const CVec<Real> values = es.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::vector<Real> mods(static_cast<std::size_t>(m));
  for (Eigen::Index k = 0; k < m; ++k) mods[static_cast<std::size_t>(k)] = modulus(values(k));
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    const auto& mx = mods[static_cast<std::size_t>(x)];
    const auto& my = mods[static_cast<std::size_t>(y)];
    if (mx != my) return mx > my;
    if (values(x).real() != values(y).real()) return values(x).real() > values(y).real();
    return values(x).imag() > values(y).imag();
  });

  for (auto k : order) out.eigenvalues.push_back(to_double(values(k)));
  const auto count = static_cast<std::size_t>(m);
  out.flagged.assign(count, false);
  const auto ids = cluster_ids(out.eigenvalues, opts.cluster_tol * std::max(out.matrix_norm, 1e-300));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      if (i != j && ids[i] == ids[j]) out.flagged[i] = true;
    }
  }
  if (opts.zero_multiplicity) {
    const std::size_t z = std::min(*opts.zero_multiplicity, count);
    if (z >= 2 || (z == 1 && count > 1 && std::abs(out.eigenvalues[count - 2]) <= opts.cluster_tol * out.matrix_norm)) {
      for (std::size_t i = count - z; i < count; ++i) out.flagged[i] = true;
    }
  }
  if (!opts.vectors) return out;

  const CMat<Real> raw = es.eigenvectors();
  const CMat<Real> ac = a.template cast<std::complex<Real>>();
  const CMat<Real> at = ac.transpose();
  CMat<Real> right(m, m);
  CMat<Real> left(m, m);
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real shift = pow(eps, Real(0.75)) * Real(std::max(out.matrix_norm, 1e-300));
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    const std::complex<Real> lambda = values(src);
    CVec<Real> r = raw.col(src);
    const Real rn = vec_norm<Real>(r);
    if (rn > Real(0)) r /= std::complex<Real>(rn);
    right.col(k) = r;

    const std::complex<Real> mu = lambda + std::complex<Real>(shift, shift);
    Eigen::PartialPivLU<CMat<Real>> lu(at - mu * CMat<Real>::Identity(m, m));
    CVec<Real> l(m);
    for (Eigen::Index i = 0; i < m; ++i) l(i) = std::complex<Real>(Real(1) + Real(i % 7) / Real(10));
    for (int it = 0; it < 6; ++it) {
      l = lu.solve(l);
      const Real ln = vec_norm<Real>(l);
      if (!(ln > Real(0))) break;
      l /= std::complex<Real>(ln);
    }
    const std::complex<Real> s = l.transpose() * r;
    if (modulus(s) > Real(0)) l /= s;
    left.col(k) = l;
  }

  out.right = CMat<double>(m, m);
  out.left = CMat<double>(m, m);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) {
      out.right(r, c) = to_double(right(r, c));
      out.left(r, c) = to_double(left(r, c));
    }
  }
  const CMat<Real> gram = left.transpose() * right;
  for (Eigen::Index k = 0; k < m; ++k) {
    const std::complex<Real> lambda = values(order[static_cast<std::size_t>(k)]);
    const CVec<Real> res = ac * right.col(k) - lambda * right.col(k);
    out.residuals.push_back(to_double(vec_norm<Real>(res)));
    out.left_norms.push_back(to_double(vec_norm<Real>(left.col(k))));
    double dev = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (out.flagged[static_cast<std::size_t>(j)]) continue;
      const std::complex<Real> target = j == k ? std::complex<Real>(1) : std::complex<Real>(0);
      dev = std::max(dev, to_double(modulus<Real>(gram(k, j) - target)));
    }
    out.biorthogonality.push_back(dev);
  }
  return out;
}

}  // namespace

SpectralDecomposition eig_general(const Eigen::MatrixXd& m, const EigOptions& opts) {
  if (m.rows() != m.cols()) throw ValidationError("eigendecomposition needs a square matrix");
  return decompose<double>(m, opts);
}

SpectralDecomposition eig_reduced(const ReducedTransferMatrix& m, std::span<const std::size_t> indices,
                                  Precision precision, EigOptions opts) {
  if (!opts.zero_multiplicity) opts.zero_multiplicity = power_rank_chain(m, indices).zero_multiplicity();
  if (precision == Precision::standard) return decompose<double>(m.dense_as<double>(indices), opts);
  return decompose<MpReal>(m.dense_as<MpReal>(indices), opts);
}

}  // namespace purity
