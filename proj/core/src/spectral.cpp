#include "purity/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "mp_real.hpp"
#include "purity/error.hpp"
#include "purity/modular_rank.hpp"
#include "purity/rng.hpp"

namespace purity {

using detail::MpReal;

std::vector<std::complex<double>> nonzero_spectrum(const ReducedTransferMatrix& m, Precision precision) {
  const auto idx = m.basis().nontrivial();
  EigOptions opts;
  opts.vectors = false;
  opts.zero_multiplicity = power_rank_chain(m, idx).zero_multiplicity();
  auto dec = eig_reduced(m, idx, precision, opts);
  const std::size_t keep = dec.size() - std::min(*opts.zero_multiplicity, dec.size());
  return {dec.eigenvalues.begin(), dec.eigenvalues.begin() + static_cast<std::ptrdiff_t>(keep)};
}

std::complex<double> leading_eigenvalue(const ReducedTransferMatrix& m, Precision precision) {
  const auto idx = m.basis().nontrivial();
  if (idx.empty()) throw ValidationError("matrix has no nontrivial block");
  EigOptions opts;
  opts.vectors = false;
  opts.zero_multiplicity = 0;
  return eig_reduced(m, idx, precision, opts).eigenvalues.front();
}

double perturbed_lambda2(int n, int p, int d) {
  if (n < 4 || n % 2 != 0) throw ValidationError("perturbed secular equation needs even n >= 4");
  if (p < 1 || p >= n / 2) throw ValidationError("perturbed secular equation needs 1 <= p < n/2");
  const double a = gate_weight(d);
  auto f = [&](double lambda) { return perturbed_secular(n, p, a, lambda); };
  constexpr int kScan = 10000;
  double hi = 1.0;
  double f_hi = f(hi);
  for (int i = kScan - 1; i >= 1; --i) {
    const double lo = static_cast<double>(i) / kScan;
    const double f_lo = f(lo);
    if (f_lo == 0.0) return lo;
    if (std::signbit(f_lo) != std::signbit(f_hi)) {
      double x0 = lo;
      double x1 = hi;
      double f0 = f_lo;
      while (x1 - x0 > 1e-13) {
        const double mid = 0.5 * (x0 + x1);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(f0)) {
          x0 = mid;
          f0 = fm;
        } else {
          x1 = mid;
        }
      }
      return 0.5 * (x0 + x1);
    }
    hi = lo;
    f_hi = f_lo;
  }
  throw ConvergenceError("no sign change of the secular function on (0, 1] for n=" + std::to_string(n) +
                         " p=" + std::to_string(p));
}

PseudospectrumResult pseudospectrum(const Eigen::MatrixXd& m, double eps, int samples, std::uint64_t seed,
                                    int exclude_near_one) {
  if (!(eps > 0.0)) throw ValidationError("pseudospectrum needs eps > 0");
  if (samples < 1) throw ValidationError("pseudospectrum needs at least one sample");
  if (m.rows() != m.cols()) throw ValidationError("pseudospectrum needs a square matrix");
  PseudospectrumResult out{eps, samples, seed, {}, 0.0, 0.0};
  out.clouds.reserve(static_cast<std::size_t>(samples));
  std::vector<double> radii;
  radii.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < e.cols(); ++c) {
      for (Eigen::Index r = 0; r < e.rows(); ++r) e(r, c) = normal(rng);
    }
    EigOptions opts;
    opts.vectors = false;
    auto dec = eig_general(m + eps * e, opts);
    std::vector<std::complex<double>> cloud = dec.eigenvalues;
    std::vector<std::complex<double>> rest = cloud;
    for (int k = 0; k < exclude_near_one && !rest.empty(); ++k) {
      auto it = std::min_element(rest.begin(), rest.end(), [](const auto& x, const auto& y) {
        return std::abs(x - 1.0) < std::abs(y - 1.0);
      });
      rest.erase(it);
    }
    double radius = 0.0;
    for (const auto& z : rest) radius = std::max(radius, std::abs(z));
    out.largest_modulus = std::max(out.largest_modulus, radius);
    radii.push_back(radius);
    out.clouds.push_back(std::move(cloud));
  }
  const auto mid = radii.begin() + static_cast<std::ptrdiff_t>(radii.size() / 2);
  std::nth_element(radii.begin(), mid, radii.end());
  out.typical_modulus = *mid;
  if (radii.size() % 2 == 0) out.typical_modulus = 0.5 * (*mid + *std::max_element(radii.begin(), mid));
  return out;
}

double left_norm_profile(const SpectralDecomposition& dec) {
  if (!dec.has_vectors) throw ValidationError("left-norm profile needs eigenvectors");
  double best = 0.0;
  for (std::size_t k = 0; k < dec.size(); ++k) {
    if (!dec.flagged[k]) best = std::max(best, dec.left_norms[k]);
  }
  return best;
}

double left_norm_profile(const ReducedTransferMatrix& m, Precision precision) {
  return left_norm_profile(eig_reduced(m, m.basis().nontrivial(), precision));
}

CharpolyCheck charpoly_residual(int n, int p, std::span<const double> probes, int d) {
  const auto rtm = build_canonical(n, p, d);
  const auto idx = rtm.basis().nontrivial();
  const auto r = rtm.dense_as<MpReal>(idx);
  const MpReal a = MpReal(d) / (MpReal(d) * MpReal(d) + MpReal(1));
  CharpolyCheck out;
  for (double probe : probes) {
    if (!(probe > 0.0)) throw ValidationError("charpoly probes must be positive");
    const MpReal lambda(probe);
    const MpReal closed = charpoly_closed_form<MpReal>(n, p, a, lambda);
    using Mat = Eigen::Matrix<MpReal, Eigen::Dynamic, Eigen::Dynamic>;
    const MpReal det = Eigen::PartialPivLU<Mat>(r - lambda * Mat::Identity(r.rows(), r.cols())).determinant();
    if (abs(closed) < MpReal(1e-40)) {
      ++out.skipped;
      continue;
    }
    const double dev = abs((det - closed) / closed).convert_to<double>();
    out.max_relative_deviation = std::max(out.max_relative_deviation, dev);
    ++out.evaluated;
  }
  return out;
}

int kernel_jordan_probe(int n, int p, int d) {
  const auto rtm = build_canonical(n, p, d);
  const auto chain = power_rank_chain(rtm, rtm.basis().nontrivial());
  return static_cast<int>(chain.index());
}

}  // namespace purity
