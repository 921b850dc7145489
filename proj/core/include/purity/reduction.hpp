#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "purity/power_sum.hpp"
#include "purity/protocol.hpp"

namespace purity {

/// Ordered set of bipartitions closed under backward propagation through one
/// period of the circuit.
class ReducedBasis {
 public:
  ReducedBasis() = default;
  explicit ReducedBasis(std::vector<Bipartition> masks);

  [[nodiscard]] std::size_t size() const noexcept { return masks_.size(); }
  [[nodiscard]] const Bipartition& operator[](std::size_t i) const { return masks_[i]; }
  [[nodiscard]] const std::vector<Bipartition>& masks() const noexcept { return masks_; }
  [[nodiscard]] bool contains(const Bipartition& bp) const { return index_.contains(bp); }
  [[nodiscard]] std::optional<std::size_t> find(const Bipartition& bp) const;
  /// Throws ValidationError when bp is not a member.
  [[nodiscard]] std::size_t index_of(const Bipartition& bp) const;

  /// Indices of all members except the empty and the full mask.
  [[nodiscard]] std::vector<std::size_t> nontrivial() const;

 private:
  std::vector<Bipartition> masks_;
  std::unordered_map<Bipartition, std::size_t, BipartitionHash> index_;
};

struct MatrixMeta {
  int n = 0;
  std::optional<int> p;
  Boundary bc = Boundary::open;
  int d = 2;
  std::string kind;  // "closure", "S", "BW", "canonical", "odd-k", "perturbed"
};

/// Reduced transfer matrix in compressed-row form. Row r expresses the purity
/// of basis[r] at time t+1 as a combination of basis purities at time t; every
/// coefficient is an exact PowerSum in a.
class ReducedTransferMatrix {
 public:
  struct Entry {
    std::size_t col = 0;
    PowerSum coeff;
  };

  ReducedTransferMatrix(ReducedBasis basis, std::vector<std::vector<Entry>> rows, MatrixMeta meta);

  [[nodiscard]] std::size_t size() const noexcept { return basis_.size(); }
  [[nodiscard]] std::size_t nonzeros() const noexcept { return cols_.size(); }
  [[nodiscard]] const ReducedBasis& basis() const noexcept { return basis_; }
  [[nodiscard]] const MatrixMeta& meta() const noexcept { return meta_; }
  [[nodiscard]] double a() const { return gate_weight(meta_.d); }

  [[nodiscard]] std::span<const std::size_t> row_cols(std::size_t r) const;
  [[nodiscard]] std::span<const PowerSum> row_coeffs(std::size_t r) const;
  [[nodiscard]] std::span<const double> row_values(std::size_t r) const;

  [[nodiscard]] PowerSum coefficient(std::size_t r, std::size_t c) const;
  [[nodiscard]] double value(std::size_t r, std::size_t c) const { return coefficient(r, c).evaluate(a()); }

  /// y = M x.
  void apply(std::span<const double> x, std::span<double> y) const;

  [[nodiscard]] Eigen::MatrixXd dense() const;
  /// Dense matrix restricted to the given row/column indices, entries evaluated
  /// at a = d / (d^2 + 1) computed in T.
  template <typename T>
  [[nodiscard]] Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> dense_as(std::span<const std::size_t> indices) const {
    const auto m = static_cast<Eigen::Index>(indices.size());
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> out =
        Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>::Zero(m, m);
    std::vector<std::ptrdiff_t> pos(size(), -1);
    for (std::size_t k = 0; k < indices.size(); ++k) pos[indices[k]] = static_cast<std::ptrdiff_t>(k);
    const T a_value = T(meta_.d) / (T(meta_.d) * T(meta_.d) + T(1));
    for (std::size_t k = 0; k < indices.size(); ++k) {
      const std::size_t r = indices[k];
      for (std::size_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) {
        if (pos[cols_[e]] >= 0) out(static_cast<Eigen::Index>(k), pos[cols_[e]]) = coeffs_[e].evaluate(a_value);
      }
    }
    return out;
  }

  /// Same matrix expressed in another ordering of the same basis set.
  [[nodiscard]] ReducedTransferMatrix permuted(std::span<const Bipartition> order) const;
  /// Copy with one coefficient replaced (zero removes the entry).
  [[nodiscard]] ReducedTransferMatrix with_coefficient(std::size_t r, std::size_t c, const PowerSum& coeff,
                                                       std::string kind) const;
  /// Copy with the row/column of basis index j removed.
  [[nodiscard]] ReducedTransferMatrix without(std::size_t j) const;

  /// Every row references only basis members and the trivial masks have unit rows.
  [[nodiscard]] bool is_closed() const;

 private:
  ReducedBasis basis_;
  MatrixMeta meta_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> cols_;
  std::vector<PowerSum> coeffs_;
  std::vector<double> values_;
};

/// Contributions to `mask` after gate g from the bipartitions before it:
/// 00 and 11 map to themselves with weight 1, 01 and 10 come from the 00 and
/// 11 variants with weight a.
[[nodiscard]] std::vector<std::pair<Bipartition, PowerSum>> predecessors(const Bipartition& mask, GatePosition g);

struct ClosureOptions {
  std::size_t max_basis = 2'000'000;
  int d = 2;
};

/// Breadth-first closure from `target`: rows are composed backward through the
/// gate list (last gate first) with coefficient accumulation, and new masks are
/// appended in order of discovery (ascending alpha within one row).
[[nodiscard]] ReducedTransferMatrix closure_reduce(const Protocol& proto, const Bipartition& target,
                                                   const ClosureOptions& opts = {});

// Analytic single-cut matrices (open boundaries), basis ordered by ascending k
// where basis member I_k is the mask of the first k sites.

[[nodiscard]] ReducedTransferMatrix build_S(int n, int d = 2);
[[nodiscard]] ReducedTransferMatrix build_BW(int n, int d = 2);
[[nodiscard]] ReducedTransferMatrix build_canonical(int n, int p, int d = 2);
/// Canonical matrix extended by an odd cut k_odd < 2p inside the brickwall.
[[nodiscard]] ReducedTransferMatrix extend_odd_k(int n, int p, int k_odd, int d = 2);
/// Canonical matrix whose bottom-left staircase coefficient a^(n-2p+1) is
/// replaced by a. Unchanged for p = n/2.
[[nodiscard]] ReducedTransferMatrix build_perturbed(int n, int p, int d = 2);

/// Cut positions k of the analytic basis (including 0 and n).
[[nodiscard]] std::vector<int> canonical_cuts(int n, int p);

/// Fixed point of the exact Markov chain restricted to the basis:
/// (d^|A| + d^|B|) / (1 + d^n) per member.
[[nodiscard]] std::vector<double> lubkin_vector(const ReducedBasis& basis, int d = 2);

}  // namespace purity
