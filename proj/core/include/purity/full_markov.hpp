#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "purity/protocol.hpp"

namespace purity {

/// Largest n the dense 2^n propagation accepts.
inline constexpr int kFullMarkovMaxSites = 24;

/// Average purities of all 2^n bipartitions, indexed by the integer label alpha.
class FullPurityVector {
 public:
  explicit FullPurityVector(int n, double fill = 1.0);

  /// Product initial state: every purity equals one.
  static FullPurityVector all_ones(int n) { return FullPurityVector(n, 1.0); }
  /// Haar-average asymptote (d^|A| + d^|B|) / (1 + d^n) for every alpha.
  static FullPurityVector lubkin(int n, int d = 2);

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::uint64_t alpha) const { return values_[alpha]; }
  [[nodiscard]] double& operator[](std::uint64_t alpha) { return values_[alpha]; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] double at(const Bipartition& bp) const;

 private:
  int n_;
  std::vector<double> values_;
};

/// One two-site Markov gate: components whose (i,j) bits are 01 or 10 become
/// a * (value with bits 00 + value with bits 11); 00 and 11 are unchanged.
void apply_gate_full(FullPurityVector& v, GatePosition g, double a);

/// One period: gates applied in protocol order.
void step_full(FullPurityVector& v, const Protocol& proto, double a);

/// I_alpha(t) for t = 0..steps starting from the product state.
[[nodiscard]] std::vector<double> trajectory_full(const Protocol& proto, const Bipartition& bp, int steps, double a);

/// Several components at once; rows indexed by t, columns by the requested bipartitions.
[[nodiscard]] std::vector<std::vector<double>> trajectory_full(const Protocol& proto,
                                                               std::span<const Bipartition> bps, int steps,
                                                               double a);

}  // namespace purity
