#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "purity/reduction.hpp"

namespace purity {

/// Ranks of successive powers of a reduced matrix block computed exactly over
/// prime fields. ranks[m] = rank(R^m), starting at m = 0 and stopping once the
/// sequence becomes constant.
struct PowerRankChain {
  std::vector<std::size_t> ranks;

  /// Algebraic multiplicity of the eigenvalue 0.
  [[nodiscard]] std::size_t zero_multiplicity() const { return ranks.front() - ranks.back(); }
  /// Smallest m with rank(R^m) = rank(R^(m+1)); the size of the largest Jordan block at 0.
  [[nodiscard]] std::size_t index() const { return ranks.size() - 1; }
};

/// a = d / (d^2 + 1) as an element of GF(prime).
[[nodiscard]] std::uint64_t gate_weight_mod(int d, std::uint64_t prime);

/// Rank chain of the block of `m` on the given basis indices. Entries are the
/// exact PowerSum coefficients reduced modulo two 31-bit primes; the larger
/// rank at each power is kept.
[[nodiscard]] PowerRankChain power_rank_chain(const ReducedTransferMatrix& m, std::span<const std::size_t> indices);

/// Rank of a dense integer matrix modulo `prime` (row-major, entries already reduced).
[[nodiscard]] std::size_t rank_mod(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t prime);

}  // namespace purity
