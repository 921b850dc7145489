#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace purity {

enum class Boundary { open, periodic };

[[nodiscard]] std::string_view to_string(Boundary bc);

/// A nearest-neighbour gate acting on sites i and j (1-based). Under periodic
/// boundaries the wrap gate is (n, 1).
struct GatePosition {
  int i = 1;
  int j = 2;

  friend bool operator==(const GatePosition&, const GatePosition&) = default;
};

/// Subsystem A of a bipartition of n sites, stored as a bitset of arbitrary
/// length. Site q (1-based) lives in bit q-1, so the integer label of the
/// bipartition is alpha = sum_{q in A} 2^(q-1).
class Bipartition {
 public:
  Bipartition() = default;
  explicit Bipartition(int n);

  static Bipartition first_k(int n, int k);
  static Bipartition from_sites(int n, std::span<const int> sites);
  /// Site 1 is the leftmost character.
  static Bipartition from_bitstring(std::string_view bits);
  static Bipartition decode(int n, std::uint64_t alpha);
  static Bipartition full(int n);

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] bool contains(int site) const;
  void set(int site, bool in_a);

  [[nodiscard]] int size_a() const noexcept;
  [[nodiscard]] bool empty() const noexcept;
  [[nodiscard]] bool is_full() const noexcept;
  [[nodiscard]] bool trivial() const noexcept { return empty() || is_full(); }

  /// Number of adjacent pairs (q, q+1) split between A and B, plus the wrap
  /// pair (n, 1) under periodic boundaries.
  [[nodiscard]] int boundary_count(Boundary bc) const;
  /// Positions q of the boundaries between q and q+1; q = n denotes the wrap.
  [[nodiscard]] std::vector<int> boundaries(Boundary bc) const;

  /// Requires n <= 64.
  [[nodiscard]] std::uint64_t encode() const;
  [[nodiscard]] std::string bitstring() const;
  [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// Orders by n, then by the integer label alpha.
  friend std::strong_ordering operator<=>(const Bipartition& lhs, const Bipartition& rhs);
  friend bool operator==(const Bipartition& lhs, const Bipartition& rhs) = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

[[nodiscard]] std::uint64_t encode_alpha(const Bipartition& bp);
[[nodiscard]] Bipartition decode_alpha(int n, std::uint64_t alpha);

/// Accepts "11001010", "A=1-14,28-40" (ranges or single sites) and "cut:k".
[[nodiscard]] Bipartition parse_bipartition(int n, std::string_view text);

struct BipartitionHash {
  std::size_t operator()(const Bipartition& bp) const noexcept;
};

/// One period of a circuit: every nearest-neighbour pair exactly once, in the
/// order the gates are applied.
class Protocol {
 public:
  Protocol(int n, Boundary bc, std::vector<GatePosition> gates, std::optional<int> canonical_p = std::nullopt);

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] Boundary bc() const noexcept { return bc_; }
  [[nodiscard]] const std::vector<GatePosition>& gates() const noexcept { return gates_; }
  /// Set when the protocol was produced by make_canonical.
  [[nodiscard]] std::optional<int> canonical_p() const noexcept { return canonical_p_; }
  [[nodiscard]] std::string describe() const;

 private:
  int n_;
  Boundary bc_;
  std::vector<GatePosition> gates_;
  std::optional<int> canonical_p_;
};

/// Brickwall on sites 1..2p (odd pairs, then even pairs) followed by an
/// ascending staircase (2p,2p+1), ..., (n-1,n). Periodic boundaries append the
/// wrap gate (n,1). p = 1 is the pure staircase, p = n/2 the pure brickwall.
[[nodiscard]] Protocol make_canonical(int n, int p, Boundary bc);

/// Boundary counts split by the protocol section they fall in.
struct CutClassification {
  int c_bw = 0;
  int c_s = 0;
  /// Boundaries sitting exactly at the brickwall/staircase junction (q = 2p).
  /// They are counted in c_s; alternative() moves them to c_bw.
  int at_junction = 0;

  [[nodiscard]] int total() const noexcept { return c_bw + c_s; }
  [[nodiscard]] CutClassification alternative() const noexcept {
    return {c_bw + at_junction, c_s - at_junction, at_junction};
  }
  friend bool operator==(const CutClassification&, const CutClassification&) = default;
};

[[nodiscard]] CutClassification classify_cuts(const Protocol& proto, const Bipartition& bp);

}  // namespace purity
