#include <gtest/gtest.h>

#include <bit>
#include <random>
#include <set>

#include "purity/error.hpp"
#include "purity/protocol.hpp"

using namespace purity;

namespace {

// Adjacent pairs the chain must cover once per period.
std::set<std::pair<int, int>> expected_pairs(int n, Boundary bc) {
  std::set<std::pair<int, int>> out;
  for (int i = 1; i < n; ++i) out.emplace(i, i + 1);
  if (bc == Boundary::periodic) out.emplace(1, n);
  return out;
}

}  // namespace

TEST(Protocol, EveryAdjacentPairOncePerPeriod) {
  for (int n = 4; n <= 64; n += 2) {
    for (auto bc : {Boundary::open, Boundary::periodic}) {
      for (int p = 1; p <= n / 2; ++p) {
        const auto proto = make_canonical(n, p, bc);
        std::multiset<std::pair<int, int>> seen;
        for (const auto& g : proto.gates()) seen.emplace(std::min(g.i, g.j), std::max(g.i, g.j));
        const auto want = expected_pairs(n, bc);
        ASSERT_EQ(seen.size(), want.size()) << "n=" << n << " p=" << p;
        for (const auto& pr : want) ASSERT_EQ(seen.count(pr), 1u) << "n=" << n << " p=" << p;
      }
    }
  }
}

TEST(Protocol, BrickwallOddPairsThenEvenPairs) {
  const auto proto = make_canonical(8, 4, Boundary::open);
  const std::vector<GatePosition> want{{1, 2}, {3, 4}, {5, 6}, {7, 8}, {2, 3}, {4, 5}, {6, 7}};
  EXPECT_EQ(proto.gates(), want);
}

TEST(Protocol, CanonicalLayout) {
  const auto proto = make_canonical(10, 2, Boundary::periodic);
  const std::vector<GatePosition> want{{1, 2}, {3, 4}, {2, 3}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 10}, {10, 1}};
  EXPECT_EQ(proto.gates(), want);
  EXPECT_EQ(proto.canonical_p(), 2);
}

TEST(Protocol, StaircaseIsAscending) {
  const auto proto = make_canonical(6, 1, Boundary::open);
  const std::vector<GatePosition> want{{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}};
  EXPECT_EQ(proto.gates(), want);
}

TEST(Protocol, RejectsBadParameters) {
  EXPECT_THROW((void)make_canonical(7, 1, Boundary::open), ValidationError);
  EXPECT_THROW((void)make_canonical(8, 0, Boundary::open), ValidationError);
  EXPECT_THROW((void)make_canonical(8, 5, Boundary::open), ValidationError);
  EXPECT_THROW(Protocol(4, Boundary::open, {{1, 2}, {2, 3}, {1, 2}}), ValidationError);
  EXPECT_THROW(Protocol(4, Boundary::open, {{1, 2}, {2, 3}, {1, 3}}), ValidationError);
}

TEST(Bipartition, LabelFollowsTheSumOfPowers) {
  const auto bp = Bipartition::from_bitstring("11001010");
  std::uint64_t alpha = 0;
  for (int q = 1; q <= 8; ++q) {
    if ("11001010"[q - 1] == '1') alpha += std::uint64_t{1} << (q - 1);
  }
  EXPECT_EQ(alpha, 83u);
  EXPECT_EQ(encode_alpha(bp), alpha);
  EXPECT_EQ(bp.bitstring(), "11001010");
  EXPECT_EQ(bp.size_a(), 4);
}

TEST(Bipartition, RoundTripRandomMasks) {
  std::mt19937_64 rng(2024);
  for (int n : {8, 16, 40, 64}) {
    const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (int s = 0; s < 10000; ++s) {
      const std::uint64_t alpha = rng() & mask;
      const auto bp = decode_alpha(n, alpha);
      ASSERT_EQ(encode_alpha(bp), alpha);
      ASSERT_EQ(Bipartition::from_bitstring(bp.bitstring()), bp);
      ASSERT_EQ(bp.size_a(), std::popcount(alpha));
    }
  }
}

TEST(Bipartition, WideMasks) {
  auto bp = Bipartition::first_k(100, 70);
  EXPECT_EQ(bp.size_a(), 70);
  EXPECT_TRUE(bp.contains(70));
  EXPECT_FALSE(bp.contains(71));
  EXPECT_EQ(bp.boundaries(Boundary::open), std::vector<int>{70});
  EXPECT_EQ(bp.boundaries(Boundary::periodic), (std::vector<int>{70, 100}));
  EXPECT_THROW((void)bp.encode(), ValidationError);
  EXPECT_LT(Bipartition::first_k(100, 3), Bipartition::first_k(100, 4));
}

TEST(Bipartition, ParseFormats) {
  const auto ranges = parse_bipartition(40, "A=1-14,28-40");
  EXPECT_EQ(ranges.size_a(), 27);
  EXPECT_EQ(ranges.boundaries(Boundary::open), (std::vector<int>{14, 27}));
  EXPECT_EQ(ranges.boundary_count(Boundary::periodic), 2);
  EXPECT_EQ(parse_bipartition(8, "cut:3"), Bipartition::first_k(8, 3));
  EXPECT_EQ(parse_bipartition(6, "A=2,4,6"), Bipartition::from_bitstring("010101"));
  EXPECT_THROW((void)parse_bipartition(8, "1100"), ValidationError);
  EXPECT_THROW((void)parse_bipartition(8, "A=3-1"), ValidationError);
  EXPECT_THROW((void)parse_bipartition(8, "A=0-2"), ValidationError);
  EXPECT_THROW((void)parse_bipartition(4, "11x0"), ValidationError);
}

TEST(Bipartition, BoundaryCountMatchesDirectScan) {
  std::mt19937_64 rng(5);
  for (int s = 0; s < 2000; ++s) {
    const int n = 4 + static_cast<int>(rng() % 30);
    const auto bp = decode_alpha(n, rng() & ((std::uint64_t{1} << n) - 1));
    int open = 0;
    for (int q = 1; q < n; ++q) open += bp.contains(q) != bp.contains(q + 1);
    const int wrap = bp.contains(n) != bp.contains(1);
    ASSERT_EQ(bp.boundary_count(Boundary::open), open);
    ASSERT_EQ(bp.boundary_count(Boundary::periodic), open + wrap);
  }
}

TEST(CutClassification, TotalsEqualBoundaryCount) {
  std::mt19937_64 rng(17);
  for (int s = 0; s < 3000; ++s) {
    const int n = 2 * (2 + static_cast<int>(rng() % 15));
    const int p = 1 + static_cast<int>(rng() % static_cast<unsigned>(n / 2));
    const auto bc = (rng() & 1) ? Boundary::open : Boundary::periodic;
    const auto bp = decode_alpha(n, rng() & ((std::uint64_t{1} << n) - 1));
    const auto c = classify_cuts(make_canonical(n, p, bc), bp);
    ASSERT_EQ(c.total(), bp.boundary_count(bc));
    ASSERT_EQ(c.alternative().total(), c.total());
  }
}

TEST(CutClassification, SectionsAndJunction) {
  const int n = 40;
  const auto proto = make_canonical(n, 10, Boundary::open);
  EXPECT_EQ(classify_cuts(proto, Bipartition::first_k(n, 12)), (CutClassification{1, 0, 0}));
  EXPECT_EQ(classify_cuts(proto, Bipartition::first_k(n, 30)), (CutClassification{0, 1, 0}));
  const auto at = classify_cuts(proto, Bipartition::first_k(n, 20));
  EXPECT_EQ(at, (CutClassification{0, 1, 1}));
  EXPECT_EQ(at.alternative(), (CutClassification{1, 0, 1}));
  const auto two = classify_cuts(proto, parse_bipartition(n, "A=5-30"));
  EXPECT_EQ(two, (CutClassification{1, 1, 0}));
}

TEST(CutClassification, WrapBoundaryFollowsTheStaircase) {
  const auto pbc = make_canonical(40, 4, Boundary::periodic);
  const auto c = classify_cuts(pbc, parse_bipartition(40, "A=1-14,28-40"));
  EXPECT_EQ(c.c_s, 2);
  EXPECT_EQ(c.c_bw, 0);
  const auto bw = make_canonical(16, 8, Boundary::periodic);
  EXPECT_EQ(classify_cuts(bw, parse_bipartition(16, "A=1-8")), (CutClassification{2, 0, 0}));
}
