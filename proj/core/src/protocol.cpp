#include "purity/protocol.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <set>
#include <sstream>
#include <utility>

#include "purity/error.hpp"

namespace purity {

namespace {

std::size_t word_count(int n) { return static_cast<std::size_t>((n + 63) / 64); }

void check_site(int n, int site) {
  if (site < 1 || site > n) {
    throw ValidationError("site " + std::to_string(site) + " outside 1.." + std::to_string(n));
  }
}

int parse_int(std::string_view text) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ValidationError("expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_string(Boundary bc) { return bc == Boundary::open ? "OBC" : "PBC"; }

Bipartition::Bipartition(int n) : n_(n), words_(word_count(n), 0) {
  if (n < 1) throw ValidationError("bipartition needs n >= 1");
}

Bipartition Bipartition::first_k(int n, int k) {
  if (k < 0 || k > n) throw ValidationError("cut position k=" + std::to_string(k) + " outside 0..n");
  Bipartition bp(n);
  for (int q = 1; q <= k; ++q) bp.set(q, true);
  return bp;
}

Bipartition Bipartition::from_sites(int n, std::span<const int> sites) {
  Bipartition bp(n);
  for (int s : sites) bp.set(s, true);
  return bp;
}

Bipartition Bipartition::from_bitstring(std::string_view bits) {
  Bipartition bp(static_cast<int>(bits.size()));
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] == '1') {
      bp.set(static_cast<int>(q) + 1, true);
    } else if (bits[q] != '0') {
      throw ValidationError("bitstring may contain only '0' and '1': " + std::string(bits));
    }
  }
  return bp;
}

Bipartition Bipartition::decode(int n, std::uint64_t alpha) {
  if (n > 64) throw ValidationError("integer labels are limited to n <= 64");
  Bipartition bp(n);
  if (n < 64 && (alpha >> n) != 0) {
    throw ValidationError("alpha=" + std::to_string(alpha) + " out of range for n=" + std::to_string(n));
  }
  bp.words_[0] = alpha;
  return bp;
}

Bipartition Bipartition::full(int n) { return first_k(n, n); }

bool Bipartition::contains(int site) const {
  check_site(n_, site);
  const auto bit = static_cast<std::size_t>(site - 1);
  return (words_[bit / 64] >> (bit % 64)) & 1U;
}

void Bipartition::set(int site, bool in_a) {
  check_site(n_, site);
  const auto bit = static_cast<std::size_t>(site - 1);
  const std::uint64_t m = std::uint64_t{1} << (bit % 64);
  if (in_a) {
    words_[bit / 64] |= m;
  } else {
    words_[bit / 64] &= ~m;
  }
}

int Bipartition::size_a() const noexcept {
  int total = 0;
  for (auto w : words_) total += std::popcount(w);
  return total;
}

bool Bipartition::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool Bipartition::is_full() const noexcept { return n_ > 0 && size_a() == n_; }

std::vector<int> Bipartition::boundaries(Boundary bc) const {
  std::vector<int> out;
  for (int q = 1; q < n_; ++q) {
    if (contains(q) != contains(q + 1)) out.push_back(q);
  }
  if (bc == Boundary::periodic && n_ > 1 && contains(n_) != contains(1)) out.push_back(n_);
  return out;
}

int Bipartition::boundary_count(Boundary bc) const { return static_cast<int>(boundaries(bc).size()); }

std::uint64_t Bipartition::encode() const {
  if (n_ > 64) throw ValidationError("integer labels are limited to n <= 64");
  return words_.empty() ? 0 : words_[0];
}

std::string Bipartition::bitstring() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int q = 1; q <= n_; ++q) {
    if (contains(q)) s[static_cast<std::size_t>(q - 1)] = '1';
  }
  return s;
}

std::strong_ordering operator<=>(const Bipartition& lhs, const Bipartition& rhs) {
  if (auto c = lhs.n_ <=> rhs.n_; c != 0) return c;
  for (std::size_t w = lhs.words_.size(); w-- > 0;) {
    if (auto c = lhs.words_[w] <=> rhs.words_[w]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t BipartitionHash::operator()(const Bipartition& bp) const noexcept {
  std::size_t h = std::hash<int>{}(bp.n());
  for (auto w : bp.words()) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t encode_alpha(const Bipartition& bp) { return bp.encode(); }

Bipartition decode_alpha(int n, std::uint64_t alpha) { return Bipartition::decode(n, alpha); }

Bipartition parse_bipartition(int n, std::string_view text) {
  text = trim(text);
  if (text.starts_with("cut:")) {
    return Bipartition::first_k(n, parse_int(trim(text.substr(4))));
  }
  if (text.starts_with("A=") || text.starts_with("a=")) {
    Bipartition bp(n);
    std::string_view rest = text.substr(2);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      std::string_view item = trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (item.empty()) continue;
      const auto dash = item.find('-');
      const int lo = parse_int(trim(item.substr(0, dash)));
      const int hi = dash == std::string_view::npos ? lo : parse_int(trim(item.substr(dash + 1)));
      if (hi < lo) throw ValidationError("empty range in '" + std::string(item) + "'");
      for (int q = lo; q <= hi; ++q) bp.set(q, true);
    }
    return bp;
  }
  auto bp = Bipartition::from_bitstring(text);
  if (bp.n() != n) {
    throw ValidationError("bitstring has " + std::to_string(bp.n()) + " sites, expected " + std::to_string(n));
  }
  return bp;
}

Protocol::Protocol(int n, Boundary bc, std::vector<GatePosition> gates, std::optional<int> canonical_p)
    : n_(n), bc_(bc), gates_(std::move(gates)), canonical_p_(canonical_p) {
  if (n < 2) throw ValidationError("a protocol needs n >= 2");
  const std::size_t expected = bc == Boundary::open ? static_cast<std::size_t>(n - 1) : static_cast<std::size_t>(n);
  if (gates_.size() != expected) {
    throw ValidationError("protocol on n=" + std::to_string(n) + " (" + std::string(to_string(bc)) + ") needs " +
                          std::to_string(expected) + " gates, got " + std::to_string(gates_.size()));
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& g : gates_) {
    check_site(n, g.i);
    check_site(n, g.j);
    const bool adjacent = g.j == g.i + 1 || (bc == Boundary::periodic && n > 2 && g.i == n && g.j == 1);
    if (!adjacent) {
      throw ValidationError("gate (" + std::to_string(g.i) + "," + std::to_string(g.j) + ") is not nearest-neighbour");
    }
    if (!seen.emplace(std::min(g.i, g.j), std::max(g.i, g.j)).second) {
      throw ValidationError("gate (" + std::to_string(g.i) + "," + std::to_string(g.j) + ") appears twice");
    }
  }
}

std::string Protocol::describe() const {
  std::ostringstream os;
  os << "n=" << n_ << " bc=" << to_string(bc_);
  if (canonical_p_) {
    os << " p=" << *canonical_p_;
  } else {
    os << " custom";
  }
  return os.str();
}

Protocol make_canonical(int n, int p, Boundary bc) {
  if (n < 2 || n % 2 != 0) throw ValidationError("canonical protocols need even n >= 2, got " + std::to_string(n));
  if (p < 1 || p > n / 2) {
    throw ValidationError("canonical p must lie in 1.." + std::to_string(n / 2) + ", got " + std::to_string(p));
  }
  if (bc == Boundary::periodic && n == 2) throw ValidationError("periodic boundaries need n > 2");
  std::vector<GatePosition> gates;
  gates.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i < 2 * p; i += 2) gates.push_back({i, i + 1});
  for (int i = 2; i < 2 * p - 1; i += 2) gates.push_back({i, i + 1});
  for (int i = 2 * p; i < n; ++i) gates.push_back({i, i + 1});
  if (bc == Boundary::periodic) gates.push_back({n, 1});
  return Protocol(n, bc, std::move(gates), p);
}

CutClassification classify_cuts(const Protocol& proto, const Bipartition& bp) {
  if (!proto.canonical_p()) throw ValidationError("cut classification requires a canonical protocol");
  if (bp.n() != proto.n()) throw ValidationError("bipartition and protocol disagree on n");
  const int n = proto.n();
  const int p = *proto.canonical_p();
  CutClassification c;
  for (int q : bp.boundaries(proto.bc())) {
    if (q == n) {
      // wrap boundary
      if (p == n / 2) {
        ++c.c_bw;
      } else {
        ++c.c_s;
      }
    } else if (q + 1 <= 2 * p) {
      ++c.c_bw;
    } else {
      ++c.c_s;
      if (q == 2 * p) ++c.at_junction;
    }
  }
  return c;
}

}  // namespace purity
