#include "purity/modular_rank.hpp"

#include <algorithm>
#include <array>

#include "purity/error.hpp"

namespace purity {

namespace {

constexpr std::array<std::uint64_t, 2> kPrimes{2147483647ULL, 2147483629ULL};

std::uint64_t mul_mod(std::uint64_t x, std::uint64_t y, std::uint64_t p) { return (x * y) % p; }

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (e > 0) {
    if (e & 1U) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    e >>= 1U;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t x, std::uint64_t p) {
  if (x % p == 0) throw ValidationError("value not invertible modulo the working prime");
  return pow_mod(x, p - 2, p);
}

std::uint64_t eval_mod(const PowerSum& s, std::uint64_t a, std::uint64_t p) {
  std::uint64_t total = 0;
  for (const auto& t : s.terms()) {
    total = (total + mul_mod(t.count % p, pow_mod(a, static_cast<std::uint64_t>(t.exponent), p), p)) % p;
  }
  return total;
}

// Echelon basis of a column space; each stored vector has a unit pivot that
// is zero in every later vector.
class Echelon {
 public:
  Echelon(std::size_t dim, std::uint64_t p) : dim_(dim), p_(p) {}

  bool insert(std::vector<std::uint64_t> v) {
    for (std::size_t b = 0; b < basis_.size(); ++b) {
      const std::uint64_t f = v[pivots_[b]];
      if (f == 0) continue;
      const std::uint64_t neg = p_ - f;
      for (std::size_t i = 0; i < dim_; ++i) {
        if (basis_[b][i] != 0) v[i] = (v[i] + mul_mod(neg, basis_[b][i], p_)) % p_;
      }
    }
    auto it = std::find_if(v.begin(), v.end(), [](std::uint64_t x) { return x != 0; });
    if (it == v.end()) return false;
    const std::uint64_t inv = inv_mod(*it, p_);
    for (auto& x : v) x = mul_mod(x, inv, p_);
    pivots_.push_back(static_cast<std::size_t>(it - v.begin()));
    basis_.push_back(std::move(v));
    return true;
  }

  [[nodiscard]] std::size_t rank() const { return basis_.size(); }
  [[nodiscard]] std::vector<std::vector<std::uint64_t>> take() { return std::move(basis_); }

 private:
  std::size_t dim_;
  std::uint64_t p_;
  std::vector<std::vector<std::uint64_t>> basis_;
  std::vector<std::size_t> pivots_;
};

std::vector<std::size_t> chain_for_prime(const ReducedTransferMatrix& m, std::span<const std::size_t> indices,
                                         std::uint64_t p) {
  const std::size_t dim = indices.size();
  std::vector<std::ptrdiff_t> pos(m.size(), -1);
  for (std::size_t k = 0; k < dim; ++k) pos[indices[k]] = static_cast<std::ptrdiff_t>(k);
  const std::uint64_t a = gate_weight_mod(m.meta().d, p);

  struct Sparse {
    std::size_t col;
    std::uint64_t value;
  };
  std::vector<std::vector<Sparse>> rows(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    auto cols = m.row_cols(indices[k]);
    auto coeffs = m.row_coeffs(indices[k]);
    for (std::size_t e = 0; e < cols.size(); ++e) {
      if (pos[cols[e]] < 0) continue;
      const std::uint64_t v = eval_mod(coeffs[e], a, p);
      if (v != 0) rows[k].push_back({static_cast<std::size_t>(pos[cols[e]]), v});
    }
  }

  std::vector<std::size_t> ranks{dim};
  std::vector<std::vector<std::uint64_t>> span;
  span.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<std::uint64_t> e(dim, 0);
    e[k] = 1;
    span.push_back(std::move(e));
  }
  while (true) {
    Echelon next(dim, p);
    for (const auto& v : span) {
      std::vector<std::uint64_t> w(dim, 0);
      for (std::size_t r = 0; r < dim; ++r) {
        std::uint64_t acc = 0;
        for (const auto& s : rows[r]) acc = (acc + mul_mod(s.value, v[s.col], p)) % p;
        w[r] = acc;
      }
      next.insert(std::move(w));
    }
    const std::size_t r = next.rank();
    if (r == ranks.back()) break;
    ranks.push_back(r);
    span = next.take();
  }
  return ranks;
}

}  // namespace

std::uint64_t gate_weight_mod(int d, std::uint64_t prime) {
  check_local_dimension(d);
  const auto dd = static_cast<std::uint64_t>(d) % prime;
  return mul_mod(dd, inv_mod((mul_mod(dd, dd, prime) + 1) % prime, prime), prime);
}

PowerRankChain power_rank_chain(const ReducedTransferMatrix& m, std::span<const std::size_t> indices) {
  PowerRankChain out;
  for (auto p : kPrimes) {
    auto chain = chain_for_prime(m, indices, p);
    if (out.ranks.empty()) {
      out.ranks = std::move(chain);
      continue;
    }
    // rank over a prime field never exceeds the rational rank
    const std::size_t len = std::max(out.ranks.size(), chain.size());
    out.ranks.resize(len, out.ranks.back());
    chain.resize(len, chain.back());
    for (std::size_t i = 0; i < len; ++i) out.ranks[i] = std::max(out.ranks[i], chain[i]);
    while (out.ranks.size() > 1 && out.ranks[out.ranks.size() - 1] == out.ranks[out.ranks.size() - 2]) {
      out.ranks.pop_back();
    }
  }
  return out;
}

std::size_t rank_mod(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t prime) {
  if (rows.empty()) return 0;
  Echelon e(rows.front().size(), prime);
  for (auto& r : rows) {
    for (auto& x : r) x %= prime;
    e.insert(std::move(r));
  }
  return e.rank();
}

}  // namespace purity
