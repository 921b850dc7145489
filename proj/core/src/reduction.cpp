#include "purity/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "purity/error.hpp"

namespace purity {

// ---------------------------------------------------------------- basis

ReducedBasis::ReducedBasis(std::vector<Bipartition> masks) : masks_(std::move(masks)) {
  index_.reserve(masks_.size());
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    if (!index_.emplace(masks_[i], i).second) {
      throw ValidationError("duplicate basis member " + masks_[i].bitstring());
    }
    if (masks_[i].n() != masks_.front().n()) throw ValidationError("basis members disagree on n");
  }
}

std::optional<std::size_t> ReducedBasis::find(const Bipartition& bp) const {
  auto it = index_.find(bp);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ReducedBasis::index_of(const Bipartition& bp) const {
  auto idx = find(bp);
  if (!idx) throw ValidationError("bipartition " + bp.bitstring() + " is not in the basis");
  return *idx;
}

std::vector<std::size_t> ReducedBasis::nontrivial() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    if (!masks_[i].trivial()) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------- matrix

ReducedTransferMatrix::ReducedTransferMatrix(ReducedBasis basis, std::vector<std::vector<Entry>> rows,
                                             MatrixMeta meta)
    : basis_(std::move(basis)), meta_(std::move(meta)) {
  if (rows.size() != basis_.size()) throw ValidationError("row count does not match basis size");
  const double a_value = gate_weight(meta_.d);
  row_ptr_.reserve(rows.size() + 1);
  row_ptr_.push_back(0);
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), [](const Entry& x, const Entry& y) { return x.col < y.col; });
    for (std::size_t e = 0; e < row.size(); ++e) {
      if (row[e].col >= basis_.size()) throw ValidationError("column index outside the basis");
      if (e > 0 && row[e].col == row[e - 1].col) throw ValidationError("duplicate column in a row");
      if (row[e].coeff.is_zero()) continue;
      cols_.push_back(row[e].col);
      values_.push_back(row[e].coeff.evaluate(a_value));
      coeffs_.push_back(std::move(row[e].coeff));
    }
    row_ptr_.push_back(cols_.size());
  }
}

std::span<const std::size_t> ReducedTransferMatrix::row_cols(std::size_t r) const {
  return {cols_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
}

std::span<const PowerSum> ReducedTransferMatrix::row_coeffs(std::size_t r) const {
  return {coeffs_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
}

std::span<const double> ReducedTransferMatrix::row_values(std::size_t r) const {
  return {values_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
}

PowerSum ReducedTransferMatrix::coefficient(std::size_t r, std::size_t c) const {
  auto cols = row_cols(r);
  auto it = std::lower_bound(cols.begin(), cols.end(), c);
  if (it == cols.end() || *it != c) return {};
  return coeffs_[row_ptr_[r] + static_cast<std::size_t>(it - cols.begin())];
}

void ReducedTransferMatrix::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != size() || y.size() != size()) throw ValidationError("vector size does not match the matrix");
  for (std::size_t r = 0; r < size(); ++r) {
    double acc = 0.0;
    for (std::size_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) acc += values_[e] * x[cols_[e]];
    y[r] = acc;
  }
}

Eigen::MatrixXd ReducedTransferMatrix::dense() const {
  const auto m = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t r = 0; r < size(); ++r) {
    for (std::size_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols_[e])) = values_[e];
    }
  }
  return out;
}

ReducedTransferMatrix ReducedTransferMatrix::permuted(std::span<const Bipartition> order) const {
  if (order.size() != size()) throw ValidationError("permutation must list every basis member once");
  ReducedBasis nb(std::vector<Bipartition>(order.begin(), order.end()));
  std::vector<std::size_t> new_of_old(size());
  for (std::size_t i = 0; i < size(); ++i) new_of_old[i] = nb.index_of(basis_[i]);
  std::vector<std::vector<Entry>> rows(size());
  for (std::size_t r = 0; r < size(); ++r) {
    auto& row = rows[new_of_old[r]];
    for (std::size_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) row.push_back({new_of_old[cols_[e]], coeffs_[e]});
  }
  return {std::move(nb), std::move(rows), meta_};
}

ReducedTransferMatrix ReducedTransferMatrix::with_coefficient(std::size_t r, std::size_t c, const PowerSum& coeff,
                                                              std::string kind) const {
  if (r >= size() || c >= size()) throw ValidationError("coefficient index outside the matrix");
  std::vector<std::vector<Entry>> rows(size());
  for (std::size_t i = 0; i < size(); ++i) {
    bool replaced = false;
    for (std::size_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) {
      if (i == r && cols_[e] == c) {
        rows[i].push_back({c, coeff});
        replaced = true;
      } else {
        rows[i].push_back({cols_[e], coeffs_[e]});
      }
    }
    if (i == r && !replaced) rows[i].push_back({c, coeff});
  }
  MatrixMeta m = meta_;
  m.kind = std::move(kind);
  return {basis_, std::move(rows), std::move(m)};
}

ReducedTransferMatrix ReducedTransferMatrix::without(std::size_t j) const {
  if (j >= size()) throw ValidationError("index outside the matrix");
  std::vector<Bipartition> masks;
  std::vector<std::vector<Entry>> rows;
  auto shift = [j](std::size_t c) { return c > j ? c - 1 : c; };
  for (std::size_t i = 0; i < size(); ++i) {
    if (i == j) continue;
    masks.push_back(basis_[i]);
    auto& row = rows.emplace_back();
    for (std::size_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) {
      if (cols_[e] != j) row.push_back({shift(cols_[e]), coeffs_[e]});
    }
  }
  return {ReducedBasis(std::move(masks)), std::move(rows), meta_};
}

bool ReducedTransferMatrix::is_closed() const {
  for (std::size_t r = 0; r < size(); ++r) {
    if (!basis_[r].trivial()) continue;
    auto cols = row_cols(r);
    if (cols.size() != 1 || cols[0] != r || !(coeffs_[row_ptr_[r]] == PowerSum::one())) return false;
  }
  return true;
}

// ---------------------------------------------------------------- closure

std::vector<std::pair<Bipartition, PowerSum>> predecessors(const Bipartition& mask, GatePosition g) {
  const bool bi = mask.contains(g.i);
  const bool bj = mask.contains(g.j);
  if (bi == bj) return {{mask, PowerSum::one()}};
  Bipartition zeros = mask;
  zeros.set(g.i, false);
  zeros.set(g.j, false);
  Bipartition ones = mask;
  ones.set(g.i, true);
  ones.set(g.j, true);
  return {{std::move(zeros), PowerSum::power(1)}, {std::move(ones), PowerSum::power(1)}};
}

namespace {

struct NarrowKeys {
  using Key = std::uint64_t;
  using Hash = std::hash<std::uint64_t>;
  int n;
  [[nodiscard]] static bool bit(Key k, int site) { return ((k >> (site - 1)) & 1U) != 0; }
  [[nodiscard]] static Key with_pair(Key k, GatePosition g, bool v) {
    const Key m = (Key{1} << (g.i - 1)) | (Key{1} << (g.j - 1));
    return v ? (k | m) : (k & ~m);
  }
  [[nodiscard]] Key from(const Bipartition& bp) const { return bp.encode(); }
  [[nodiscard]] Bipartition to(Key k) const { return Bipartition::decode(n, k); }
};

struct WideKeys {
  using Key = Bipartition;
  using Hash = BipartitionHash;
  int n;
  [[nodiscard]] static bool bit(const Key& k, int site) { return k.contains(site); }
  [[nodiscard]] static Key with_pair(Key k, GatePosition g, bool v) {
    k.set(g.i, v);
    k.set(g.j, v);
    return k;
  }
  [[nodiscard]] Key from(const Bipartition& bp) const { return bp; }
  [[nodiscard]] Bipartition to(const Key& k) const { return k; }
};

template <typename Keys>
ReducedTransferMatrix closure_impl(const Protocol& proto, const Bipartition& target, const ClosureOptions& opts,
                                   Keys keys) {
  using Key = typename Keys::Key;
  using Map = std::unordered_map<Key, PowerSum, typename Keys::Hash>;
  const auto& gates = proto.gates();

  std::vector<Key> basis;
  std::unordered_map<Key, std::size_t, typename Keys::Hash> index;
  std::vector<std::vector<ReducedTransferMatrix::Entry>> rows;

  auto add = [&](const Key& k) {
    auto [it, inserted] = index.emplace(k, basis.size());
    if (inserted) {
      if (basis.size() >= opts.max_basis) {
        throw CapacityError("closure exceeds the basis capacity of " + std::to_string(opts.max_basis) + " members");
      }
      basis.push_back(k);
    }
    return it->second;
  };

  add(keys.from(target));
  Map layer;
  Map next;
  for (std::size_t cursor = 0; cursor < basis.size(); ++cursor) {
    layer.clear();
    layer.emplace(basis[cursor], PowerSum::one());
    for (auto g = gates.rbegin(); g != gates.rend(); ++g) {
      next.clear();
      next.reserve(layer.size() * 2);
      for (auto& [k, c] : layer) {
        if (Keys::bit(k, g->i) == Keys::bit(k, g->j)) {
          next[k] += c;
        } else {
          const PowerSum ca = c.shifted(1);
          next[Keys::with_pair(k, *g, false)] += ca;
          next[Keys::with_pair(k, *g, true)] += ca;
        }
      }
      std::swap(layer, next);
    }
    std::vector<std::pair<Key, PowerSum>> sorted(layer.begin(), layer.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<ReducedTransferMatrix::Entry> row;
    row.reserve(sorted.size());
    for (auto& [k, c] : sorted) row.push_back({add(k), std::move(c)});
    rows.push_back(std::move(row));
  }

  Bipartition zero(proto.n());
  Bipartition full = Bipartition::full(proto.n());
  for (const auto& t : {zero, full}) {
    const std::size_t before = basis.size();
    const std::size_t idx = add(keys.from(t));
    if (basis.size() > before) rows.push_back({{idx, PowerSum::one()}});
  }

  std::vector<Bipartition> masks;
  masks.reserve(basis.size());
  for (const auto& k : basis) masks.push_back(keys.to(k));
  MatrixMeta meta{proto.n(), proto.canonical_p(), proto.bc(), opts.d, "closure"};
  return {ReducedBasis(std::move(masks)), std::move(rows), std::move(meta)};
}

}  // namespace

ReducedTransferMatrix closure_reduce(const Protocol& proto, const Bipartition& target, const ClosureOptions& opts) {
  if (target.n() != proto.n()) throw ValidationError("target bipartition and protocol disagree on n");
  check_local_dimension(opts.d);
  if (proto.n() <= 64) return closure_impl(proto, target, opts, NarrowKeys{proto.n()});
  return closure_impl(proto, target, opts, WideKeys{proto.n()});
}

// ---------------------------------------------------------------- analytic builders

namespace {

using CutRow = std::vector<std::pair<int, PowerSum>>;

// Row of I_k for a single-cut basis with junction at 2p.
CutRow single_cut_row(int n, int p, int k) {
  const auto pw = [](int e) { return PowerSum::power(e); };
  if (k == 0 || k == n) return {{k, PowerSum::one()}};
  const int j = 2 * p;
  if (k < j) {
    if (k % 2 == 0) return {{k - 2, pw(2)}, {k, PowerSum::power(2, 2)}, {k + 2, pw(2)}};
    return {{k - 1, pw(1)}, {k + 1, pw(1)}};
  }
  if (k == j) return {{j - 2, pw(2)}, {j, pw(2)}, {j + 1, pw(1)}};
  const int m = k - j;
  CutRow row{{j - 2, pw(m + 2)}, {j, pw(m + 2)}};
  for (int s = 1; s <= m; ++s) row.push_back({j + s, pw(m - s + 2)});
  row.push_back({k + 1, pw(1)});
  return row;
}

ReducedTransferMatrix single_cut_matrix(int n, int p, std::vector<int> cuts, int d, std::optional<int> meta_p,
                                        std::string kind) {
  check_local_dimension(d);
  std::vector<Bipartition> masks;
  masks.reserve(cuts.size());
  for (int k : cuts) masks.push_back(Bipartition::first_k(n, k));
  ReducedBasis basis(std::move(masks));
  std::vector<std::vector<ReducedTransferMatrix::Entry>> rows;
  rows.reserve(cuts.size());
  for (int k : cuts) {
    auto& row = rows.emplace_back();
    for (auto& [kk, c] : single_cut_row(n, p, k)) row.push_back({basis.index_of(Bipartition::first_k(n, kk)), c});
  }
  return {std::move(basis), std::move(rows), MatrixMeta{n, meta_p, Boundary::open, d, std::move(kind)}};
}

void check_canonical(int n, int p) {
  if (n < 4 || n % 2 != 0) throw ValidationError("analytic matrices need even n >= 4, got " + std::to_string(n));
  if (p < 1 || p > n / 2) {
    throw ValidationError("p must lie in 1.." + std::to_string(n / 2) + ", got " + std::to_string(p));
  }
}

}  // namespace

std::vector<int> canonical_cuts(int n, int p) {
  std::vector<int> cuts;
  for (int k = 0; k <= 2 * p && k < n; k += 2) cuts.push_back(k);
  for (int k = 2 * p + 1; k < n; ++k) cuts.push_back(k);
  cuts.push_back(n);
  return cuts;
}

ReducedTransferMatrix build_S(int n, int d) {
  if (n < 3) throw ValidationError("the staircase matrix needs n >= 3");
  return single_cut_matrix(n, 1, canonical_cuts(n, 1), d, 1, "S");
}

ReducedTransferMatrix build_BW(int n, int d) {
  check_canonical(n, n / 2);
  return single_cut_matrix(n, n / 2, canonical_cuts(n, n / 2), d, n / 2, "BW");
}

ReducedTransferMatrix build_canonical(int n, int p, int d) {
  check_canonical(n, p);
  return single_cut_matrix(n, p, canonical_cuts(n, p), d, p, "canonical");
}

ReducedTransferMatrix extend_odd_k(int n, int p, int k_odd, int d) {
  check_canonical(n, p);
  if (k_odd % 2 == 0 || k_odd < 1 || k_odd >= 2 * p) {
    throw ValidationError("odd cut must satisfy 1 <= k < 2p with k odd, got " + std::to_string(k_odd));
  }
  auto cuts = canonical_cuts(n, p);
  cuts.insert(std::upper_bound(cuts.begin(), cuts.end(), k_odd), k_odd);
  return single_cut_matrix(n, p, std::move(cuts), d, p, "odd-k");
}

ReducedTransferMatrix build_perturbed(int n, int p, int d) {
  auto m = build_canonical(n, p, d);
  if (p == n / 2) {
    return m.with_coefficient(0, 0, PowerSum::one(), "perturbed");
  }
  const auto r = m.basis().index_of(Bipartition::first_k(n, n - 1));
  const auto c = m.basis().index_of(Bipartition::first_k(n, 2 * p));
  return m.with_coefficient(r, c, PowerSum::power(1), "perturbed");
}

std::vector<double> lubkin_vector(const ReducedBasis& basis, int d) {
  check_local_dimension(d);
  std::vector<double> out;
  out.reserve(basis.size());
  for (const auto& bp : basis.masks()) {
    const int n = bp.n();
    const int na = bp.size_a();
    const double dd = d;
    out.push_back((std::pow(dd, na - n) + std::pow(dd, -na)) / (std::pow(dd, -n) + 1.0));
  }
  return out;
}

}  // namespace purity
