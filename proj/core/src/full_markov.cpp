#include "purity/full_markov.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "purity/error.hpp"

namespace purity {

namespace {

void check_capacity(int n) {
  if (n < 1) throw ValidationError("n must be positive");
  if (n > kFullMarkovMaxSites) {
    throw CapacityError("full 2^n propagation is limited to n <= " + std::to_string(kFullMarkovMaxSites) +
                        ", got n=" + std::to_string(n));
  }
}

}  // namespace

FullPurityVector::FullPurityVector(int n, double fill) : n_(n) {
  check_capacity(n);
  values_.assign(std::size_t{1} << n, fill);
}

FullPurityVector FullPurityVector::lubkin(int n, int d) {
  FullPurityVector v(n);
  const double denom = 1.0 + std::pow(static_cast<double>(d), n);
  for (std::uint64_t alpha = 0; alpha < v.size(); ++alpha) {
    const int na = std::popcount(alpha);
    v.values_[alpha] = (std::pow(static_cast<double>(d), na) + std::pow(static_cast<double>(d), n - na)) / denom;
  }
  return v;
}

double FullPurityVector::at(const Bipartition& bp) const {
  if (bp.n() != n_) throw ValidationError("bipartition size does not match the purity vector");
  return values_[bp.encode()];
}

void apply_gate_full(FullPurityVector& v, GatePosition g, double a) {
  const int n = v.n();
  if (g.i < 1 || g.i > n || g.j < 1 || g.j > n || g.i == g.j) throw ValidationError("gate outside the chain");
  const std::uint64_t bi = std::uint64_t{1} << (g.i - 1);
  const std::uint64_t bj = std::uint64_t{1} << (g.j - 1);
  const std::uint64_t both = bi | bj;
  // Visit each 4-tuple once through its 00 representative.
  for (std::uint64_t base = 0; base < v.size(); ++base) {
    if (base & both) continue;
    const double mixed = a * (v[base] + v[base | both]);
    v[base | bi] = mixed;
    v[base | bj] = mixed;
  }
}

void step_full(FullPurityVector& v, const Protocol& proto, double a) {
  if (proto.n() != v.n()) throw ValidationError("protocol and purity vector disagree on n");
  for (const auto& g : proto.gates()) apply_gate_full(v, g, a);
}

std::vector<std::vector<double>> trajectory_full(const Protocol& proto, std::span<const Bipartition> bps, int steps,
                                                 double a) {
  check_capacity(proto.n());
  if (steps < 0) throw ValidationError("number of steps must be non-negative");
  std::vector<std::uint64_t> labels;
  for (const auto& bp : bps) {
    if (bp.n() != proto.n()) throw ValidationError("bipartition and protocol disagree on n");
    labels.push_back(bp.encode());
  }
  auto v = FullPurityVector::all_ones(proto.n());
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (int t = 0;; ++t) {
    auto& row = out.emplace_back();
    for (auto alpha : labels) row.push_back(v[alpha]);
    if (t == steps) break;
    step_full(v, proto, a);
  }
  return out;
}

std::vector<double> trajectory_full(const Protocol& proto, const Bipartition& bp, int steps, double a) {
  auto rows = trajectory_full(proto, std::span<const Bipartition>(&bp, 1), steps, a);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.front());
  return out;
}

}  // namespace purity
