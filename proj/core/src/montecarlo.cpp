#include "purity/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <string>
#include <thread>

#include "purity/error.hpp"
#include "purity/rng.hpp"

namespace purity {

namespace {

constexpr std::size_t kChunk = 256;

void check_sites(int n) {
  if (n < 1) throw ValidationError("state vector needs n >= 1");
  if (n > kMonteCarloMaxSites) {
    throw CapacityError("state-vector sampling is limited to n <= " + std::to_string(kMonteCarloMaxSites) +
                        ", got n=" + std::to_string(n));
  }
}

// Running (count, mean, M2) per cell, merged with the parallel update formula.
struct Moments {
  std::vector<double> mean;
  std::vector<double> m2;
  std::size_t count = 0;

  explicit Moments(std::size_t cells) : mean(cells, 0.0), m2(cells, 0.0) {}

  void add(std::span<const double> x) {
    ++count;
    const double c = static_cast<double>(count);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double delta = x[i] - mean[i];
      mean[i] += delta / c;
      m2[i] += delta * (x[i] - mean[i]);
    }
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(o.count);
    const double nt = na + nb;
    for (std::size_t i = 0; i < mean.size(); ++i) {
      const double delta = o.mean[i] - mean[i];
      mean[i] += delta * nb / nt;
      m2[i] += o.m2[i] + delta * delta * na * nb / nt;
    }
    count += o.count;
  }
};

}  // namespace

StateVector::StateVector(int n) : n_(n) {
  check_sites(n);
  amp_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  amp_(0) = 1.0;
}

StateVector::StateVector(int n, Eigen::VectorXcd amplitudes) : n_(n), amp_(std::move(amplitudes)) {
  check_sites(n);
  if (amp_.size() != (Eigen::Index{1} << n)) throw ValidationError("amplitude count must be 2^n");
}

Eigen::MatrixXcd haar_gate(int dim, std::mt19937_64& rng) {
  if (dim < 1) throw ValidationError("unitary dimension must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd z(dim, dim);
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = {s * re, s * im};
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    const std::complex<double> phase = mag > 0.0 ? r(k, k) / mag : std::complex<double>(1.0);
    q.col(k) *= phase;
  }
  return q;
}

void apply_gate(StateVector& psi, GatePosition g, const Eigen::Matrix4cd& u) {
  const int n = psi.n();
  if (g.i < 1 || g.i > n || g.j < 1 || g.j > n || g.i == g.j) throw ValidationError("gate sites outside the chain");
  const std::size_t bi = std::size_t{1} << (g.i - 1);
  const std::size_t bj = std::size_t{1} << (g.j - 1);
  auto& amp = psi.amplitudes();
  const auto dim = static_cast<std::size_t>(amp.size());
  for (std::size_t x = 0; x < dim; ++x) {
    if ((x & bi) != 0 || (x & bj) != 0) continue;
    const std::size_t idx[4] = {x, x | bj, x | bi, x | bi | bj};
    Eigen::Vector4cd v;
    for (int k = 0; k < 4; ++k) v(k) = amp(static_cast<Eigen::Index>(idx[k]));
    const Eigen::Vector4cd w = u * v;
    for (int k = 0; k < 4; ++k) amp(static_cast<Eigen::Index>(idx[k])) = w(k);
  }
}

void evolve_step(StateVector& psi, const Protocol& proto, const GateSource& source) {
  if (proto.n() != psi.n()) throw ValidationError("state and protocol disagree on n");
  for (const auto& g : proto.gates()) apply_gate(psi, g, source());
}

void evolve_step(StateVector& psi, const Protocol& proto, std::mt19937_64& rng) {
  evolve_step(psi, proto, [&rng]() -> Eigen::Matrix4cd { return haar_gate(4, rng); });
}

double purity_of_state(const StateVector& psi, const Bipartition& bp) {
  const int n = psi.n();
  if (bp.n() != n) throw ValidationError("state and bipartition disagree on n");
  std::vector<int> small;
  std::vector<int> large;
  const bool a_smaller = bp.size_a() <= n - bp.size_a();
  for (int q = 1; q <= n; ++q) ((bp.contains(q) == a_smaller) ? small : large).push_back(q - 1);
  const Eigen::Index rows = Eigen::Index{1} << small.size();
  const Eigen::Index cols = Eigen::Index{1} << large.size();
  Eigen::MatrixXcd gmat(rows, cols);
  const auto& amp = psi.amplitudes();
  for (Eigen::Index x = 0; x < amp.size(); ++x) {
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    for (std::size_t k = 0; k < small.size(); ++k) r |= ((x >> small[k]) & 1) << k;
    for (std::size_t k = 0; k < large.size(); ++k) c |= ((x >> large[k]) & 1) << k;
    gmat(r, c) = amp(x);
  }
  const Eigen::MatrixXcd rho = gmat * gmat.adjoint();
  return rho.squaredNorm();
}

std::vector<MCEstimate> mc_trajectory(const Protocol& proto, std::span<const Bipartition> components, int steps,
                                      const MCOptions& opts) {
  check_sites(proto.n());
  if (steps < 0) throw ValidationError("number of steps must be >= 0");
  if (opts.samples < 100) throw ValidationError("Monte Carlo needs at least 100 samples");
  for (const auto& c : components) {
    if (c.n() != proto.n()) throw ValidationError("bipartition and protocol disagree on n");
  }
  const std::size_t per_sample = components.size() * static_cast<std::size_t>(steps + 1);
  const std::size_t chunks = (opts.samples + kChunk - 1) / kChunk;
  std::vector<Moments> partial(chunks, Moments(per_sample));

  auto run_chunk = [&](std::size_t chunk) {
    std::vector<double> row(per_sample);
    const std::size_t first = chunk * kChunk;
    const std::size_t last = std::min(first + kChunk, opts.samples);
    for (std::size_t s = first; s < last; ++s) {
      std::mt19937_64 rng(derive_seed(opts.seed, s));
      StateVector psi(proto.n());
      for (int t = 0; t <= steps; ++t) {
        if (t > 0) evolve_step(psi, proto, rng);
        for (std::size_t c = 0; c < components.size(); ++c) {
          row[c * static_cast<std::size_t>(steps + 1) + static_cast<std::size_t>(t)] =
              purity_of_state(psi, components[c]);
        }
      }
      partial[chunk].add(row);
    }
  };

  unsigned threads = opts.threads != 0 ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&]() {
        for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) run_chunk(c);
      });
    }
  }

  Moments total(per_sample);
  for (const auto& p : partial) total.merge(p);
  std::vector<MCEstimate> out;
  const double count = static_cast<double>(total.count);
  for (std::size_t c = 0; c < components.size(); ++c) {
    MCEstimate est{components[c], {}, {}, total.count, opts.seed};
    for (int t = 0; t <= steps; ++t) {
      const std::size_t cell = c * static_cast<std::size_t>(steps + 1) + static_cast<std::size_t>(t);
      est.mean.push_back(total.mean[cell]);
      const double var = total.count > 1 ? total.m2[cell] / (count - 1.0) : 0.0;
      est.std_error.push_back(std::sqrt(std::max(var, 0.0) / count));
    }
    out.push_back(std::move(est));
  }
  return out;
}

MCEstimate mc_trajectory(const Protocol& proto, const Bipartition& component, int steps, const MCOptions& opts) {
  return mc_trajectory(proto, std::span<const Bipartition>(&component, 1), steps, opts).front();
}

}  // namespace purity
