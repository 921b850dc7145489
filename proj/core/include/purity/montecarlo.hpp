#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "purity/protocol.hpp"

namespace purity {

/// Largest qubit count the state-vector sampler accepts.
inline constexpr int kMonteCarloMaxSites = 14;

/// Pure state of n qubits; amplitude index bit q-1 is the state of site q.
class StateVector {
 public:
  /// |0...0>.
  explicit StateVector(int n);
  StateVector(int n, Eigen::VectorXcd amplitudes);

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] const Eigen::VectorXcd& amplitudes() const noexcept { return amp_; }
  [[nodiscard]] Eigen::VectorXcd& amplitudes() noexcept { return amp_; }
  [[nodiscard]] double norm() const { return amp_.norm(); }

 private:
  int n_;
  Eigen::VectorXcd amp_;
};

/// Haar-random unitary of size dim: QR of a complex Ginibre matrix with the
/// phases of R's diagonal moved into Q.
[[nodiscard]] Eigen::MatrixXcd haar_gate(int dim, std::mt19937_64& rng);

/// Applies a 4x4 unitary on sites (g.i, g.j); local basis index is 2*b_i + b_j.
void apply_gate(StateVector& psi, GatePosition g, const Eigen::Matrix4cd& u);

using GateSource = std::function<Eigen::Matrix4cd()>;

/// One period with a fresh Haar gate at every position, in protocol order.
void evolve_step(StateVector& psi, const Protocol& proto, std::mt19937_64& rng);
/// Same with gates drawn from `source` (e.g. identities).
void evolve_step(StateVector& psi, const Protocol& proto, const GateSource& source);

/// tr rho_A^2 from the Gram matrix of the amplitude reshape on the smaller side.
[[nodiscard]] double purity_of_state(const StateVector& psi, const Bipartition& bp);

struct MCEstimate {
  Bipartition component{1};
  std::vector<double> mean;       // t = 0..T
  std::vector<double> std_error;  // sample stddev / sqrt(samples)
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

struct MCOptions {
  std::size_t samples = 20000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 -> hardware concurrency
};

/// Average purities over independent circuit realizations starting from |0...0>.
/// Sample s uses a generator seeded with derive_seed(seed, s), so results do
/// not depend on the thread count.
[[nodiscard]] std::vector<MCEstimate> mc_trajectory(const Protocol& proto, std::span<const Bipartition> components,
                                                    int steps, const MCOptions& opts);
[[nodiscard]] MCEstimate mc_trajectory(const Protocol& proto, const Bipartition& component, int steps,
                                       const MCOptions& opts);

}  // namespace purity
