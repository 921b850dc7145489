#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "purity/eigensolve.hpp"
#include "purity/protocol.hpp"
#include "purity/reduction.hpp"

namespace purity {

/// Deviations below this are not propagated further.
inline constexpr double kDeviationFloor = 1e-250;

struct Trajectory {
  Bipartition component{1};
  std::vector<double> values;  // I(t), t = 0..T
};

/// I(t) for t = 0..steps from the all-ones vector, one series per requested component.
[[nodiscard]] std::vector<Trajectory> propagate(const ReducedTransferMatrix& m, int steps,
                                                std::span<const Bipartition> components);
[[nodiscard]] Trajectory propagate(const ReducedTransferMatrix& m, int steps, const Bipartition& component);

/// (d^|A| + d^|B|) / (1 + d^n).
[[nodiscard]] double lubkin_asymptote(int n, int size_a, int d = 2);

/// I(t) - I(inf) obtained by propagating the deviation vector itself, which
/// avoids subtracting two nearly equal numbers. Requires the Lubkin vector to
/// be a fixed point of m. Stops early once the component falls below the floor.
[[nodiscard]] std::vector<double> deviation_series(const ReducedTransferMatrix& m, int steps,
                                                   const Bipartition& component);

/// I(t+1) - I(t) for t = 0..steps-1, propagated as a vector of differences.
/// Works for any matrix with a fixed point. Stops early at the floor.
[[nodiscard]] std::vector<double> difference_series(const ReducedTransferMatrix& m, int steps,
                                                    const Bipartition& component);

struct RateSeries {
  std::vector<double> r;  // r[t]; NaN where undefined
  bool truncated = false;  // stopped at the numerical floor
};

/// r(t) = (I(t+1) - I(inf)) / (I(t) - I(inf)).
[[nodiscard]] RateSeries instantaneous_rates(std::span<const double> values, double i_inf);
/// r(t) = (I(t+1) - I(t)) / (I(t) - I(t-1)); r[0] is NaN.
[[nodiscard]] RateSeries successive_rates(std::span<const double> values);
/// r(t) = x(t+1) / x(t) for a deviation or difference series.
[[nodiscard]] RateSeries ratio_rates(std::span<const double> series);

struct Window {
  int lo = 0;
  int hi = 0;  // inclusive
};

/// Median of r over the window, ignoring non-finite entries.
[[nodiscard]] double estimate_lambda_eff(std::span<const double> rates, Window window);

/// First t such that r has been on lambda_a's side of the midpoint earlier
/// and r(t..t+persistence-1) all lie on lambda_b's side.
[[nodiscard]] std::optional<int> detect_crossover(std::span<const double> rates, double lambda_a, double lambda_b,
                                                  int persistence = 5);

/// First t such that r(t..t+persistence-1) all lie on `target`'s side of the
/// midpoint between `other` and `target` (t may be 0).
[[nodiscard]] std::optional<int> detect_arrival(std::span<const double> rates, double target, double other,
                                                int persistence = 5);

/// End of the plateau at `level`: first t after the rate has entered
/// level +- band such that r(t..t+persistence-1) all lie outside the band.
[[nodiscard]] std::optional<int> detect_plateau_exit(std::span<const double> rates, double level, double band = 1e-3,
                                                     int persistence = 5);

/// (4a^2)^c_BW * s^c_S with s = 2/3 for qubits. For d != 2 the staircase
/// factor is measured from the pure staircase instead; pass it as s_factor.
[[nodiscard]] double conjectured_lambda_eff(const CutClassification& c, int d = 2,
                                            std::optional<double> s_factor = std::nullopt);

/// Modulus of the slowest nonunit mode reached from the initial deviation:
/// power iteration on 1 - I(inf) (or on the first difference when the Lubkin
/// vector is not a fixed point), run for at least 4n steps and until the
/// norm ratio is stable to `tol`.
[[nodiscard]] double asymptotic_rate(const ReducedTransferMatrix& m, int max_iter = 20000, double tol = 1e-13);

struct CrossoverBound {
  double c2 = 0.0;
  double t_star = 0.0;
  double lambda2_modulus = 0.0;  // largest modulus outside the unit cluster
  double max_left_norm = 0.0;
  double bound = 0.0;            // n^(3/2) * max ||l_k||
  int excluded_unit = 0;
  int excluded_flagged = 0;
};

/// c_2 = sum over k outside the unit cluster of |r_k[j] (l_k . 1)| and
/// t_* = ln(c_2 / c_eff) / ln(lambda_eff / |lambda_2|).
[[nodiscard]] CrossoverBound crossover_bound(const SpectralDecomposition& dec, std::size_t j, double c_eff,
                                             double lambda_eff);

struct DecayOptions {
  int steps = 0;                    // 0 -> 3n
  std::optional<Window> window;     // default [0.1n, 0.6n]
  std::optional<CutClassification> cuts;
  int persistence = 5;
  double plateau_band = 1e-3;
};

struct DecayReport {
  std::string rate_kind;  // "asymptotic" or "successive"
  std::vector<double> values;  // I(t)
  std::vector<double> rates;
  bool truncated = false;
  double lambda_eff = 0.0;
  double lambda2 = 0.0;
  std::string lambda2_source;
  std::optional<double> conjecture;
  std::optional<int> t_crossover;
  std::optional<int> t_plateau_exit;
  Window window;
  std::vector<std::string> notices;
};

/// Propagates `component`, extracts rates, lambda_eff over the window, lambda_2
/// of the matrix, the crossover from the conjectured plateau to lambda_2, and
/// the conjectured value when a cut classification is supplied.
[[nodiscard]] DecayReport analyze_decay(const ReducedTransferMatrix& m, const Bipartition& component,
                                        const DecayOptions& opts = {});

}  // namespace purity
