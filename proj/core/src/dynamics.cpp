#include "purity/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "purity/chebyshev.hpp"
#include "purity/error.hpp"
#include "purity/spectral.hpp"

namespace purity {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kMaxDenseLambda2 = 3000;

void check_steps(int steps) {
  if (steps < 1) throw ValidationError("number of steps must be >= 1");
}

std::vector<double> ones(std::size_t m) { return std::vector<double>(m, 1.0); }

double fixed_point_residual(const ReducedTransferMatrix& m, const std::vector<double>& x) {
  std::vector<double> y(m.size());
  m.apply(x, y);
  double worst = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) worst = std::max(worst, std::abs(y[i] - x[i]));
  return worst;
}

std::vector<double> propagate_component(const ReducedTransferMatrix& m, std::vector<double> x, int steps,
                                        std::size_t idx) {
  std::vector<double> out{x[idx]};
  std::vector<double> y(m.size());
  for (int t = 0; t < steps; ++t) {
    if (std::abs(x[idx]) < kDeviationFloor) break;
    m.apply(x, y);
    std::swap(x, y);
    out.push_back(x[idx]);
  }
  return out;
}

bool on_side(double r, double mid, bool above) { return above ? r > mid : r < mid; }

bool run_holds(std::span<const double> rates, std::size_t t, int persistence, auto pred) {
  if (t + static_cast<std::size_t>(persistence) > rates.size()) return false;
  for (std::size_t s = t; s < t + static_cast<std::size_t>(persistence); ++s) {
    if (!std::isfinite(rates[s]) || !pred(rates[s])) return false;
  }
  return true;
}

}  // namespace

std::vector<Trajectory> propagate(const ReducedTransferMatrix& m, int steps, std::span<const Bipartition> components) {
  check_steps(steps);
  std::vector<std::size_t> idx;
  std::vector<Trajectory> out;
  for (const auto& c : components) {
    idx.push_back(m.basis().index_of(c));
    out.push_back({c, {1.0}});
  }
  auto x = ones(m.size());
  std::vector<double> y(m.size());
  for (int t = 0; t < steps; ++t) {
    m.apply(x, y);
    std::swap(x, y);
    for (std::size_t k = 0; k < idx.size(); ++k) out[k].values.push_back(x[idx[k]]);
  }
  return out;
}

Trajectory propagate(const ReducedTransferMatrix& m, int steps, const Bipartition& component) {
  return propagate(m, steps, std::span<const Bipartition>(&component, 1)).front();
}

double lubkin_asymptote(int n, int size_a, int d) {
  if (n < 1 || size_a < 0 || size_a > n) throw ValidationError("need 0 <= |A| <= n");
  check_local_dimension(d);
  const double dd = d;
  return (std::pow(dd, size_a - n) + std::pow(dd, -size_a)) / (std::pow(dd, -n) + 1.0);
}

std::vector<double> deviation_series(const ReducedTransferMatrix& m, int steps, const Bipartition& component) {
  check_steps(steps);
  const std::size_t idx = m.basis().index_of(component);
  const auto lub = lubkin_vector(m.basis(), m.meta().d);
  if (fixed_point_residual(m, lub) > 1e-12) {
    throw ValidationError("the Lubkin vector is not a fixed point of this matrix; use successive differences");
  }
  std::vector<double> d0(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) d0[i] = 1.0 - lub[i];
  return propagate_component(m, std::move(d0), steps, idx);
}

std::vector<double> difference_series(const ReducedTransferMatrix& m, int steps, const Bipartition& component) {
  check_steps(steps);
  const std::size_t idx = m.basis().index_of(component);
  auto x = ones(m.size());
  std::vector<double> d0(m.size());
  m.apply(x, d0);
  for (auto& v : d0) v -= 1.0;
  return propagate_component(m, std::move(d0), steps - 1, idx);
}

RateSeries instantaneous_rates(std::span<const double> values, double i_inf) {
  RateSeries out;
  for (std::size_t t = 0; t + 1 < values.size(); ++t) {
    const double den = values[t] - i_inf;
    if (std::abs(den) < kDeviationFloor) {
      out.truncated = true;
      break;
    }
    out.r.push_back((values[t + 1] - i_inf) / den);
  }
  return out;
}

RateSeries successive_rates(std::span<const double> values) {
  RateSeries out;
  if (!values.empty()) out.r.push_back(kNaN);
  for (std::size_t t = 1; t + 1 < values.size(); ++t) {
    const double den = values[t] - values[t - 1];
    if (std::abs(den) < kDeviationFloor) {
      out.truncated = true;
      break;
    }
    out.r.push_back((values[t + 1] - values[t]) / den);
  }
  return out;
}

RateSeries ratio_rates(std::span<const double> series) {
  RateSeries out;
  for (std::size_t t = 0; t + 1 < series.size(); ++t) {
    if (std::abs(series[t]) < kDeviationFloor) {
      out.truncated = true;
      break;
    }
    out.r.push_back(series[t + 1] / series[t]);
  }
  if (!series.empty() && std::abs(series.back()) < kDeviationFloor) out.truncated = true;
  return out;
}

double estimate_lambda_eff(std::span<const double> rates, Window window) {
  if (window.lo < 0 || window.hi < window.lo) throw ValidationError("window must satisfy 0 <= lo <= hi");
  std::vector<double> sample;
  for (int t = window.lo; t <= window.hi && static_cast<std::size_t>(t) < rates.size(); ++t) {
    if (std::isfinite(rates[static_cast<std::size_t>(t)])) sample.push_back(rates[static_cast<std::size_t>(t)]);
  }
  if (sample.empty()) throw ValidationError("rate window is empty");
  const std::size_t mid = sample.size() / 2;
  std::nth_element(sample.begin(), sample.begin() + static_cast<std::ptrdiff_t>(mid), sample.end());
  const double upper = sample[mid];
  if (sample.size() % 2 == 1) return upper;
  const double lower = *std::max_element(sample.begin(), sample.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

std::optional<int> detect_crossover(std::span<const double> rates, double lambda_a, double lambda_b,
                                    int persistence) {
  if (lambda_a == lambda_b) throw ValidationError("crossover needs two distinct rates");
  const double mid = 0.5 * (lambda_a + lambda_b);
  const bool b_above = lambda_b > lambda_a;
  bool seen_a = false;
  for (std::size_t t = 0; t < rates.size(); ++t) {
    if (!std::isfinite(rates[t])) continue;
    if (!seen_a) {
      seen_a = on_side(rates[t], mid, !b_above);
      continue;
    }
    if (run_holds(rates, t, persistence, [&](double r) { return on_side(r, mid, b_above); })) {
      return static_cast<int>(t);
    }
  }
  return std::nullopt;
}

std::optional<int> detect_arrival(std::span<const double> rates, double target, double other, int persistence) {
  if (target == other) throw ValidationError("arrival needs two distinct rates");
  const double mid = 0.5 * (target + other);
  const bool above = target > other;
  for (std::size_t t = 0; t < rates.size(); ++t) {
    if (run_holds(rates, t, persistence, [&](double r) { return on_side(r, mid, above); })) {
      return static_cast<int>(t);
    }
  }
  return std::nullopt;
}

std::optional<int> detect_plateau_exit(std::span<const double> rates, double level, double band, int persistence) {
  bool entered = false;
  for (std::size_t t = 0; t < rates.size(); ++t) {
    if (!std::isfinite(rates[t])) continue;
    const bool inside = std::abs(rates[t] - level) <= band;
    if (!entered) {
      entered = inside;
      continue;
    }
    if (!inside && run_holds(rates, t, persistence, [&](double r) { return std::abs(r - level) > band; })) {
      return static_cast<int>(t);
    }
  }
  return std::nullopt;
}

double conjectured_lambda_eff(const CutClassification& c, int d, std::optional<double> s_factor) {
  const double a = gate_weight(d);
  double s = 2.0 / 3.0;
  if (s_factor) {
    s = *s_factor;
  } else if (d != 2 && c.c_s > 0) {
    throw ValidationError("the staircase factor is only known for d = 2; supply a measured value");
  }
  return std::pow(4.0 * a * a, c.c_bw) * std::pow(s, c.c_s);
}

double asymptotic_rate(const ReducedTransferMatrix& m, int max_iter, double tol) {
  const auto lub = lubkin_vector(m.basis(), m.meta().d);
  std::vector<double> x(m.size());
  if (fixed_point_residual(m, lub) <= 1e-12) {
    for (std::size_t i = 0; i < m.size(); ++i) x[i] = 1.0 - lub[i];
  } else {
    m.apply(ones(m.size()), x);
    for (auto& v : x) v -= 1.0;
  }
  auto norm = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return std::sqrt(s);
  };
  double nx = norm(x);
  if (!(nx > 0.0)) throw ValidationError("initial deviation vanishes; no decaying mode");
  for (auto& v : x) v /= nx;
  std::vector<double> y(m.size());
  const int min_iter = 4 * m.meta().n;
  double prev = 0.0;
  int stable = 0;
  for (int k = 0; k < max_iter; ++k) {
    m.apply(x, y);
    const double rho = norm(y);
    if (!(rho > 0.0)) return 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] / rho;
    stable = std::abs(rho - prev) < tol ? stable + 1 : 0;
    prev = rho;
    if (k >= min_iter && stable >= 20) return rho;
  }
  throw ConvergenceError("power iteration for the asymptotic rate did not settle in " + std::to_string(max_iter) +
                         " steps (last ratio " + std::to_string(prev) + ")");
}

CrossoverBound crossover_bound(const SpectralDecomposition& dec, std::size_t j, double c_eff, double lambda_eff) {
  if (!dec.has_vectors) throw ValidationError("crossover bound needs eigenvectors");
  if (j >= dec.size()) throw ValidationError("component index outside the matrix");
  if (!(c_eff > 0.0)) throw ValidationError("c_eff must be positive");
  CrossoverBound out;
  const auto m = static_cast<Eigen::Index>(dec.size());
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    if (std::abs(dec.eigenvalues[uk] - 1.0) <= 1e-8) {
      ++out.excluded_unit;
      continue;
    }
    if (dec.flagged[uk]) {
      ++out.excluded_flagged;
      continue;
    }
    const std::complex<double> l_dot_one = dec.left.col(k).sum();
    out.c2 += std::abs(dec.right(static_cast<Eigen::Index>(j), k) * l_dot_one);
    out.max_left_norm = std::max(out.max_left_norm, dec.left_norms[uk]);
    out.lambda2_modulus = std::max(out.lambda2_modulus, std::abs(dec.eigenvalues[uk]));
  }
  if (!(lambda_eff > out.lambda2_modulus)) throw ValidationError("crossover bound needs lambda_eff > |lambda_2|");
  out.t_star = std::log(out.c2 / c_eff) / std::log(lambda_eff / out.lambda2_modulus);
  out.bound = std::pow(static_cast<double>(dec.size()), 1.5) * out.max_left_norm;
  return out;
}

DecayReport analyze_decay(const ReducedTransferMatrix& m, const Bipartition& component, const DecayOptions& opts) {
  const auto& meta = m.meta();
  const int n = meta.n;
  const int steps = opts.steps > 0 ? opts.steps : 3 * n;
  DecayReport rep;
  rep.values = propagate(m, steps, component).values;

  const bool lubkin_fixed = fixed_point_residual(m, lubkin_vector(m.basis(), meta.d)) <= 1e-12;
  RateSeries rs;
  if (lubkin_fixed) {
    rep.rate_kind = "asymptotic";
    rs = ratio_rates(deviation_series(m, steps, component));
  } else {
    rep.rate_kind = "successive";
    rs = ratio_rates(difference_series(m, steps, component));
    rs.r.insert(rs.r.begin(), kNaN);
  }
  rep.rates = std::move(rs.r);
  rep.truncated = rs.truncated;
  if (rep.truncated) rep.notices.push_back("rates truncated at the deviation floor");

  const std::string& kind = meta.kind;
  if ((kind == "S" || kind == "BW" || kind == "canonical" || kind == "odd-k") && n % 2 == 0) {
    rep.lambda2 = exact_nonzero_spectrum(n, meta.d).front();
    rep.lambda2_source = "chebyshev";
  } else if (kind == "S") {
    rep.lambda2 = std::abs(leading_eigenvalue(m, Precision::extended));
    rep.lambda2_source = "eigensolve";
  } else if (kind == "perturbed" && meta.p && *meta.p < n / 2) {
    rep.lambda2 = perturbed_lambda2(n, *meta.p, meta.d);
    rep.lambda2_source = "secular";
  } else if (m.basis().nontrivial().size() <= kMaxDenseLambda2) {
    rep.lambda2 = std::abs(leading_eigenvalue(m, Precision::standard));
    rep.lambda2_source = "eigensolve";
  } else {
    rep.lambda2 = asymptotic_rate(m);
    rep.lambda2_source = "power-iteration";
  }

  if (opts.cuts) {
    if (meta.d == 2 || opts.cuts->c_s == 0) {
      rep.conjecture = conjectured_lambda_eff(*opts.cuts, meta.d);
      if (opts.cuts->at_junction > 0) {
        rep.notices.push_back("boundary at the brickwall/staircase junction; alternative classification gives " +
                              std::to_string(conjectured_lambda_eff(opts.cuts->alternative(), meta.d)));
      }
    } else {
      rep.notices.push_back("no conjectured value: staircase factor unknown for d != 2");
    }
  }

  const int last = static_cast<int>(rep.rates.size()) - 1;
  if (last < 0) throw ValidationError("trajectory too short for rates");
  if (opts.window) {
    rep.window = *opts.window;
  } else {
    rep.window = {std::max(1, static_cast<int>(std::lround(0.1 * n))), static_cast<int>(std::lround(0.6 * n))};
  }
  rep.window.hi = std::min(rep.window.hi, last);
  rep.window.lo = std::min(rep.window.lo, rep.window.hi);

  if (rep.conjecture && std::isfinite(rep.lambda2) && std::abs(*rep.conjecture - rep.lambda2) > 1e-2 * rep.lambda2) {
    rep.t_crossover = detect_crossover(rep.rates, *rep.conjecture, rep.lambda2, opts.persistence);
    rep.t_plateau_exit = detect_plateau_exit(rep.rates, *rep.conjecture, opts.plateau_band, opts.persistence);
    if (rep.t_crossover && *rep.t_crossover <= rep.window.hi) {
      if (opts.window) {
        rep.notices.push_back("window overlaps the detected crossover at t=" + std::to_string(*rep.t_crossover));
      } else {
        rep.window.hi = *rep.t_crossover / 3;
        if (rep.window.hi < rep.window.lo) rep.window.lo = 0;
        rep.notices.push_back("window clipped to the first third of the pre-crossover range");
      }
    }
  }
  rep.lambda_eff = estimate_lambda_eff(rep.rates, rep.window);
  return rep;
}

}  // namespace purity
