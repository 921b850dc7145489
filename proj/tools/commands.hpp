#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "purity/purity.hpp"

namespace purity::cli {

/// Resolved parameters of one invocation. Every field is echoed into the
/// header of the files a command writes.
struct ExperimentConfig {
  std::string command;
  int n = 0;
  std::optional<int> p;
  std::string p_range;  // sweep only, "lo..hi"
  bool pbc = false;
  int d = 2;
  std::optional<int> cut;
  std::optional<std::string> bipartition;
  std::string method = "auto";  // auto, analytic, closure
  bool perturbed = false;
  int tmax = 0;
  std::optional<std::string> window;
  bool pseudo = false;
  bool nonzero = false;
  double eps = 1e-5;
  int samples = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string precision = "auto";
  std::size_t max_basis = 2'000'000;
  std::string out = "-";
  std::optional<std::string> report;
};

/// Parses "lo:hi" or "lo,hi".
[[nodiscard]] Window parse_window(const std::string& text);
/// Parses "lo..hi" or a single integer.
[[nodiscard]] std::pair<int, int> parse_range(const std::string& text);

[[nodiscard]] HeaderLines config_header(const ExperimentConfig& cfg);

int cmd_reduce(const ExperimentConfig& cfg);
int cmd_spectrum(const ExperimentConfig& cfg);
int cmd_evolve(const ExperimentConfig& cfg);
int cmd_mc(const ExperimentConfig& cfg);
int cmd_sweep(const ExperimentConfig& cfg);

}  // namespace purity::cli
