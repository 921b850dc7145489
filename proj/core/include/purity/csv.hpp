#pragma once

#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "purity/dynamics.hpp"
#include "purity/eigensolve.hpp"
#include "purity/montecarlo.hpp"
#include "purity/reduction.hpp"
#include "purity/spectral.hpp"

namespace purity {

/// Ordered key/value pairs echoed as '#' lines at the top of every file.
using HeaderLines = std::vector<std::pair<std::string, std::string>>;

/// 17 significant digits, '.' decimal separator.
[[nodiscard]] std::string format_double(double x);

void write_header(std::ostream& os, const HeaderLines& header);

/// Header row of basis bitstrings, then one matrix row per line.
void write_matrix_csv(std::ostream& os, const ReducedTransferMatrix& m, const HeaderLines& header = {});
/// Columns re, im, modulus, residual, left_norm, flagged.
void write_spectrum_csv(std::ostream& os, const SpectralDecomposition& dec, const HeaderLines& header = {});
/// Columns sample, re, im, modulus.
void write_pseudospectrum_csv(std::ostream& os, const PseudospectrumResult& ps, const HeaderLines& header = {});
/// Columns t, I, rate.
void write_trajectory_csv(std::ostream& os, std::span<const double> values, std::span<const double> rates,
                          const HeaderLines& header = {});
/// Columns t, mean, stderr, samples.
void write_mc_csv(std::ostream& os, const MCEstimate& est, const HeaderLines& header = {});

}  // namespace purity
