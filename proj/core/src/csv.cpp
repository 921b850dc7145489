#include "purity/csv.hpp"

#include <cmath>
#include <cstdio>

namespace purity {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_header(std::ostream& os, const HeaderLines& header) {
  for (const auto& [key, value] : header) os << "# " << key << '=' << value << '\n';
}

void write_matrix_csv(std::ostream& os, const ReducedTransferMatrix& m, const HeaderLines& header) {
  write_header(os, header);
  for (std::size_t c = 0; c < m.size(); ++c) os << (c ? "," : "") << m.basis()[c].bitstring();
  os << '\n';
  for (std::size_t r = 0; r < m.size(); ++r) {
    std::vector<double> row(m.size(), 0.0);
    auto cols = m.row_cols(r);
    auto vals = m.row_values(r);
    for (std::size_t e = 0; e < cols.size(); ++e) row[cols[e]] = vals[e];
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_double(row[c]);
    os << '\n';
  }
}

void write_spectrum_csv(std::ostream& os, const SpectralDecomposition& dec, const HeaderLines& header) {
  write_header(os, header);
  os << "re,im,modulus,residual,left_norm,flagged\n";
  for (std::size_t k = 0; k < dec.size(); ++k) {
    const auto z = dec.eigenvalues[k];
    const double res = dec.has_vectors ? dec.residuals[k] : std::nan("");
    const double ln = dec.has_vectors ? dec.left_norms[k] : std::nan("");
    os << format_double(z.real()) << ',' << format_double(z.imag()) << ',' << format_double(std::abs(z)) << ','
       << format_double(res) << ',' << format_double(ln) << ',' << (dec.flagged[k] ? 1 : 0) << '\n';
  }
}

void write_pseudospectrum_csv(std::ostream& os, const PseudospectrumResult& ps, const HeaderLines& header) {
  write_header(os, header);
  os << "sample,re,im,modulus\n";
  for (std::size_t s = 0; s < ps.clouds.size(); ++s) {
    for (const auto& z : ps.clouds[s]) {
      os << s << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << ','
         << format_double(std::abs(z)) << '\n';
    }
  }
}

void write_trajectory_csv(std::ostream& os, std::span<const double> values, std::span<const double> rates,
                          const HeaderLines& header) {
  write_header(os, header);
  os << "t,I,rate\n";
  for (std::size_t t = 0; t < values.size(); ++t) {
    const double r = t < rates.size() ? rates[t] : std::nan("");
    os << t << ',' << format_double(values[t]) << ',' << format_double(r) << '\n';
  }
}

void write_mc_csv(std::ostream& os, const MCEstimate& est, const HeaderLines& header) {
  write_header(os, header);
  os << "t,mean,stderr,samples\n";
  for (std::size_t t = 0; t < est.mean.size(); ++t) {
    os << t << ',' << format_double(est.mean[t]) << ',' << format_double(est.std_error[t]) << ',' << est.samples
       << '\n';
  }
}

}  // namespace purity
