#include "purity/chebyshev.hpp"

#include <numbers>

#include "purity/error.hpp"
#include "purity/power_sum.hpp"

namespace purity {

std::vector<double> exact_nonzero_spectrum(int n, int d) {
  if (n < 2 || n % 2 != 0) throw ValidationError("exact spectrum needs even n >= 2");
  const double a = gate_weight(d);
  std::vector<double> out;
  for (int j = 1; j <= n / 2 - 1; ++j) {
    const double c = std::cos(j * std::numbers::pi / n);
    out.push_back(4.0 * a * a * c * c);
  }
  return out;
}

}  // namespace purity
