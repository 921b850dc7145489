#pragma once

#include <cmath>
#include <vector>

namespace purity {

/// Chebyshev polynomial of the second kind by the three-term recurrence,
/// U_{-1} = 0, U_0 = 1. Valid for any real x, including |x| > 1.
template <typename T>
[[nodiscard]] T chebyshev_U(int m, const T& x) {
  if (m < 0) return T(0);
  T prev(0);
  T cur(1);
  for (int k = 0; k < m; ++k) {
    T next = T(2) * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Nonzero eigenvalues 4a^2 cos^2(j pi / n), j = 1..n/2-1, in descending order.
[[nodiscard]] std::vector<double> exact_nonzero_spectrum(int n, int d = 2);

/// Closed form of det(R_p^(n) - lambda) for lambda >= 0:
/// (-1)^(n+3p+1) lambda^(n/2-p-1/2) a^(n-1) U_{n-1}(sqrt(lambda) / 2a).
template <typename T>
[[nodiscard]] T charpoly_closed_form(int n, int p, const T& a, const T& lambda) {
  using std::pow;
  using std::sqrt;
  const T x = sqrt(lambda) / (T(2) * a);
  T value = pow(lambda, T(n) / T(2) - T(p) - T(0.5)) * pow(a, T(n - 1)) * chebyshev_U(n - 1, x);
  return ((n + 3 * p + 1) % 2 == 0) ? value : T(-value);
}

/// Left side of the perturbed secular equation
/// (a^(n-2p) - 1) U_{2p-1}(x) + (-1)^n lambda^(n/2-p) U_{n-1}(x),  x = sqrt(lambda) / 2a.
template <typename T>
[[nodiscard]] T perturbed_secular(int n, int p, const T& a, const T& lambda) {
  using std::pow;
  using std::sqrt;
  const T x = sqrt(lambda) / (T(2) * a);
  const T first = (pow(a, T(n - 2 * p)) - T(1)) * chebyshev_U(2 * p - 1, x);
  T second = pow(lambda, T(n / 2 - p)) * chebyshev_U(n - 1, x);
  if (n % 2 != 0) second = -second;
  return first + second;
}

}  // namespace purity
