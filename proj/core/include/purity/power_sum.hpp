#pragma once

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <string>

namespace purity {

/// Exact transfer-matrix coefficient: a finite sum  sum_k count_k * a^k  with
/// non-negative integer counts. Keeping coefficients symbolic lets the same
/// matrix be evaluated in double or in extended precision without rounding
/// the input.
class PowerSum {
 public:
  struct Term {
    int exponent = 0;
    std::uint64_t count = 0;
    friend bool operator==(const Term&, const Term&) = default;
  };

  PowerSum() = default;
  static PowerSum power(int exponent, std::uint64_t count = 1);
  static PowerSum one() { return power(0); }

  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] const auto& terms() const noexcept { return terms_; }

  PowerSum& operator+=(const PowerSum& other);
  /// Multiplies by a^k.
  [[nodiscard]] PowerSum shifted(int k) const;

  template <typename T>
  [[nodiscard]] T evaluate(const T& a) const {
    T total(0);
    for (const auto& t : terms_) {
      T term(1);
      for (int e = 0; e < t.exponent; ++e) term *= a;
      total += term * T(static_cast<double>(t.count));
    }
    return total;
  }

  /// e.g. "2a^2+a^3"; "0" for the empty sum.
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const PowerSum& lhs, const PowerSum& rhs) { return lhs.terms_ == rhs.terms_; }
  friend PowerSum operator+(PowerSum lhs, const PowerSum& rhs) { return lhs += rhs; }

 private:
  boost::container::small_vector<Term, 2> terms_;  // sorted by exponent, counts > 0
};

/// a = d / (d^2 + 1), the single-gate Markov weight for local dimension d.
[[nodiscard]] double gate_weight(int d);
/// Throws ValidationError unless d >= 2.
void check_local_dimension(int d);

}  // namespace purity
