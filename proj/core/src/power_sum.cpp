#include "purity/power_sum.hpp"

#include <algorithm>

#include "purity/error.hpp"

namespace purity {

PowerSum PowerSum::power(int exponent, std::uint64_t count) {
  PowerSum s;
  if (count > 0) s.terms_.push_back({exponent, count});
  return s;
}

PowerSum& PowerSum::operator+=(const PowerSum& other) {
  for (const auto& t : other.terms_) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), t.exponent,
                               [](const Term& lhs, int e) { return lhs.exponent < e; });
    if (it != terms_.end() && it->exponent == t.exponent) {
      it->count += t.count;
    } else {
      terms_.insert(it, t);
    }
  }
  return *this;
}

PowerSum PowerSum::shifted(int k) const {
  PowerSum s = *this;
  for (auto& t : s.terms_) t.exponent += k;
  return s;
}

std::string PowerSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += '+';
    if (t.count != 1 || t.exponent == 0) out += std::to_string(t.count);
    if (t.exponent >= 1) out += 'a';
    if (t.exponent > 1) out += '^' + std::to_string(t.exponent);
  }
  return out;
}

double gate_weight(int d) {
  check_local_dimension(d);
  return static_cast<double>(d) / (static_cast<double>(d) * d + 1.0);
}

void check_local_dimension(int d) {
  if (d < 2) throw ValidationError("local dimension must be >= 2");
}

}  // namespace purity
