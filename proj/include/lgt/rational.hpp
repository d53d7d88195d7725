#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>

namespace lgt {

// Signed exact rational used under CG/isoscalar square roots. Radicands are
// evaluated exactly so that "negative => 0" and "unphysical (zero
// denominator) => 0" never misfire from rounding.
struct Rat {
  long long num = 0;
  long long den = 1;

  bool valid() const { return den != 0; }
  bool negative() const { return valid() && (num < 0) != (den < 0) && num != 0; }
  bool zero() const { return valid() && num == 0; }

  Rat reduced() const {
    if (den == 0) return *this;
    long long g = std::gcd(num < 0 ? -num : num, den < 0 ? -den : den);
    if (g == 0) return {0, 1};
    Rat r{num / g, den / g};
    if (r.den < 0) { r.num = -r.num; r.den = -r.den; }
    return r;
  }

  Rat operator*(const Rat& o) const {
    // reduce cross-wise first to keep magnitudes in range
    Rat a = Rat{num, o.den}.reduced();
    Rat b = Rat{o.num, den}.reduced();
    return Rat{a.num * b.num, a.den * b.den}.reduced();
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// sqrt of a radicand rational: 0 if negative or undefined (the paper's
// "set the elements ... to zeros" rule for unphysical quantum numbers).
inline double sqrt_or_zero(const Rat& r) {
  if (!r.valid()) return 0.0;
  if (r.num == 0) return 0.0;
  if (r.negative()) return 0.0;
  return std::sqrt(r.to_double());
}

}  // namespace lgt
