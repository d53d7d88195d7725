#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "lgt/linkops.hpp"

namespace lgt {

using bigint = boost::multiprecision::cpp_int;

// Nonnegative fixed-point value mantissa / 2^frac_bits; truncation is a
// plain right shift (floor on the fractional field).
struct FixedPoint {
  bigint mant = 0;
  int frac_bits = 0;

  double to_double() const;
  FixedPoint truncated(int bits) const;  // keep `bits` fractional bits
};

struct NewtonRun {
  FixedPoint result;
  std::vector<FixedPoint> iterates;  // x~_0 ... x~_s (or y~)
  int s = 0;                         // iteration count actually used
  double exact = 0;                  // 1/w or sqrt(w)
  double error = 0;                  // |result - exact|
  double bound = 0;                  // the certified error bound
};

// x_i = -w x~_{i-1}^2 + 2 x~_{i-1}, truncated to b fractional bits;
// x~_0 = 2^{-p} with 2^p > w >= 2^{p-1}; s = ceil(log2 b).
// Certified: |x~_s - 1/w| <= (2 + log2 b)/2^b.
NewtonRun newton_inverse(unsigned long long w, int n, int m, int b);

// y_j = (3 y~_{j-1} - x~_s y~_{j-1}^3)/2, truncated to c fractional bits;
// y~_0 = 2^{floor((q-1)/2)} with 2^{1-q} > x~_s >= 2^{-q}; s = ceil(log2 c).
// Certified: |y~_s - sqrt(w)| <= (3/4)^{c-2m} (2 + c + log2 c).
NewtonRun newton_sqrt(unsigned long long w, int n, int m, int c);

// b = ceil(log2(8/eps_b)) rounded up to even; satisfies (2+log2 b)/2^b <= eps_b.
int solve_b(double eps_b);

// smallest integer c with c (3/4)^c <= eps_tilde and c >= cmin, seeded by the
// closed form log_{3/4}((e/2.28)/log_{3/4}(e/2.28)).
int solve_c(double eps_tilde, int cmin);
double solve_c_real(double eps_tilde);  // pre-rounding closed form (slack checks)

enum class HamTerm { Electric, Kinetic, Magnetic };

// Oracle-arithmetic error budgets e~_c per group and term (the inputs to
// solve_c), including the (3/4) prefactors and the 36/44, 128/137, 176/186,
// 704/716 constants.
double epsilon_tilde(Group g, HamTerm term, double eps_total, double r, int d, int L, int eta,
                     int b);
// companion per-branch budget eps_b (the input to solve_b)
double epsilon_b(Group g, HamTerm term, double eps_total, double r, int d, int L);
// c-floor constraint per group/term: c >= 2b + (8|16|16|64) eta + (12|48|72|288)
int c_floor(Group g, HamTerm term, int eta, int b);

}  // namespace lgt
