#include "lgt/fixedpoint.hpp"

#include <cmath>
#include <stdexcept>

namespace lgt {

double FixedPoint::to_double() const {
  return mant.convert_to<double>() * std::ldexp(1.0, -frac_bits);
}

FixedPoint FixedPoint::truncated(int bits) const {
  if (bits >= frac_bits) {
    FixedPoint f{mant << (bits - frac_bits), bits};
    return f;
  }
  return FixedPoint{mant >> (frac_bits - bits), bits};
}

namespace {

int ceil_log2_int(int x) {
  int e = 0;
  while ((1 << e) < x) ++e;
  return e;
}

FixedPoint fp_mul(const FixedPoint& a, const FixedPoint& b) {
  return FixedPoint{a.mant * b.mant, a.frac_bits + b.frac_bits};
}

}  // namespace

NewtonRun newton_inverse(unsigned long long w, int n, int m, int b) {
  (void)n;
  if (w == 0) throw std::invalid_argument("newton_inverse: w must be >= 1");
  if (b < 1) throw std::invalid_argument("newton_inverse: b must be >= 1");
  (void)m;
  NewtonRun run;
  // smallest p with 2^p >= w, so powers of two are exact fixed points
  int p = 0;
  while ((1ULL << p) < w) ++p;
  FixedPoint x{bigint(1) << (b - p), b};
  if (b < p) x = FixedPoint{0, b};  // degenerate narrow field
  run.iterates.push_back(x);
  run.s = ceil_log2_int(b);
  FixedPoint W{bigint(w), 0};
  for (int i = 0; i < run.s; ++i) {
    // x := 2 x~ - w x~^2, truncated to b fractional bits
    FixedPoint x2 = fp_mul(x, x);
    FixedPoint wx2 = fp_mul(W, x2);
    bigint two_x = x.mant << (wx2.frac_bits - x.frac_bits + 1);
    bigint next = two_x - wx2.mant;
    if (next < 0) next = 0;
    x = FixedPoint{next, wx2.frac_bits}.truncated(b);
    run.iterates.push_back(x);
  }
  run.result = x;
  run.exact = 1.0 / static_cast<double>(w);
  run.error = std::abs(x.to_double() - run.exact);
  run.bound = (2.0 + std::log2(double(b))) * std::ldexp(1.0, -b);
  return run;
}

NewtonRun newton_sqrt(unsigned long long w, int n, int m, int c) {
  if (w == 0) throw std::invalid_argument("newton_sqrt: w must be >= 1");
  if (c < std::max(2 * m, 4)) throw std::invalid_argument("newton_sqrt: c >= max(2m, 4)");
  NewtonRun inv = newton_inverse(w, n, m, c);
  NewtonRun run;
  // 2^{1-q} > x~_s >= 2^{-q}: q from the reciprocal's magnitude
  int q = 0;
  {
    FixedPoint xs = inv.result;
    while ((xs.mant << q) < (bigint(1) << xs.frac_bits)) ++q;
  }
  // (q-1)/2 truncated toward zero keeps w = 1 an exact fixed point
  FixedPoint y{bigint(1) << std::max(0, (q - 1) / 2), 0};
  y = y.truncated(c);
  run.iterates.push_back(y);
  run.s = ceil_log2_int(c);
  for (int j = 0; j < run.s; ++j) {
    // y := (3 y~ - x~_s y~^3)/2 truncated to c fractional bits
    FixedPoint y3 = fp_mul(fp_mul(y, y), y);
    FixedPoint xy3 = fp_mul(inv.result, y3);
    bigint three_y = 3 * (y.mant << (xy3.frac_bits - y.frac_bits));
    bigint num = three_y - xy3.mant;
    if (num < 0) num = 0;
    FixedPoint ynext{num, xy3.frac_bits + 1};  // the /2
    y = ynext.truncated(c);
    run.iterates.push_back(y);
  }
  run.result = y;
  run.exact = std::sqrt(static_cast<double>(w));
  run.error = std::abs(y.to_double() - run.exact);
  run.bound = std::pow(0.75, c - 2 * m) * (2.0 + c + std::log2(double(c)));
  return run;
}

int solve_b(double eps_b) {
  if (!(eps_b > 0) || !(eps_b < 1)) throw std::invalid_argument("solve_b: eps in (0,1)");
  int b = static_cast<int>(std::ceil(std::log2(8.0 / eps_b)));
  if (b % 2) ++b;
  while ((2.0 + std::log2(double(b))) * std::ldexp(1.0, -b) > eps_b) b += 2;
  return b;
}

double solve_c_real(double eps_tilde) {
  auto log34 = [](double x) { return std::log(x) / std::log(0.75); };
  return log34((eps_tilde / 2.28) / log34(eps_tilde / 2.28));
}

int solve_c(double eps_tilde, int cmin) {
  if (!(eps_tilde > 0) || !(eps_tilde < 1)) throw std::invalid_argument("solve_c: eps in (0,1)");
  int c = static_cast<int>(std::ceil(solve_c_real(eps_tilde)));
  c = std::max({c, cmin, 4});
  auto ok = [&](int cc) {
    return cc * std::pow(0.75, cc) <= eps_tilde;  // replayed contract
  };
  while (!ok(c)) ++c;
  return c;
}

namespace {
double queries_kinetic(Group g, int d, double Ld) {
  return (g == Group::SU2 ? 64.0 : 13872.0) * d * Ld;
}
double queries_magnetic(Group g, int d, double Ld) {
  double per = (g == Group::SU2) ? 1048576.0 : 1470021852266496.0;
  return per * d * (d - 1) / 2.0 * Ld;
}
}  // namespace

double epsilon_b(Group g, HamTerm term, double eps_total, double r, int d, int L) {
  if (g == Group::U1) throw std::invalid_argument("U(1) has no oracle arithmetic");
  double Ld = std::pow(double(L), d);
  if (term == HamTerm::Kinetic) return eps_total / (12.0 * r * queries_kinetic(g, d, Ld));
  return eps_total / (12.0 * r * queries_magnetic(g, d, Ld));
}

double epsilon_tilde(Group g, HamTerm term, double eps_total, double r, int d, int L, int eta,
                     int b) {
  (void)b;
  if (g == Group::U1) throw std::invalid_argument("U(1) has no oracle arithmetic");
  double Ld = std::pow(double(L), d);
  if (g == Group::SU2) {
    if (term == HamTerm::Kinetic) {
      double den = 12.0 * r * 64.0 * d * Ld;
      return eps_total / den * std::pow(0.75, 2 * std::log2(8.0 * den / eps_total) + 8 * eta + 12) *
             36.0 / 44.0;
    }
    double den = 6.0 * r * 1048576.0 * d * (d - 1) * Ld;
    return eps_total / den *
           std::pow(0.75, 2 * std::log2(8.0 * den / eps_total) + 16 * eta + 48) * 128.0 / 137.0;
  }
  if (term == HamTerm::Kinetic) {
    double den = 12.0 * r * 13872.0 * d * Ld;
    return eps_total / den *
           std::pow(0.75, 2 * std::log2(8.0 * den / eps_total) + 16 * eta + 72) * 176.0 / 186.0;
  }
  double den = 6.0 * r * 1470021852266496.0 * d * (d - 1) * Ld;
  return eps_total / den *
         std::pow(0.75, 2 * std::log2(8.0 * den / eps_total) + 64 * eta + 288) * 704.0 / 716.0;
}

int c_floor(Group g, HamTerm term, int eta, int b) {
  if (g == Group::SU2)
    return term == HamTerm::Kinetic ? 2 * b + 8 * eta + 12 : 2 * b + 16 * eta + 48;
  return term == HamTerm::Kinetic ? 2 * b + 16 * eta + 72 : 2 * b + 64 * eta + 288;
}

}  // namespace lgt
