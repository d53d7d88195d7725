#include "lgt/trotter.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace lgt {

namespace {

double ipow(double x, int e) {
  double r = 1;
  for (int i = 0; i < std::abs(e); ++i) r *= x;
  return e >= 0 ? r : 1.0 / r;
}

// magnetic-family items carry plaquette structure: zero at d = 1, and any
// residual negative value (the collected d^5 polynomials at small d) is
// clamped and flagged
void push_item(RhoBound& b, const std::string& key, double v, bool magnetic, int d) {
  RhoItem it;
  it.key = key;
  if (magnetic && d < 2) {
    it.value = 0;
  } else if (v < 0) {
    it.value = 0;
    it.clamped = true;
  } else {
    it.value = v;
  }
  b.items.push_back(it);
}

void finalize(RhoBound& b, double collected, const char* name) {
  b.total = 0;
  for (const auto& it : b.items) b.total += it.value;
  double ref = collected;
  double diff = std::abs(b.total - ref);
  if (diff > 1e-12 * std::max({std::abs(b.total), std::abs(ref), 1e-300}))
    throw std::logic_error(std::string(name) +
                           ": dual transcriptions disagree: " + std::to_string(b.total) +
                           " vs " + std::to_string(ref));
}

// Structural zero / clamp applied identically in the monolithic path so the
// two transcriptions are comparable term-for-term.
double mag(double v, int d) { return d < 2 ? 0.0 : std::max(v, 0.0); }
double pos(double v) { return std::max(v, 0.0); }

}  // namespace

// ---------------------------------------------------------------- U(1) ----

RhoBound rho_u1(int d, int L, int Lambda, double g, double a, double m) {
  if (L % 2 != 0) throw std::invalid_argument("rho_u1: even L required");
  if (Lambda < 1) throw std::invalid_argument("rho_u1: Lambda >= 1 required");
  RhoBound b;
  b.group = Group::U1;
  const double Ld = ipow(L, d);
  const double Lm1 = ipow(L, d - 1), Lm2 = ipow(L, d - 2), Lm3 = ipow(L, d - 3);
  const double dd = d;

  // 1/12 bracket
  push_item(b, "C1,2 mass-kinetic", dd * Ld * 4.0 * m * m / a / 12, false, d);
  push_item(b, "C1,4 electric-kinetic",
            dd * Ld * ipow(g, 4) / (4 * ipow(a, 2 * d - 3)) * (4.0 * Lambda * Lambda - 1) / 12,
            false, d);
  push_item(b, "C1,5 electric-magnetic",
            2 * Ld * dd * (dd - 1) * g * g * (2.0 * Lambda - 1) * (2.0 * Lambda - 1) /
                ipow(a, d) / 12,
            true, d);
  push_item(b, "C1,6 kinetic-magnetic",
            4 * dd * (dd - 1) * Ld / (ipow(a, 6 - d) * g * g) / 12, true, d);
  push_item(b, "C1,7 kinetic-kinetic",
            ((8 * dd * dd - 3 * dd) * Ld + (16 * dd * dd - 8 * dd) * Lm1) /
                (2 * a * a * a) / 12,
            false, d);

  // 1/24 bracket
  push_item(b, "C2,1 mass-kinetic-electric",
            m * g * g / (2 * ipow(a, d - 1)) * (2.0 * Lambda - 1) * dd * Ld / 24, false, d);
  push_item(b, "C2,2 mass-kinetic-kinetic", m * Ld * (16 * dd * dd - 8 * dd) / (a * a) / 24,
            false, d);
  push_item(b, "C2,4 electric-kinetic-kinetic",
            (4 * dd * dd - 2 * dd) * Ld * g * g * (2.0 * Lambda + 1) / ipow(a, d) / 24, false,
            d);
  push_item(b, "C2,3 mass-kinetic-magnetic",
            m * Ld * 8 * dd * (dd - 1) / (g * g * ipow(a, 5 - d)) / 24, true, d);
  push_item(b, "C2,5 electric-kinetic-magnetic",
            2 * dd * (dd - 1) * Ld * (2.0 * Lambda + 1) / (a * a * a) / 24, true, d);
  push_item(b, "C2,6 electric-magnetic-kinetic",
            Ld * dd * (dd - 1) * (16.0 * Lambda - 8) / (a * a * a) / 24, true, d);
  push_item(b, "C2,7 electric-magnetic-magnetic",
            Ld * dd * (dd - 1) * (8 * dd - 11) * (4.0 * Lambda - 2) /
                (g * g * ipow(a, 6 - d)) / 24,
            true, d);
  push_item(b, "C2,8 kinetic^3 (L^d)",
            Ld / (a * a * a) * (32.0 / 3 * dd * dd * dd - 4 * dd * dd + 11.0 / 6 * dd) / 24,
            false, d);
  push_item(b, "C2,8 kinetic^3 (L^{d-1})",
            Lm1 / (a * a * a) * (160.0 / 3 * dd * dd * dd - 20 * dd * dd - 16.0 / 3 * dd) / 24,
            false, d);
  push_item(b, "C2,8 kinetic^3 (L^{d-2})", Lm2 / (a * a * a) * (2 * dd * dd - 2 * dd) / 24,
            false, d);
  push_item(b, "C2,8 kinetic^3 (L^{d-3})",
            2 * Lm3 / (3 * a * a * a) * (dd * dd * dd - 3 * dd * dd + 2 * dd) / 24, false, d);
  push_item(b, "C2,9 kinetic^2-magnetic (L^d)",
            Ld / (g * g * ipow(a, 6 - d)) * (48 * dd * dd * dd - 102 * dd * dd + 54 * dd) / 24,
            true, d);
  push_item(b, "C2,9 kinetic^2-magnetic (L^{d-1})",
            Lm1 / (g * g * ipow(a, 6 - d)) * (96 * dd * dd * dd - 232 * dd * dd + 136 * dd) /
                24,
            true, d);
  push_item(b, "C2,10 kinetic-magnetic-kinetic (L^d)",
            Ld / (g * g * ipow(a, 6 - d)) * (16 * dd * dd * dd - 10 * dd * dd - 6 * dd) / 24,
            true, d);
  push_item(b, "C2,10 kinetic-magnetic-kinetic (L^{d-1})",
            Lm1 / (g * g * ipow(a, 6 - d)) * (32 * dd * dd * dd - 56 * dd * dd + 24 * dd) / 24,
            true, d);
  push_item(b, "C2,11 kinetic-magnetic-magnetic",
            Ld * (224 * dd * dd * dd - 544 * dd * dd + 320 * dd) /
                (ipow(a, 9 - 2 * d) * ipow(g, 4)) / 24,
            true, d);
  push_item(b, "magnetic^3", Ld * dd * (dd - 1) / 2 * 8 / (ipow(a, 12 - 3 * d) * ipow(g, 6)),
            true, d);

  finalize(b, rho_u1_collected(d, L, Lambda, g, a, m), "rho_u1");
  return b;
}

double rho_u1_collected(int d, int L, int Lambda, double g, double a, double m) {
  const double Ld = std::pow(double(L), d);
  const double D = d, La = Lambda;
  const double a3 = a * a * a;
  double s12 = D * Ld * 4 * m * m / a +
               D * Ld * std::pow(g, 4) / (4 * std::pow(a, 2 * d - 3)) * (4 * La * La - 1) +
               mag(2 * Ld * D * (D - 1) * g * g * (2 * La - 1) * (2 * La - 1) / std::pow(a, d), d) +
               mag(4 * D * (D - 1) * Ld / (std::pow(a, 6 - d) * g * g), d) +
               ((8 * D * D - 3 * D) * Ld + (16 * D * D - 8 * D) * std::pow(double(L), d - 1)) /
                   (2 * a3);
  double s24 =
      m * g * g / (2 * std::pow(a, d - 1)) * (2 * La - 1) * D * Ld +
      m * Ld * (16 * D * D - 8 * D) / (a * a) +
      (4 * D * D - 2 * D) * Ld * g * g * (2 * La + 1) / std::pow(a, d) +
      mag(m * Ld * 8 * D * (D - 1) / (g * g * std::pow(a, 5 - d)), d) +
      mag(2 * D * (D - 1) * Ld * (2 * La + 1) / a3, d) +
      mag(Ld * D * (D - 1) * (16 * La - 8) / a3, d) +
      mag(Ld * D * (D - 1) * (8 * D - 11) * (4 * La - 2) / (g * g * std::pow(a, 6 - d)), d) +
      Ld / a3 * (32.0 / 3 * D * D * D - 4 * D * D + 11.0 / 6 * D) +
      std::pow(double(L), d - 1) / a3 * (160.0 / 3 * D * D * D - 20 * D * D - 16.0 / 3 * D) +
      std::pow(double(L), d - 2) / a3 * (2 * D * D - 2 * D) +
      2 * std::pow(double(L), d - 3) / (3 * a3) * (D * D * D - 3 * D * D + 2 * D) +
      mag(Ld / (g * g * std::pow(a, 6 - d)) * (48 * D * D * D - 102 * D * D + 54 * D), d) +
      mag(std::pow(double(L), d - 1) / (g * g * std::pow(a, 6 - d)) *
              (96 * D * D * D - 232 * D * D + 136 * D),
          d) +
      mag(Ld / (g * g * std::pow(a, 6 - d)) * (16 * D * D * D - 10 * D * D - 6 * D), d) +
      mag(std::pow(double(L), d - 1) / (g * g * std::pow(a, 6 - d)) *
              (32 * D * D * D - 56 * D * D + 24 * D),
          d) +
      mag(Ld * (224 * D * D * D - 544 * D * D + 320 * D) /
              (std::pow(a, 9 - 2 * d) * std::pow(g, 4)),
          d);
  double tail = mag(Ld * D * (D - 1) / 2 * 8 / (std::pow(a, 12 - 3 * d) * std::pow(g, 6)), d);
  return s12 / 12 + s24 / 24 + tail;
}

// ---------------------------------------------------------------- SU(2) ---

RhoBound rho_su2(int d, int L, int Lambda, double g, double a, double m) {
  if (L % 2 != 0) throw std::invalid_argument("rho_su2: even L required");
  if (Lambda < 1) throw std::invalid_argument("rho_su2: Lambda >= 1 required");
  RhoBound b;
  b.group = Group::SU2;
  const double Ld = ipow(L, d);
  const double D = d, La = Lambda;
  const double a3 = a * a * a;
  const double q43 = (4 * La + 3);

  push_item(b, "C1,2 mass-kinetic", 16 * D * Ld * m * m / a / 12, false, d);
  push_item(b, "C1,4 electric-kinetic",
            D * Ld * ipow(g, 4) * q43 * q43 / (32 * ipow(a, 2 * d - 3)) / 12, false, d);
  push_item(b, "C1,5 electric-magnetic",
            2 * Ld * D * (D - 1) * g * g * q43 * q43 / ipow(a, d) / 12, true, d);
  push_item(b, "C1,6 kinetic-magnetic", 8192 * D * (D - 1) * Ld / (ipow(a, 6 - d) * g * g) / 12,
            true, d);
  push_item(b, "C1,7 kinetic-kinetic", (2048 * D * D - 48 * D) * Ld / a3 / 12, false, d);
  push_item(b, "C1,8 magnetic-magnetic",
            Ld / (ipow(a, 12 - 3 * d) * ipow(g, 6)) *
                (134217728.0 * D * D * D - 301990160.0 * D * D + 167772432.0 * D) / 12,
            true, d);

  push_item(b, "C2,1 mass-kinetic-electric", m * D * Ld * g * g * q43 / ipow(a, d - 1) / 24,
            false, d);
  push_item(b, "C2,2 mass-kinetic-kinetic", (128 * D * D - 16 * D) * m * Ld / (a * a) / 24,
            false, d);
  push_item(b, "C2,3 mass-kinetic-magnetic",
            256 * m * Ld * (D * D - D) / (ipow(a, 5 - d) * g * g) / 24, true, d);
  push_item(b, "C2,4 electric-kinetic-kinetic", 8 * D * D * Ld * g * g * q43 / ipow(a, d) / 24,
            false, d);
  push_item(b, "C2,5 electric-kinetic-magnetic", 32 * D * (D - 1) * Ld * q43 / a3 / 24, true, d);
  push_item(b, "C2,6 electric-magnetic-kinetic", 128 * D * (D - 1) * Ld * q43 / a3 / 24, true,
            d);
  push_item(b, "C2,7 electric-magnetic-magnetic",
            Ld * q43 * (1024 * D * D * D - 2432 * D * D + 1408 * D) /
                (ipow(a, 6 - d) * g * g) / 24,
            true, d);
  push_item(b, "C2,8 kinetic^3",
            (131072.0 / 3 * D * D * D - 25728.0 * D * D + 52528.0 / 3 * D) * Ld / a3 / 24,
            false, d);
  push_item(b, "C2,9 kinetic^2-magnetic",
            Ld / (ipow(a, 6 - d) * g * g) *
                (81920.0 * D * D * D - 148992.0 * D * D + 67072.0 * D) / 24,
            true, d);
  push_item(b, "C2,10 kinetic-magnetic-kinetic",
            (32768.0 * D * D * D + 6656.0 * D * D - 39424.0 * D) * Ld /
                (ipow(a, 6 - d) * g * g) / 24,
            true, d);
  push_item(b, "C2,11 kinetic-magnetic-magnetic",
            Ld / (ipow(a, 9 - 2 * d) * ipow(g, 4)) *
                (1835008.0 * D * D * D - 4456448.0 * D * D + 2621440.0 * D) / 24,
            true, d);
  push_item(b, "C2,12 magnetic^3",
            (17179869184.0 / 5 * ipow(D, 5) - 17179869184.0 / 3 * ipow(D, 4) +
             49392123904.0 / 3 * ipow(D, 3) - 322659435248.0 / 3 * D * D +
             1207422766768.0 / 15 * D - 8589934592.0) *
                Ld / (ipow(a, 12 - 3 * d) * ipow(g, 6)) / 24,
            true, d);

  finalize(b, rho_su2_collected(d, L, Lambda, g, a, m), "rho_su2");
  return b;
}

double rho_su2_collected(int d, int L, int Lambda, double g, double a, double m) {
  const double Ld = std::pow(double(L), d);
  const double D = d, q = 4.0 * Lambda + 3;
  const double a3 = a * a * a;
  double s12 =
      16 * D * Ld * m * m / a + D * Ld * std::pow(g, 4) * q * q / (32 * std::pow(a, 2 * d - 3)) +
      mag(2 * Ld * D * (D - 1) * g * g * q * q / std::pow(a, d), d) +
      mag(8192 * D * (D - 1) * Ld / (std::pow(a, 6 - d) * g * g), d) +
      (2048 * D * D - 48 * D) * Ld / a3 +
      mag(Ld / (std::pow(a, 12 - 3 * d) * std::pow(g, 6)) *
              (134217728.0 * D * D * D - 301990160.0 * D * D + 167772432.0 * D),
          d);
  double s24 =
      m * D * Ld * g * g * q / std::pow(a, d - 1) + (128 * D * D - 16 * D) * m * Ld / (a * a) +
      mag(256 * m * Ld * (D * D - D) / (std::pow(a, 5 - d) * g * g), d) +
      8 * D * D * Ld * g * g * q / std::pow(a, d) + mag(32 * D * (D - 1) * Ld * q / a3, d) +
      mag(128 * D * (D - 1) * Ld * q / a3, d) +
      mag(Ld * q * (1024 * D * D * D - 2432 * D * D + 1408 * D) / (std::pow(a, 6 - d) * g * g),
          d) +
      (131072.0 / 3 * D * D * D - 25728.0 * D * D + 52528.0 / 3 * D) * Ld / a3 +
      mag(Ld / (std::pow(a, 6 - d) * g * g) *
              (81920.0 * D * D * D - 148992.0 * D * D + 67072.0 * D),
          d) +
      mag((32768.0 * D * D * D + 6656.0 * D * D - 39424.0 * D) * Ld /
              (std::pow(a, 6 - d) * g * g),
          d) +
      mag(Ld / (std::pow(a, 9 - 2 * d) * std::pow(g, 4)) *
              (1835008.0 * D * D * D - 4456448.0 * D * D + 2621440.0 * D),
          d) +
      mag((17179869184.0 / 5 * std::pow(D, 5) - 17179869184.0 / 3 * std::pow(D, 4) +
           49392123904.0 / 3 * std::pow(D, 3) - 322659435248.0 / 3 * D * D +
           1207422766768.0 / 15 * D - 8589934592.0) *
              Ld / (std::pow(a, 12 - 3 * d) * std::pow(g, 6)),
          d);
  return s12 / 12 + s24 / 24;
}

// ---------------------------------------------------------------- SU(3) ---

RhoBound rho_su3(int d, int L, int Lambda, double g, double a, double m) {
  if (L % 2 != 0) throw std::invalid_argument("rho_su3: even L required");
  if (Lambda < 1) throw std::invalid_argument("rho_su3: Lambda >= 1 required");
  RhoBound b;
  b.group = Group::SU3;
  const double Ld = ipow(L, d);
  const double D = d, q = 3.0 * Lambda + 4;
  const double a3 = a * a * a;

  push_item(b, "C1,2 mass-kinetic", 36 * D * Ld * m * m / a / 12, false, d);
  push_item(b, "C1,4 electric-kinetic",
            D * Ld * ipow(g, 4) * q * q / (4 * ipow(a, 2 * d - 3)) / 12, false, d);
  push_item(b, "C1,5 electric-magnetic",
            18 * Ld * (D * D - D) * g * g * q * q / ipow(a, d) / 12, true, d);
  push_item(b, "C1,6 kinetic-magnetic",
            Ld / (ipow(a, 6 - d) * g * g) * 8989056.0 * (D * D - D) / 12, true, d);
  push_item(b, "C1,7 kinetic-kinetic", (332928.0 * D * D + 832320.0 * D) * Ld / a3 / 12, false,
            d);
  push_item(b, "C1,8 magnetic-magnetic",
            Ld *
                (476287080134344704.0 * D * D * D - 1190717700335861760.0 * D * D +
                 714430620201517056.0 * D) /
                (ipow(a, 12 - 3 * d) * ipow(g, 6)) / 12,
            true, d);

  push_item(b, "C2,1 mass-kinetic-electric", 3 * m * D * Ld * g * g * q / ipow(a, d - 1) / 24,
            false, d);
  push_item(b, "C2,2 mass-kinetic-kinetic", (432 * D * D + 108 * D) * m * Ld / (a * a) / 24,
            false, d);
  push_item(b, "C2,3 mass-kinetic-magnetic",
            5832 * m * Ld * (D * D - D) / (ipow(a, 5 - d) * g * g) / 24, true, d);
  push_item(b, "C2,4 electric-kinetic-kinetic",
            (36 * D * D + 9 * D) * Ld * g * g * (4.0 * Lambda + 3) / ipow(a, d) / 24, false, d);
  push_item(b, "C2,5 electric-kinetic-magnetic",
            486 * D * (D - 1) * Ld * (4.0 * Lambda + 3) / a3 / 24, true, d);
  push_item(b, "C2,6 electric-magnetic-kinetic", 1944 * D * (D - 1) * Ld * q / a3 / 24, true,
            d);
  push_item(b, "C2,7 electric-magnetic-magnetic",
            (34992.0 * D * D * D - 83106.0 * D * D + 48114.0 * D) * Ld * q /
                (ipow(a, 6 - d) * g * g) / 24,
            true, d);
  push_item(b, "C2,8 kinetic^3",
            (143824896.0 * D * D * D - 170792064.0 * D * D + 85396032.0 * D) * Ld / a3 / 24,
            false, d);
  push_item(b, "C2,9 kinetic^2-magnetic",
            (125846784.0 * D * D * D - 197759232.0 * D * D + 71912448.0 * D) * Ld /
                (ipow(a, 6 - d) * g * g) / 24,
            true, d);
  push_item(b, "C2,10 kinetic-magnetic-kinetic",
            (53934336.0 * D * D * D + 44945280.0 * D * D - 98879616.0 * D) * Ld /
                (ipow(a, 6 - d) * g * g) / 24,
            true, d);
  push_item(b, "C2,11 kinetic-magnetic-magnetic",
            (10193589504.0 * D * D * D - 24755860224.0 * D * D + 14562270720.0 * D) * Ld /
                (ipow(a, 9 - 2 * d) * ipow(g, 4)) / 24,
            true, d);
  push_item(b, "C2,12 magnetic^3",
            (308634027927055368192.0 / 5 * ipow(D, 5) - 102878009309018456064.0 * ipow(D, 4) +
             295774276763428061184.0 * ipow(D, 3) - 1932177612335002877952.0 * D * D +
             7230395091749453365248.0 / 5 * D - 154317013963527684096.0) *
                Ld / (ipow(a, 12 - 3 * d) * ipow(g, 6)) / 24,
            true, d);

  finalize(b, rho_su3_collected(d, L, Lambda, g, a, m), "rho_su3");
  return b;
}

double rho_su3_collected(int d, int L, int Lambda, double g, double a, double m) {
  const double Ld = std::pow(double(L), d);
  const double D = d, q = 3.0 * Lambda + 4;
  const double a3 = a * a * a;
  double s12 =
      36 * D * Ld * m * m / a + D * Ld * std::pow(g, 4) * q * q / (4 * std::pow(a, 2 * d - 3)) +
      mag(18 * Ld * (D * D - D) * g * g * q * q / std::pow(a, d), d) +
      mag(Ld / (std::pow(a, 6 - d) * g * g) * 8989056.0 * (D * D - D), d) +
      (332928.0 * D * D + 832320.0 * D) * Ld / a3 +
      mag(Ld *
              (476287080134344704.0 * D * D * D - 1190717700335861760.0 * D * D +
               714430620201517056.0 * D) /
              (std::pow(a, 12 - 3 * d) * std::pow(g, 6)),
          d);
  double s24 =
      3 * m * D * Ld * g * g * q / std::pow(a, d - 1) +
      (432 * D * D + 108 * D) * m * Ld / (a * a) +
      mag(5832 * m * Ld * (D * D - D) / (std::pow(a, 5 - d) * g * g), d) +
      (36 * D * D + 9 * D) * Ld * g * g * (4.0 * Lambda + 3) / std::pow(a, d) +
      mag(486 * D * (D - 1) * Ld * (4.0 * Lambda + 3) / a3, d) +
      mag(1944 * D * (D - 1) * Ld * q / a3, d) +
      mag((34992.0 * D * D * D - 83106.0 * D * D + 48114.0 * D) * Ld * q /
              (std::pow(a, 6 - d) * g * g),
          d) +
      (143824896.0 * D * D * D - 170792064.0 * D * D + 85396032.0 * D) * Ld / a3 +
      mag((125846784.0 * D * D * D - 197759232.0 * D * D + 71912448.0 * D) * Ld /
              (std::pow(a, 6 - d) * g * g),
          d) +
      mag((53934336.0 * D * D * D + 44945280.0 * D * D - 98879616.0 * D) * Ld /
              (std::pow(a, 6 - d) * g * g),
          d) +
      mag((10193589504.0 * D * D * D - 24755860224.0 * D * D + 14562270720.0 * D) * Ld /
              (std::pow(a, 9 - 2 * d) * std::pow(g, 4)),
          d) +
      mag((308634027927055368192.0 / 5 * std::pow(D, 5) -
           102878009309018456064.0 * std::pow(D, 4) + 295774276763428061184.0 * std::pow(D, 3) -
           1932177612335002877952.0 * D * D + 7230395091749453365248.0 / 5 * D -
           154317013963527684096.0) *
              Ld / (std::pow(a, 12 - 3 * d) * std::pow(g, 6)),
          d);
  return s12 / 12 + s24 / 24;
}

double trotter_steps(double T, double rho, double eps_total, Group group) {
  if (!(T > 0) || !(eps_total > 0)) throw std::invalid_argument("trotter_steps: T, eps > 0");
  if (rho < 0) throw std::invalid_argument("trotter_steps: rho >= 0");
  double k = (group == Group::U1) ? 2.0 : 3.0;
  double r = std::ceil(std::pow(T, 1.5) * std::sqrt(k) * std::sqrt(rho) / std::sqrt(eps_total));
  return std::max(1.0, r);
}

CMat dense_exp(const HermitianOp& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h.to_dense());
  CMat ph = (std::complex<double>(0, -t) * es.eigenvalues().cast<std::complex<double>>().array())
                .exp()
                .matrix()
                .asDiagonal();
  return es.eigenvectors().cast<std::complex<double>>() * ph *
         es.eigenvectors().transpose().cast<std::complex<double>>();
}

CMat product_formula_step(const TermSequence& seq, double t) {
  if (seq.fragments.empty()) throw std::invalid_argument("product_formula_step: empty sequence");
  const i64 dim = seq.fragments.front().op.dim;
  CMat u = CMat::Identity(dim, dim);
  auto sweep = [&](int j) { u = dense_exp(seq.fragments[static_cast<size_t>(j)].op, t / 2) * u; };
  for (int j = 0; j < static_cast<int>(seq.fragments.size()); ++j) sweep(j);
  for (int j = static_cast<int>(seq.fragments.size()) - 1; j >= 0; --j) sweep(j);
  return u;
}

}  // namespace lgt
