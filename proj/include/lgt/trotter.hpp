#pragma once

#include <string>
#include <vector>

#include "lgt/components.hpp"
#include "lgt/fragments.hpp"

namespace lgt {

struct RhoItem {
  std::string key;    // commutator family of the printed summand
  double value = 0;   // contribution to rho (>= 0 after structural zeroing)
  bool clamped = false;
};

struct RhoBound {
  Group group = Group::U1;
  double total = 0;
  std::vector<RhoItem> items;
};

// Second-order product-formula commutator-bound coefficients, itemized per
// printed summand. Each evaluator cross-checks an independent monolithic
// transcription of the same closed form and throws on disagreement.
RhoBound rho_u1(int d, int L, int Lambda, double g, double a, double m);
RhoBound rho_su2(int d, int L, int Lambda, double g, double a, double m);
RhoBound rho_su3(int d, int L, int Lambda, double g, double a, double m);

// Monolithic second transcriptions (exposed for the agreement sweeps).
double rho_u1_collected(int d, int L, int Lambda, double g, double a, double m);
double rho_su2_collected(int d, int L, int Lambda, double g, double a, double m);
double rho_su3_collected(int d, int L, int Lambda, double g, double a, double m);

// r = ceil(T^{3/2} sqrt(k rho / eps)), k = 2 for U(1), 3 for SU(2)/SU(3)
// (the even error-budget split); clamped to >= 1. Returned as a double
// because realistic step counts exceed 2^53.
double trotter_steps(double T, double rho, double eps_total, Group group);

// Dense U2(t) for desk-size instances.
CMat product_formula_step(const TermSequence& seq, double t);

// Dense exp(-iHt) of a Hermitian operator (eigendecomposition).
CMat dense_exp(const HermitianOp& h, double t);

}  // namespace lgt
