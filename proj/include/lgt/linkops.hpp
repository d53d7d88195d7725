#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "lgt/rational.hpp"

namespace lgt {

using SpMat = Eigen::SparseMatrix<double>;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

enum class Group { U1, SU2, SU3 };
enum class LinkBasis { Encoded, Physical };

std::string group_name(Group g);

// Per-link operator matrices in a fixed basis. Diagonals are stored as
// sparse matrices like everything else; all entries are real.
struct LinkOperatorSet {
  Group group;
  LinkBasis basis;
  int dim = 0;
  std::map<std::string, SpMat> ops;

  const SpMat& op(const std::string& name) const { return ops.at(name); }
};

// ---------------------------------------------------------------- U(1) ----

// Basis |j>, j in [0, 2*Lambda), E = j - Lambda. U is the cyclic raiser
// with the wrap |Lambda-1> -> |-Lambda>.
LinkOperatorSet u1_ops(int Lambda);

// ---------------------------------------------------------------- SU(2) ---

// Encoded integers: j in [0, 2^eta), m in [0, 2^{eta+1}) with
// eta = ceil(log2(2*Lambda+1)); physical j/2, m/2 - Lambda.
struct SU2LinkBasis {
  int Lambda = 1;
  int eta = 1;
  LinkBasis kind = LinkBasis::Physical;
  // state list: encoded (j, mL, mR); for Encoded this is the full register
  // product, for Physical only |m - 2L| <= j with m = j (mod 2).
  std::vector<std::array<int, 3>> states;
  std::map<std::array<int, 3>, int> index;

  int dim() const { return static_cast<int>(states.size()); }
  int find(const std::array<int, 3>& s) const {
    auto it = index.find(s);
    return it == index.end() ? -1 : it->second;
  }
};

SU2LinkBasis su2_basis(int Lambda, LinkBasis kind);

// Table CG_SU2 entry evaluated at encoded (j, m); 0 on negative radicand.
double su2_cg(int alpha, int beta, int j, int m, int Lambda);

// Closed-form f_{alpha beta}(j, dj, mL, mR); 0 outside the physical range.
double su2_f(int alpha, int beta, int j, int dj, int mL, int mR, int Lambda);

// U_{alpha beta} assembled from ladders, CG diagonals and normalization.
SpMat su2_u_op(int alpha, int beta, int Lambda, const SU2LinkBasis& basis);
// Independent path: same operator with every element from su2_f directly.
SpMat su2_u_op_from_f(int alpha, int beta, int Lambda, const SU2LinkBasis& basis);

// ---------------------------------------------------------------- SU(3) ---

// Encoded integers per subregister: p,q in [0,Lambda], T in [0,2Lambda],
// Tz in [0,4Lambda], Y in [0,6Lambda] (physical T/2, Tz/2-Lambda, Y/3-Lambda).
struct SU3State {
  std::array<int, 8> v{};  // p, q, TL, TzL, YL, TR, TzR, YR
  bool operator<(const SU3State& o) const { return v < o.v; }
  bool operator==(const SU3State& o) const { return v == o.v; }
};

struct SU3LinkBasis {
  int Lambda = 1;
  int eta = 1;
  LinkBasis kind = LinkBasis::Physical;
  std::vector<SU3State> states;
  std::map<SU3State, int> index;

  int dim() const { return static_cast<int>(states.size()); }
  int find(const SU3State& s) const {
    auto it = index.find(s);
    return it == index.end() ? -1 : it->second;
  }
};

Rat su3_casimir(int p, int q);          // [p^2+q^2+pq+3(p+q)]/3
long long su3_dim(int p, int q);        // (1+p)(1+q)(2+p+q)/2

// Isoscalar factor I_{k gamma} (Table iso) at encoded (p,q,T,Y); signed.
double su3_isoscalar(int k, int gamma, int p, int q, int T, int Y, int Lambda);

// Physical-subspace enumeration: SU(2) direct, SU(3) by reachability
// closure of |0> under all U_{alpha beta} and adjoints; throws if the
// closure count disagrees with sum dim(p,q)^2.
SU3LinkBasis su3_basis(int Lambda, LinkBasis kind);

SpMat su3_u_op(int alpha, int beta, int Lambda, const SU3LinkBasis& basis);

// Electric diagonals (Casimir eigenvalues in the chosen basis).
SpMat su2_e2_op(const SU2LinkBasis& basis);
SpMat su3_e2_op(const SU3LinkBasis& basis);

// Triplet text dump "row col re im" (one line per nonzero), for diffing.
void dump_operator(std::ostream& os, const SpMat& m);

}  // namespace lgt
