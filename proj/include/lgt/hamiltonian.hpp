#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lgt/lattice.hpp"
#include "lgt/linkops.hpp"

namespace lgt {

using i64 = std::int64_t;

// Tensor-factor bookkeeping for a full lattice Hilbert space: one factor of
// dimension `link_dim` per link (most-significant first, in link order) and
// one qubit per fermion mode (least-significant bits, in JW-mode order).
struct HilbertLayout {
  Group group = Group::U1;
  LinkBasis basis_kind = LinkBasis::Encoded;
  int n_links = 0;
  int link_dim = 1;
  int n_modes = 0;
  int colors = 1;
  i64 dim = 1;

  static HilbertLayout make(Group g, const Lattice& lat, LinkBasis kind, int link_dim);

  i64 fermion_mask(i64 idx) const { return idx & ((i64(1) << n_modes) - 1); }
  i64 link_part(i64 idx) const { return idx >> n_modes; }
  int link_value(i64 idx, int link) const;
  i64 with_link_value(i64 idx, int link, int value) const;
};

// Hermitian operator split into an exact diagonal and the strictly-upper
// off-diagonal entries (i < j); the lower triangle is implied.
struct HermitianOp {
  i64 dim = 0;
  std::vector<double> diag;              // empty means zero diagonal
  std::vector<std::int32_t> oi, oj;      // upper-triangle coordinates, i < j
  std::vector<double> ov;

  bool diag_only() const { return oi.empty(); }
  void add_diag(i64 n) { if (diag.empty()) diag.assign(static_cast<size_t>(n), 0.0); }
  void add_entry(i64 i, i64 j, double v);
  i64 nnz_off() const { return static_cast<i64>(oi.size()); }

  SpMat to_sparse() const;   // full (both triangles), small dims only
  Mat to_dense() const;
  double norm_inf_bound() const;  // max row 1-norm, cheap upper bound on ||.||
  void compress();                // merge duplicate coordinates
};

struct SimParams {
  double g = 1.0, a = 1.0, m = 1.0;
  int Lambda = 1;
};

// Per-link operator context reused by the builders.
struct LinkSpace {
  Group group;
  LinkBasis kind;
  int Lambda;
  int dim;
  std::vector<SpMat> u;      // U_{alpha beta}, row-major in (alpha,beta); U(1): size 1
  SpMat e2;                  // electric diagonal (E^2 eigenvalues)
  int colors;
  std::optional<SU2LinkBasis> su2;
  std::optional<SU3LinkBasis> su3;

  static LinkSpace make(Group g, int Lambda, LinkBasis kind);
  const SpMat& U(int alpha, int beta) const { return u[(alpha - 1) * colors + (beta - 1)]; }
};

HermitianOp build_mass(const Lattice& lat, const HilbertLayout& hl, Group group, double m);
HermitianOp build_electric(const Lattice& lat, const HilbertLayout& hl, const LinkSpace& ls,
                           double g, double a);
HermitianOp build_kinetic(const Lattice& lat, const HilbertLayout& hl, const LinkSpace& ls,
                          double a);
HermitianOp build_magnetic(const Lattice& lat, const HilbertLayout& hl, const LinkSpace& ls,
                           double g, double a);

// U(1) Gauss operator G(n) (diagonal) for every site.
std::vector<std::vector<double>> build_gauss_u1(const Lattice& lat, const HilbertLayout& hl,
                                                const LinkSpace& ls);

// One hopping term (1/2a) U_{ab}(link) (psi^dag_a(n) psi_b(n+l) direction) + h.c.
// exposed for structural tests.
HermitianOp kinetic_link_term(const Lattice& lat, const HilbertLayout& hl, const LinkSpace& ls,
                              int link, int alpha, int beta, double a);

// Matrix-free application of the color-traced single-plaquette operator
// sum_{abgd} U U U^dag U^dag + h.c. on a 4-link space (norm checks).
struct PlaquetteApply {
  const LinkSpace& ls;
  i64 dim;  // link_dim^4
  explicit PlaquetteApply(const LinkSpace& l);
  void apply(const std::vector<std::complex<double>>& in,
             std::vector<std::complex<double>>& out) const;
  double norm_estimate(int iters, unsigned seed) const;
};

}  // namespace lgt
