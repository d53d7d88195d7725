#include "lgt/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace lgt {

HilbertLayout HilbertLayout::make(Group g, const Lattice& lat, LinkBasis kind, int link_dim) {
  HilbertLayout hl;
  hl.group = g;
  hl.basis_kind = kind;
  hl.n_links = lat.n_links();
  hl.link_dim = link_dim;
  hl.colors = (g == Group::U1) ? 1 : (g == Group::SU2 ? 2 : 3);
  hl.n_modes = lat.n_sites() * hl.colors;
  double logdim = hl.n_links * std::log2(double(link_dim)) + hl.n_modes;
  if (logdim > 62) throw std::invalid_argument("HilbertLayout: dimension exceeds 2^62");
  hl.dim = 1;
  for (int i = 0; i < hl.n_links; ++i) hl.dim *= link_dim;
  hl.dim <<= hl.n_modes;
  return hl;
}

int HilbertLayout::link_value(i64 idx, int link) const {
  i64 lp = link_part(idx);
  for (int k = n_links - 1; k > link; --k) lp /= link_dim;
  return static_cast<int>(lp % link_dim);
}

i64 HilbertLayout::with_link_value(i64 idx, int link, int value) const {
  i64 stride = 1;
  for (int k = n_links - 1; k > link; --k) stride *= link_dim;
  stride <<= n_modes;
  int old = link_value(idx, link);
  return idx + (i64(value) - old) * stride;
}

void HermitianOp::add_entry(i64 i, i64 j, double v) {
  if (v == 0.0) return;
  if (i >= INT32_MAX || j >= INT32_MAX)
    throw std::length_error("HermitianOp: dimension beyond 32-bit index range");
  if (i == j) {
    add_diag(dim);
    diag[static_cast<size_t>(i)] += v;
    return;
  }
  if (i > j) std::swap(i, j);
  oi.push_back(static_cast<std::int32_t>(i));
  oj.push_back(static_cast<std::int32_t>(j));
  ov.push_back(v);
}

void HermitianOp::compress() {
  if (oi.empty()) return;
  std::vector<size_t> order(oi.size());
  std::iota(order.begin(), order.end(), size_t(0));
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return oi[a] != oi[b] ? oi[a] < oi[b] : oj[a] < oj[b];
  });
  std::vector<std::int32_t> ni, nj;
  std::vector<double> nv;
  for (size_t k : order) {
    if (!ni.empty() && ni.back() == oi[k] && nj.back() == oj[k]) {
      nv.back() += ov[k];
    } else {
      ni.push_back(oi[k]);
      nj.push_back(oj[k]);
      nv.push_back(ov[k]);
    }
  }
  // drop exact zeros produced by cancellation
  oi.clear(); oj.clear(); ov.clear();
  for (size_t k = 0; k < nv.size(); ++k) {
    if (nv[k] != 0.0) { oi.push_back(ni[k]); oj.push_back(nj[k]); ov.push_back(nv[k]); }
  }
}

SpMat HermitianOp::to_sparse() const {
  std::vector<Eigen::Triplet<double>> ts;
  ts.reserve(ov.size() * 2 + diag.size());
  for (size_t k = 0; k < ov.size(); ++k) {
    ts.emplace_back(oi[k], oj[k], ov[k]);
    ts.emplace_back(oj[k], oi[k], ov[k]);
  }
  for (size_t i = 0; i < diag.size(); ++i)
    if (diag[i] != 0.0) ts.emplace_back(int(i), int(i), diag[i]);
  SpMat m(static_cast<int>(dim), static_cast<int>(dim));
  m.setFromTriplets(ts.begin(), ts.end());
  m.makeCompressed();
  return m;
}

Mat HermitianOp::to_dense() const { return Mat(to_sparse()); }

double HermitianOp::norm_inf_bound() const {
  std::vector<double> row(static_cast<size_t>(dim), 0.0);
  for (size_t k = 0; k < ov.size(); ++k) {
    row[oi[k]] += std::abs(ov[k]);
    row[oj[k]] += std::abs(ov[k]);
  }
  for (size_t i = 0; i < diag.size(); ++i) row[i] += std::abs(diag[i]);
  double m = 0;
  for (double r : row) m = std::max(m, r);
  return m;
}

LinkSpace LinkSpace::make(Group g, int Lambda, LinkBasis kind) {
  LinkSpace ls{g, kind, Lambda, 0, {}, {}, 1, std::nullopt, std::nullopt};
  if (g == Group::U1) {
    auto set = u1_ops(Lambda);
    ls.dim = set.dim;
    ls.colors = 1;
    ls.u = {set.op("U")};
    SpMat e = set.op("E");
    ls.e2 = SpMat(e * e);
  } else if (g == Group::SU2) {
    ls.su2 = su2_basis(Lambda, kind);
    ls.dim = ls.su2->dim();
    ls.colors = 2;
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b) ls.u.push_back(su2_u_op(a, b, Lambda, *ls.su2));
    ls.e2 = su2_e2_op(*ls.su2);
  } else {
    ls.su3 = su3_basis(Lambda, kind);
    ls.dim = ls.su3->dim();
    ls.colors = 3;
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b) ls.u.push_back(su3_u_op(a, b, Lambda, *ls.su3));
    ls.e2 = su3_e2_op(*ls.su3);
  }
  return ls;
}

namespace {

// Staggered-fermion Z coefficient per group convention: U(1) uses
// occupied = |1> (D^M = -m/2 (-1)^n Z), SU(2)/SU(3) use occupied = |0>
// (D^M = +m/2 (-1)^n sum_c Z_c).
double mass_z_sign(Group g) { return g == Group::U1 ? -1.0 : +1.0; }

int jw_sign(i64 fmask, int below_mode) {
  i64 mask = (i64(1) << below_mode) - 1;
  return (std::popcount(static_cast<unsigned long long>(fmask & mask)) & 1) ? -1 : 1;
}

}  // namespace

HermitianOp build_mass(const Lattice& lat, const HilbertLayout& hl, Group group, double m) {
  HermitianOp h;
  h.dim = hl.dim;
  h.add_diag(hl.dim);
  JWOrdering jw = lat.jw_ordering(hl.colors);
  const double zs = mass_z_sign(group);
  // accumulate per-fermion-config value once, then broadcast over link part
  i64 nf = i64(1) << hl.n_modes;
  std::vector<double> fval(static_cast<size_t>(nf), 0.0);
  for (i64 f = 0; f < nf; ++f) {
    double v = 0;
    for (const Site& s : lat.sites) {
      double stag = (s.parity == 0) ? 1.0 : -1.0;
      for (int c = 0; c < hl.colors; ++c) {
        int mode = jw.mode(s.index, c);
        double z = ((f >> mode) & 1) ? -1.0 : 1.0;
        v += zs * (m / 2.0) * stag * z;
      }
    }
    fval[static_cast<size_t>(f)] = v;
  }
  for (i64 idx = 0; idx < hl.dim; ++idx) h.diag[static_cast<size_t>(idx)] = fval[hl.fermion_mask(idx)];
  return h;
}

HermitianOp build_electric(const Lattice& lat, const HilbertLayout& hl, const LinkSpace& ls,
                           double g, double a) {
  HermitianOp h;
  h.dim = hl.dim;
  h.add_diag(hl.dim);
  const int d = lat.spec.d;
  const double coef = g * g / (2.0 * std::pow(a, d - 2));
  std::vector<double> e2(ls.dim);
  for (int k = 0; k < ls.dim; ++k) e2[k] = ls.e2.coeff(k, k);
  for (i64 idx = 0; idx < hl.dim; ++idx) {
    double v = 0;
    for (int l = 0; l < hl.n_links; ++l) v += e2[hl.link_value(idx, l)];
    h.diag[static_cast<size_t>(idx)] = coef * v;
  }
  return h;
}

HermitianOp kinetic_link_term(const Lattice& lat, const HilbertLayout& hl, const LinkSpace& ls,
                              int link, int alpha, int beta, double a) {
  HermitianOp h;
  h.dim = hl.dim;
  JWOrdering jw = lat.jw_ordering(hl.colors);
  const Link& lk = lat.links[link];
  int head = lat.neighbor(lk.origin, lk.direction);
  int mode_a = jw.mode(lk.origin, alpha - 1);  // created
  int mode_b = jw.mode(head, beta - 1);        // annihilated
  // occupied-qubit value differs per group convention
  const int occ_bit = (hl.group == Group::U1) ? 1 : 0;
  const SpMat& U = ls.U(alpha, beta);
  const double coef = 1.0 / (2.0 * a);

  i64 nf = i64(1) << hl.n_modes;
  // precompute fermionic hop: f -> (f', sign) for psi^dag_a psi_b
  std::vector<std::pair<i64, int>> hop(static_cast<size_t>(nf), {-1, 0});
  for (i64 f = 0; f < nf; ++f) {
    int bb = static_cast<int>((f >> mode_b) & 1);
    if (bb != occ_bit) continue;  // nothing to annihilate
    int s1 = jw_sign(f, mode_b);
    i64 f1 = f ^ (i64(1) << mode_b);
    int ba = static_cast<int>((f1 >> mode_a) & 1);
    if (ba == occ_bit) continue;  // already occupied
    int s2 = jw_sign(f1, mode_a);
    i64 f2 = f1 ^ (i64(1) << mode_a);
    hop[static_cast<size_t>(f)] = {f2, s1 * s2};
  }

  i64 n_linkcfg = hl.dim >> hl.n_modes;
  for (i64 lp = 0; lp < n_linkcfg; ++lp) {
    i64 base = lp << hl.n_modes;
    int lv = hl.link_value(base, link);
    for (SpMat::InnerIterator it(U, lv); it; ++it) {
      i64 tgt_base = hl.with_link_value(base, link, static_cast<int>(it.row()));
      for (i64 f = 0; f < nf; ++f) {
        auto [f2, sgn] = hop[static_cast<size_t>(f)];
        if (sgn == 0) continue;
        h.add_entry(base | f, tgt_base | f2, coef * it.value() * sgn);
      }
    }
  }
  h.compress();
  return h;
}

HermitianOp build_kinetic(const Lattice& lat, const HilbertLayout& hl, const LinkSpace& ls,
                          double a) {
  HermitianOp h;
  h.dim = hl.dim;
  for (int link = 0; link < hl.n_links; ++link) {
    for (int al = 1; al <= ls.colors; ++al)
      for (int be = 1; be <= ls.colors; ++be) {
        HermitianOp t = kinetic_link_term(lat, hl, ls, link, al, be, a);
        h.oi.insert(h.oi.end(), t.oi.begin(), t.oi.end());
        h.oj.insert(h.oj.end(), t.oj.begin(), t.oj.end());
        h.ov.insert(h.ov.end(), t.ov.begin(), t.ov.end());
      }
  }
  h.compress();
  return h;
}

HermitianOp build_magnetic(const Lattice& lat, const HilbertLayout& hl, const LinkSpace& ls,
                           double g, double a) {
  HermitianOp h;
  h.dim = hl.dim;
  const int d = lat.spec.d;
  if (d < 2) return h;  // no plaquettes
  const double coef = -1.0 / (2.0 * std::pow(a, 4 - d) * g * g);
  const int nc = ls.colors;
  i64 nf = i64(1) << hl.n_modes;

  for (const Plaquette& p : lat.plaquettes) {
    // color-traced product sum_{a,b,g,dl} U_ab(l1) U_bg(l2) U_gd(l3)^dag(U_dg)
    // accumulated on the 4-link subspace, then lifted
    for (int al = 1; al <= nc; ++al)
      for (int be = 1; be <= nc; ++be)
        for (int ga = 1; ga <= nc; ++ga)
          for (int de = 1; de <= nc; ++de) {
            const SpMat& U1 = ls.U(al, be);
            const SpMat& U2 = ls.U(be, ga);
            const SpMat& U3 = ls.U(de, ga);  // applied as adjoint: [U^dag]_{gd} = (U_dg)^dag
            const SpMat& U4 = ls.U(al, de);  // [U^dag]_{da} = (U_ad)^dag
            // iterate sources on the 4 links jointly via their sparse columns
            i64 n_linkcfg = hl.dim >> hl.n_modes;
            for (i64 lp = 0; lp < n_linkcfg; ++lp) {
              i64 base = lp << hl.n_modes;
              int v1 = hl.link_value(base, p.links[0]);
              int v2 = hl.link_value(base, p.links[1]);
              int v3 = hl.link_value(base, p.links[2]);
              int v4 = hl.link_value(base, p.links[3]);
              for (SpMat::InnerIterator i1(U1, v1); i1; ++i1)
                for (SpMat::InnerIterator i2(U2, v2); i2; ++i2) {
                  // adjoint factors: need <w3|U3^dag|v3> = conj(U3(v3,w3)) -> iterate row v3
                  for (int w3 = 0; w3 < ls.dim; ++w3) {
                    double a3 = U3.coeff(v3, w3);
                    if (a3 == 0.0) continue;
                    for (int w4 = 0; w4 < ls.dim; ++w4) {
                      double a4 = U4.coeff(v4, w4);
                      if (a4 == 0.0) continue;
                      i64 t = base;
                      t = hl.with_link_value(t, p.links[0], static_cast<int>(i1.row()));
                      t = hl.with_link_value(t, p.links[1], static_cast<int>(i2.row()));
                      t = hl.with_link_value(t, p.links[2], w3);
                      t = hl.with_link_value(t, p.links[3], w4);
                      double val = coef * i1.value() * i2.value() * a3 * a4;
                      if (val == 0.0) continue;
                      for (i64 f = 0; f < nf; ++f) {
                        i64 s = base | f, tt = t | f;
                        if (s == tt) { h.add_entry(s, s, 2 * val); }
                        else if (s < tt) h.add_entry(s, tt, val);
                        else h.add_entry(tt, s, val);  // + h.c. folds onto upper
                      }
                    }
                  }
                }
            }
          }
  }
  h.compress();
  return h;
}

std::vector<std::vector<double>> build_gauss_u1(const Lattice& lat, const HilbertLayout& hl,
                                                const LinkSpace& ls) {
  if (hl.group != Group::U1) throw std::invalid_argument("build_gauss_u1: U(1) only");
  JWOrdering jw = lat.jw_ordering(1);
  std::vector<double> evals(ls.dim);
  for (int k = 0; k < ls.dim; ++k) evals[k] = k - ls.Lambda;
  std::vector<std::vector<double>> out(lat.n_sites());
  for (const Site& s : lat.sites) {
    std::vector<double>& gdiag = out[s.index];
    gdiag.assign(static_cast<size_t>(hl.dim), 0.0);
    for (i64 idx = 0; idx < hl.dim; ++idx) {
      double v = 0;
      for (int k = 1; k <= lat.spec.d; ++k) {
        int lout = lat.link_index(s.index, k);
        std::vector<int> c = s.coords;
        c[k - 1] = (c[k - 1] + lat.spec.L - 1) % lat.spec.L;
        int lin = lat.link_index(lat.site_index(c), k);
        v += evals[hl.link_value(idx, lout)] - evals[hl.link_value(idx, lin)];
      }
      int mode = jw.mode(s.index, 0);
      double occ = static_cast<double>((idx >> mode) & 1);  // occupied = |1>
      double q = occ - (s.parity == 0 ? 0.0 : 1.0);
      gdiag[static_cast<size_t>(idx)] = v - q;
    }
  }
  return out;
}

PlaquetteApply::PlaquetteApply(const LinkSpace& l) : ls(l) {
  dim = 1;
  for (int i = 0; i < 4; ++i) dim *= ls.dim;
}

namespace {

// y += (op on factor `slot` of 4) x, adjoint optionally; factor 0 is the
// most significant.
void lift_apply(const SpMat& op, bool adjoint, int slot, int D,
                const std::vector<std::complex<double>>& x,
                std::vector<std::complex<double>>& y) {
  i64 hi_stride = 1;
  for (int k = 0; k < slot; ++k) hi_stride *= D;
  i64 lo = 1;
  for (int k = slot + 1; k < 4; ++k) lo *= D;
  i64 n_hi = hi_stride;  // number of higher-factor configurations
  (void)n_hi;
  i64 total = 1;
  for (int k = 0; k < 4; ++k) total *= D;
  i64 block = lo * D;
  for (i64 b = 0; b < total; b += block) {
    for (int col = 0; col < D; ++col) {
      for (SpMat::InnerIterator it(op, col); it; ++it) {
        int r = static_cast<int>(it.row());
        double v = it.value();
        i64 src_off = b + i64(adjoint ? r : col) * lo;
        i64 tgt_off = b + i64(adjoint ? col : r) * lo;
        for (i64 k = 0; k < lo; ++k)
          y[static_cast<size_t>(tgt_off + k)] += v * x[static_cast<size_t>(src_off + k)];
      }
    }
  }
}

}  // namespace

void PlaquetteApply::apply(const std::vector<std::complex<double>>& in,
                           std::vector<std::complex<double>>& out) const {
  out.assign(in.size(), {0, 0});
  const int D = ls.dim;
  const int nc = ls.colors;
  std::vector<std::complex<double>> t1(in.size()), t2(in.size());
  for (int al = 1; al <= nc; ++al)
    for (int be = 1; be <= nc; ++be)
      for (int ga = 1; ga <= nc; ++ga)
        for (int de = 1; de <= nc; ++de) {
          const SpMat& U1 = ls.U(al, be);
          const SpMat& U2 = ls.U(be, ga);
          const SpMat& U3 = ls.U(de, ga);  // enters as adjoint
          const SpMat& U4 = ls.U(al, de);  // enters as adjoint
          // forward product U1 U2 U3^dag U4^dag (right-to-left)
          t1.assign(in.size(), {0, 0});
          lift_apply(U4, true, 3, D, in, t1);
          t2.assign(in.size(), {0, 0});
          lift_apply(U3, true, 2, D, t1, t2);
          t1.assign(in.size(), {0, 0});
          lift_apply(U2, false, 1, D, t2, t1);
          lift_apply(U1, false, 0, D, t1, out);
          // hermitian conjugate: U4 U3 U2^dag U1^dag
          t1.assign(in.size(), {0, 0});
          lift_apply(U1, true, 0, D, in, t1);
          t2.assign(in.size(), {0, 0});
          lift_apply(U2, true, 1, D, t1, t2);
          t1.assign(in.size(), {0, 0});
          lift_apply(U3, false, 2, D, t2, t1);
          lift_apply(U4, false, 3, D, t1, out);
        }
}

double PlaquetteApply::norm_estimate(int iters, unsigned seed) const {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<std::complex<double>> v(static_cast<size_t>(dim)), w;
  for (auto& x : v) x = {nd(rng), nd(rng)};
  double nrm = 0;
  for (int it = 0; it < iters; ++it) {
    double n0 = 0;
    for (auto& x : v) n0 += std::norm(x);
    n0 = std::sqrt(n0);
    for (auto& x : v) x /= n0;
    apply(v, w);
    nrm = 0;
    for (auto& x : w) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    v.swap(w);
  }
  return nrm;
}

}  // namespace lgt
