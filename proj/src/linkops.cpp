#include "lgt/linkops.hpp"

#include <cmath>
#include <deque>
#include <ostream>
#include <stdexcept>

namespace lgt {

namespace {

int ceil_log2(long long x) {
  int e = 0;
  while ((1LL << e) < x) ++e;
  return e;
}

using Triplet = Eigen::Triplet<double>;

SpMat from_triplets(int dim, std::vector<Triplet>& ts) {
  SpMat m(dim, dim);
  m.setFromTriplets(ts.begin(), ts.end());
  m.makeCompressed();
  return m;
}

}  // namespace

std::string group_name(Group g) {
  switch (g) {
    case Group::U1: return "U1";
    case Group::SU2: return "SU2";
    default: return "SU3";
  }
}

// ---------------------------------------------------------------- U(1) ----

LinkOperatorSet u1_ops(int Lambda) {
  if (Lambda < 1) throw std::invalid_argument("u1_ops: Lambda must be >= 1");
  const int dim = 2 * Lambda;
  std::vector<Triplet> e, u, ud;
  for (int j = 0; j < dim; ++j) {
    e.emplace_back(j, j, static_cast<double>(j - Lambda));
    u.emplace_back((j + 1) % dim, j, 1.0);
    ud.emplace_back((j + dim - 1) % dim, j, 1.0);
  }
  LinkOperatorSet set;
  set.group = Group::U1;
  set.basis = LinkBasis::Encoded;
  set.dim = dim;
  set.ops["E"] = from_triplets(dim, e);
  set.ops["U"] = from_triplets(dim, u);
  set.ops["Udag"] = from_triplets(dim, ud);
  return set;
}

// ---------------------------------------------------------------- SU(2) ---

SU2LinkBasis su2_basis(int Lambda, LinkBasis kind) {
  SU2LinkBasis b;
  b.Lambda = Lambda;
  b.eta = ceil_log2(2LL * Lambda + 1);
  b.kind = kind;
  if (kind == LinkBasis::Encoded) {
    const int nj = 1 << b.eta, nm = 1 << (b.eta + 1);
    for (int j = 0; j < nj; ++j)
      for (int mL = 0; mL < nm; ++mL)
        for (int mR = 0; mR < nm; ++mR) b.states.push_back({j, mL, mR});
  } else {
    for (int j = 0; j <= 2 * Lambda; ++j)
      for (int mL = 2 * Lambda - j; mL <= 2 * Lambda + j; mL += 2)
        for (int mR = 2 * Lambda - j; mR <= 2 * Lambda + j; mR += 2)
          b.states.push_back({j, mL, mR});
  }
  for (int i = 0; i < static_cast<int>(b.states.size()); ++i) b.index[b.states[i]] = i;
  return b;
}

// Radicand factors of Table CG_SU2 at encoded (j, m): physical j/2, m/2 - L.
// row selects Delta j = +1/2 (1) or -1/2 (2); col is the color index.
namespace {
Rat su2_cg_rat(int row, int col, int j, int m, int Lambda, int& sign) {
  sign = 1;
  const long long den = 2LL * (j + 1);
  if (row == 1 && col == 1) return {j + m - 2LL * Lambda + 2, den};       // c11
  if (row == 1 && col == 2) return {j - m + 2LL * Lambda + 2, den};      // c12
  if (row == 2 && col == 1) { sign = -1; return {j - m + 2LL * Lambda, den}; }  // c21
  if (row == 2 && col == 2) return {j + m - 2LL * Lambda, den};          // c22
  throw std::invalid_argument("su2_cg: indices must be in {1,2}");
}
}  // namespace

double su2_cg(int alpha, int beta, int j, int m, int Lambda) {
  int sign = 1;
  Rat r = su2_cg_rat(alpha, beta, j, m, Lambda, sign);
  return sign * sqrt_or_zero(r);
}

double su2_f(int alpha, int beta, int j, int dj, int mL, int mR, int Lambda) {
  // Same elements as the CG route: per-factor radicands, one sqrt at the end.
  const int row = (dj == 1) ? 1 : 2;
  int sL = 1, sR = 1;
  Rat L = su2_cg_rat(row, alpha, j, mL, Lambda, sL);
  Rat R = su2_cg_rat(row, beta, j, mR, Lambda, sR);
  Rat N = (dj == 1) ? Rat{j + 1LL, j + 2LL} : Rat{j + 1LL, static_cast<long long>(j)};
  if (!N.valid() || N.den == 0) return 0.0;
  if (L.negative() || R.negative() || N.negative()) return 0.0;
  if (L.zero() || R.zero()) return 0.0;
  return sL * sR * sqrt_or_zero(L * R * N);
}

namespace {

// Collect U_{alpha beta} elements for one source state; coef(j,dj,mL,mR)
// supplied by the caller so both assembly routes share the loop.
template <typename Coef>
SpMat su2_build(int alpha, int beta, int Lambda, const SU2LinkBasis& basis, Coef coef) {
  const int dmL = (alpha == 1) ? 1 : -1;
  const int dmR = (beta == 1) ? 1 : -1;
  const int nj = 1 << basis.eta, nm = 1 << (basis.eta + 1);
  std::vector<Triplet> ts;
  for (int src = 0; src < basis.dim(); ++src) {
    const auto& s = basis.states[src];
    if (s[0] > 2 * Lambda || s[1] > 4 * Lambda || s[2] > 4 * Lambda) continue;
    for (int dj : {+1, -1}) {
      double c = coef(s[0], dj, s[1], s[2]);
      if (c == 0.0) continue;
      std::array<int, 3> t = {s[0] + dj, s[1] + dmL, s[2] + dmR};
      if (basis.kind == LinkBasis::Encoded) {
        t[0] = (t[0] % nj + nj) % nj;
        t[1] = (t[1] % nm + nm) % nm;
        t[2] = (t[2] % nm + nm) % nm;
      }
      int tgt = basis.find(t);
      if (tgt < 0) continue;
      ts.emplace_back(tgt, src, c);
    }
  }
  return from_triplets(basis.dim(), ts);
}

}  // namespace

SpMat su2_u_op(int alpha, int beta, int Lambda, const SU2LinkBasis& basis) {
  return su2_build(alpha, beta, Lambda, basis, [&](int j, int dj, int mL, int mR) {
    const int row = (dj == 1) ? 1 : 2;
    double cL = su2_cg(row, alpha, j, mL, Lambda);
    double cR = su2_cg(row, beta, j, mR, Lambda);
    Rat N = (dj == 1) ? Rat{j + 1LL, j + 2LL} : Rat{j + 1LL, static_cast<long long>(j)};
    return cL * cR * sqrt_or_zero(N);
  });
}

SpMat su2_u_op_from_f(int alpha, int beta, int Lambda, const SU2LinkBasis& basis) {
  return su2_build(alpha, beta, Lambda, basis, [&](int j, int dj, int mL, int mR) {
    return su2_f(alpha, beta, j, dj, mL, mR, Lambda);
  });
}

SpMat su2_e2_op(const SU2LinkBasis& basis) {
  std::vector<Triplet> ts;
  for (int i = 0; i < basis.dim(); ++i) {
    double j = basis.states[i][0];
    ts.emplace_back(i, i, 0.25 * ((j + 1) * (j + 1) - 1));
  }
  return from_triplets(basis.dim(), ts);
}

// ---------------------------------------------------------------- SU(3) ---

Rat su3_casimir(int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("su3_casimir: p, q must be >= 0");
  return Rat{static_cast<long long>(p) * p + static_cast<long long>(q) * q +
                 static_cast<long long>(p) * q + 3LL * (p + q),
             3}
      .reduced();
}

long long su3_dim(int p, int q) {
  return (1LL + p) * (1 + q) * (2 + p + q) / 2;
}

namespace {

// Isoscalar radicand at encoded (T = 2T_phys, Y = 3(Y_phys + Lambda)):
// 6T_phys = 3T, 3Y_phys = Y - 3Lambda.
Rat su3_iso_rat(int k, int gamma, long long p, long long q, long long T, long long Y,
                int Lambda, int& sign) {
  const long long O1p = 4 * p + 2 * q + 3 * T - (Y - 3LL * Lambda) + 9 + 3;
  const long long O1m = 4 * p + 2 * q - 3 * T - (Y - 3LL * Lambda) + 9 - 3;
  const long long O2p = 2 * p - 2 * q + 3 * T + (Y - 3LL * Lambda) - 3 + 3;
  const long long O2m = 2 * p - 2 * q - 3 * T + (Y - 3LL * Lambda) - 3 - 3;
  const long long O3p = 2 * p + 4 * q + 3 * T + (Y - 3LL * Lambda) + 3 + 3;
  const long long O3m = 2 * p + 4 * q - 3 * T + (Y - 3LL * Lambda) + 3 - 3;
  const long long G1 = (1 + p) * (2 + p + q);
  const long long G2 = (1 + p) * (1 + q);
  const long long G3 = (1 + q) * (2 + p + q);
  const long long U1 = 432 + 216 * T;  // 432(1 + T_phys)
  const long long U2 = 216 * T;        // 432 T_phys
  const long long U3 = 36;
  sign = 1;
  // I_11 carries an (Omega_3^+ + 6) factor like every other gamma = 1 column
  // entry; without it the table fails CG completeness and the vacuum overlap
  // identity. Verified against a Gelfand-Tsetlin construction of
  // (p,q) x (1,0) on all (p,q) <= (3,3).
  if (k == 1 && gamma == 1) return {O1p * (O2p + 6) * (O3p + 6), G1 * U1};
  if (k == 1 && gamma == 2) { sign = -1; return {-O1m * (O2m + 6) * (O3m + 6), G1 * U2}; }
  if (k == 1 && gamma == 3) return {O1m * O1p, G1 * U3};
  if (k == 2 && gamma == 1) { sign = -1; return {(6 - O1m) * O2m * (O3p + 6), G2 * U1}; }
  if (k == 2 && gamma == 2) { sign = -1; return {(O1p - 6) * O2p * (O3m + 6), G2 * U2}; }
  if (k == 2 && gamma == 3) return {-O2m * O2p, G2 * U3};
  if (k == 3 && gamma == 1) { sign = -1; return {(O1m - 6) * (O2p + 6) * O3m, G3 * U1}; }
  if (k == 3 && gamma == 2) return {-(O1p - 6) * (O2m + 6) * O3p, G3 * U2};
  if (k == 3 && gamma == 3) return {O3p * O3m, G3 * U3};
  throw std::invalid_argument("su3_isoscalar: indices must be in {1,2,3}");
}

// dim-ratio normalization radicands N_k(p,q); 0 when the target rep leaves
// the nonnegative lattice.
Rat su3_norm_rat(int k, long long p, long long q) {
  if (k == 1) return {(1 + p) * (2 + p + q), (2 + p) * (3 + p + q)};
  if (k == 2) return {(1 + p) * (1 + q), p * (2 + q)};
  return {(1 + q) * (2 + p + q), q * (1 + p + q)};
}

struct SU3Element {
  SU3State target;
  double coef;
};

// All nonzero elements of U_{alpha beta} out of one source state.
std::vector<SU3Element> su3_elements(int alpha, int beta, int Lambda, const SU3State& s) {
  static const int DP[3] = {+1, -1, 0};
  static const int DQ[3] = {0, +1, -1};
  std::vector<SU3Element> out;
  const long long p = s.v[0], q = s.v[1];
  if (p > Lambda || q > Lambda) return out;
  for (int k = 1; k <= 3; ++k) {
    Rat N = su3_norm_rat(k, p, q);
    if (!N.valid() || N.den == 0 || N.negative()) continue;
    int np = s.v[0] + DP[k - 1], nq = s.v[1] + DQ[k - 1];
    if (np < 0 || np > Lambda || nq < 0 || nq > Lambda) continue;
    // side factor: (dT, dTz, dY, sign, radicand) options per color
    auto side = [&](int color, int T, int Tz, int Y, auto&& emit) {
      if (color <= 2) {
        const int dTz = (color == 1) ? +1 : -1;
        for (int sub = 0; sub < 2; ++sub) {  // (a): dT=+1, (b): dT=-1
          const int dT = sub == 0 ? +1 : -1;
          int isign = 1, csign = 1;
          Rat ir = su3_iso_rat(k, sub == 0 ? 1 : 2, p, q, T, Y, Lambda, isign);
          Rat cr = su2_cg_rat(sub == 0 ? 1 : 2, color, T, Tz, Lambda, csign);
          if (!ir.valid() || ir.den == 0 || ir.negative() || ir.zero()) continue;
          if (!cr.valid() || cr.den == 0 || cr.negative() || cr.zero()) continue;
          emit(dT, dTz, +1, isign * csign, ir * cr);
        }
      } else {
        int isign = 1;
        Rat ir = su3_iso_rat(k, 3, p, q, T, Y, Lambda, isign);
        if (!ir.valid() || ir.den == 0 || ir.negative() || ir.zero()) return;
        emit(0, 0, -2, isign, ir);
      }
    };
    side(alpha, s.v[2], s.v[3], s.v[4], [&](int dTL, int dTzL, int dYL, int sL, Rat rL) {
      side(beta, s.v[5], s.v[6], s.v[7], [&](int dTR, int dTzR, int dYR, int sR, Rat rR) {
        SU3State t = s;
        t.v[0] = np;
        t.v[1] = nq;
        t.v[2] += dTL;
        t.v[3] += dTzL;
        t.v[4] += dYL;
        t.v[5] += dTR;
        t.v[6] += dTzR;
        t.v[7] += dYR;
        if (t.v[2] < 0 || t.v[3] < 0 || t.v[4] < 0 || t.v[5] < 0 || t.v[6] < 0 ||
            t.v[7] < 0)
          return;
        if (t.v[2] > 2 * Lambda || t.v[3] > 4 * Lambda || t.v[4] > 6 * Lambda ||
            t.v[5] > 2 * Lambda || t.v[6] > 4 * Lambda || t.v[7] > 6 * Lambda)
          return;
        double mag = std::sqrt((rL * rR * N).to_double());
        if (mag == 0.0) return;
        out.push_back({t, sL * sR * mag});
      });
    });
  }
  return out;
}

}  // namespace

double su3_isoscalar(int k, int gamma, int p, int q, int T, int Y, int Lambda) {
  int sign = 1;
  Rat r = su3_iso_rat(k, gamma, p, q, T, Y, Lambda, sign);
  return sign * sqrt_or_zero(r);
}

SU3LinkBasis su3_basis(int Lambda, LinkBasis kind) {
  SU3LinkBasis b;
  b.Lambda = Lambda;
  b.eta = ceil_log2(Lambda + 1LL);
  b.kind = kind;
  if (kind == LinkBasis::Encoded) {
    throw std::invalid_argument(
        "su3_basis: encoded register enumeration is not materialized (2^(8 eta+12) "
        "states); use the physical basis for matrix work");
  }
  // reachability closure of the vacuum under U_{ab} and adjoints
  SU3State vac;
  vac.v = {0, 0, 0, 2 * Lambda, 3 * Lambda, 0, 2 * Lambda, 3 * Lambda};
  std::deque<SU3State> queue{vac};
  b.index[vac] = 0;
  b.states.push_back(vac);
  while (!queue.empty()) {
    SU3State s = queue.front();
    queue.pop_front();
    for (int a = 1; a <= 3; ++a) {
      for (int be = 1; be <= 3; ++be) {
        for (const auto& el : su3_elements(a, be, Lambda, s)) {
          if (b.index.find(el.target) == b.index.end()) {
            b.index[el.target] = static_cast<int>(b.states.size());
            b.states.push_back(el.target);
            queue.push_back(el.target);
          }
        }
      }
    }
  }
  // forward closure alone can miss states first reached only by adjoints;
  // iterate adding adjoint-reachable states until stable
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<SU3State> snapshot = b.states;
    for (const auto& s : snapshot) {
      // candidate predecessors u with U|u> ~ |s>: try all shift patterns
      for (int a = 1; a <= 3; ++a)
        for (int be = 1; be <= 3; ++be) {
          static const int DP[3] = {+1, -1, 0}, DQ[3] = {0, +1, -1};
          for (int k = 0; k < 3; ++k) {
            std::vector<int> dTLs = (a <= 2) ? std::vector<int>{+1, -1} : std::vector<int>{0};
            std::vector<int> dTRs = (be <= 2) ? std::vector<int>{+1, -1} : std::vector<int>{0};
            for (int dTL : dTLs)
              for (int dTR : dTRs) {
                SU3State u = s;
                u.v[0] -= DP[k];
                u.v[1] -= DQ[k];
                u.v[2] -= dTL;
                u.v[3] -= (a == 1) ? 1 : (a == 2 ? -1 : 0);
                u.v[4] -= (a <= 2) ? 1 : -2;
                u.v[5] -= dTR;
                u.v[6] -= (be == 1) ? 1 : (be == 2 ? -1 : 0);
                u.v[7] -= (be <= 2) ? 1 : -2;
                bool ok = true;
                for (int i = 0; i < 8; ++i)
                  if (u.v[i] < 0) ok = false;
                if (!ok || u.v[0] > Lambda || u.v[1] > Lambda) continue;
                if (b.index.count(u)) continue;
                for (const auto& el : su3_elements(a, be, Lambda, u))
                  if (el.target == s) {
                    b.index[u] = static_cast<int>(b.states.size());
                    b.states.push_back(u);
                    grew = true;
                    break;
                  }
              }
          }
        }
    }
  }
  // re-run forward closure over any states added by the adjoint pass
  size_t cursor = 0;
  while (cursor < b.states.size()) {
    SU3State s = b.states[cursor++];
    for (int a = 1; a <= 3; ++a)
      for (int be = 1; be <= 3; ++be)
        for (const auto& el : su3_elements(a, be, Lambda, s))
          if (!b.index.count(el.target)) {
            b.index[el.target] = static_cast<int>(b.states.size());
            b.states.push_back(el.target);
          }
  }

  long long expect = 0;
  for (int p = 0; p <= Lambda; ++p)
    for (int q = 0; q <= Lambda; ++q) expect += su3_dim(p, q) * su3_dim(p, q);
  if (static_cast<long long>(b.states.size()) != expect)
    throw std::runtime_error("su3_basis: closure count " + std::to_string(b.states.size()) +
                             " != sum dim^2 = " + std::to_string(expect) +
                             " (CG-table transcription bug)");
  // canonical order for reproducibility
  std::sort(b.states.begin(), b.states.end());
  b.index.clear();
  for (int i = 0; i < static_cast<int>(b.states.size()); ++i) b.index[b.states[i]] = i;
  return b;
}

SpMat su3_u_op(int alpha, int beta, int Lambda, const SU3LinkBasis& basis) {
  std::vector<Triplet> ts;
  for (int src = 0; src < basis.dim(); ++src) {
    for (const auto& el : su3_elements(alpha, beta, Lambda, basis.states[src])) {
      int tgt = basis.find(el.target);
      if (tgt >= 0) ts.emplace_back(tgt, src, el.coef);
    }
  }
  return from_triplets(basis.dim(), ts);
}

SpMat su3_e2_op(const SU3LinkBasis& basis) {
  std::vector<Triplet> ts;
  for (int i = 0; i < basis.dim(); ++i) {
    ts.emplace_back(i, i, su3_casimir(basis.states[i].v[0], basis.states[i].v[1]).to_double());
  }
  return from_triplets(basis.dim(), ts);
}

void dump_operator(std::ostream& os, const SpMat& m) {
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it)
      os << it.row() << " " << it.col() << " " << it.value() << " 0\n";
}

}  // namespace lgt
