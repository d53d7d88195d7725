#include "lgt/components.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace lgt {

namespace {

using cplx = std::complex<double>;
using VecC = Eigen::VectorXcd;
using VecD = Eigen::VectorXd;

struct UnionFind {
  std::vector<std::int32_t> parent;
  explicit UnionFind(i64 n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

ComponentSplit split_components(const TermSequence& seq, i64 dim) {
  UnionFind uf(dim);
  for (const Fragment& f : seq.fragments)
    for (size_t k = 0; k < f.op.ov.size(); ++k) uf.unite(f.op.oi[k], f.op.oj[k]);

  ComponentSplit cs;
  cs.dim = dim;
  cs.comp_of.assign(static_cast<size_t>(dim), -1);
  std::vector<std::int32_t> root_id(static_cast<size_t>(dim), -1);
  std::int32_t nc = 0;
  for (i64 s = 0; s < dim; ++s) {
    std::int32_t r = uf.find(static_cast<std::int32_t>(s));
    if (root_id[r] < 0) root_id[r] = nc++;
    cs.comp_of[static_cast<size_t>(s)] = root_id[r];
  }
  std::vector<i64> counts(static_cast<size_t>(nc), 0);
  for (i64 s = 0; s < dim; ++s) counts[cs.comp_of[static_cast<size_t>(s)]]++;
  cs.offsets.assign(static_cast<size_t>(nc) + 1, 0);
  for (std::int32_t c = 0; c < nc; ++c) cs.offsets[c + 1] = cs.offsets[c] + counts[c];
  cs.members.resize(static_cast<size_t>(dim));
  std::vector<i64> cursor(cs.offsets.begin(), cs.offsets.end() - 1);
  for (i64 s = 0; s < dim; ++s)
    cs.members[static_cast<size_t>(cursor[cs.comp_of[static_cast<size_t>(s)]]++)] =
        static_cast<std::int32_t>(s);
  cs.by_size.resize(static_cast<size_t>(nc));
  std::iota(cs.by_size.begin(), cs.by_size.end(), 0);
  std::stable_sort(cs.by_size.begin(), cs.by_size.end(), [&](std::int32_t a, std::int32_t b) {
    return cs.size_of(a) > cs.size_of(b);
  });
  return cs;
}

namespace {

// Pairs bucketed by component, fragment order preserved inside each bucket.
struct BucketedPairs {
  struct P {
    std::int32_t li, lj;
    float pad;
    double v;
    std::int16_t frag;
  };
  std::vector<P> pairs;
  std::vector<i64> comp_begin;  // per component, into `pairs`
};

BucketedPairs bucket_pairs(const TermSequence& seq, const ComponentSplit& cs) {
  const i64 nc = cs.n_components();
  std::vector<i64> counts(static_cast<size_t>(nc), 0);
  for (const Fragment& f : seq.fragments)
    for (size_t k = 0; k < f.op.ov.size(); ++k) counts[cs.comp_of[f.op.oi[k]]]++;
  BucketedPairs bp;
  bp.comp_begin.assign(static_cast<size_t>(nc) + 1, 0);
  for (i64 c = 0; c < nc; ++c) bp.comp_begin[c + 1] = bp.comp_begin[c] + counts[c];
  bp.pairs.resize(static_cast<size_t>(bp.comp_begin[nc]));

  // local rank of each state inside its component member list
  std::vector<std::int32_t> local_of(static_cast<size_t>(cs.dim));
  for (i64 c = 0; c < nc; ++c)
    for (i64 k = cs.offsets[c]; k < cs.offsets[c + 1]; ++k)
      local_of[cs.members[static_cast<size_t>(k)]] = static_cast<std::int32_t>(k - cs.offsets[c]);

  std::vector<i64> cursor(bp.comp_begin.begin(), bp.comp_begin.end() - 1);
  for (std::int16_t fi = 0; fi < static_cast<std::int16_t>(seq.fragments.size()); ++fi) {
    const Fragment& f = seq.fragments[static_cast<size_t>(fi)];
    for (size_t k = 0; k < f.op.ov.size(); ++k) {
      std::int32_t c = cs.comp_of[f.op.oi[k]];
      BucketedPairs::P& p = bp.pairs[static_cast<size_t>(cursor[c]++)];
      p.li = local_of[f.op.oi[k]];
      p.lj = local_of[f.op.oj[k]];
      p.v = f.op.ov[k];
      p.frag = fi;
    }
  }
  return bp;
}

// per-component, per-fragment orbit decomposition with cached 2x2.. exps
struct Orbit {
  std::vector<std::int32_t> states;       // local indices
  Eigen::MatrixXd h;                      // restricted Hermitian (real)
};

struct FragSweep {
  bool diagonal = false;
  std::vector<double> diag;               // local diagonal (diagonal fragments)
  std::vector<Orbit> orbits;
  // cached exponential for the most recent angle
  double cached_theta = std::numeric_limits<double>::quiet_NaN();
  std::vector<Eigen::MatrixXcd> exps;
  std::vector<cplx> diag_phase;

  void prepare(double theta) {
    if (theta == cached_theta) return;
    cached_theta = theta;
    if (diagonal) {
      diag_phase.resize(diag.size());
      for (size_t i = 0; i < diag.size(); ++i)
        diag_phase[i] = std::exp(cplx(0, -theta * diag[i]));
      return;
    }
    exps.resize(orbits.size());
    for (size_t o = 0; o < orbits.size(); ++o) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(orbits[o].h);
      Eigen::MatrixXcd ph = (cplx(0, -theta) * es.eigenvalues().cast<cplx>().array()).exp().matrix().asDiagonal();
      exps[o] = es.eigenvectors().cast<cplx>() * ph * es.eigenvectors().transpose().cast<cplx>();
    }
  }

  void apply(VecC& v, bool adjoint) const {
    if (diagonal) {
      if (!adjoint)
        for (size_t i = 0; i < diag_phase.size(); ++i) v[static_cast<i64>(i)] *= diag_phase[i];
      else
        for (size_t i = 0; i < diag_phase.size(); ++i)
          v[static_cast<i64>(i)] *= std::conj(diag_phase[i]);
      return;
    }
    Eigen::VectorXcd tmp;
    for (size_t o = 0; o < orbits.size(); ++o) {
      const auto& st = orbits[o].states;
      const int n = static_cast<int>(st.size());
      tmp.resize(n);
      for (int i = 0; i < n; ++i) tmp[i] = v[st[i]];
      if (!adjoint)
        tmp = exps[o] * tmp;
      else
        tmp = exps[o].adjoint() * tmp;
      for (int i = 0; i < n; ++i) v[st[i]] = tmp[i];
    }
  }
};

struct ComponentWork {
  int n = 0;
  std::vector<FragSweep> sweeps;  // in fragment order
  std::vector<double> hdiag;      // total diagonal of H_c
  // CSR of off-diagonal H_c (both triangles)
  std::vector<i64> row_ptr;
  std::vector<std::int32_t> col;
  std::vector<double> val;
  // dense eig (small blocks)
  bool have_eig = false;
  Eigen::MatrixXd evec;
  Eigen::VectorXd eval;
  // spectral interval for Chebyshev
  double spec_lo = 0, spec_hi = 0;

  void apply_h(const VecC& x, VecC& y) const {
    for (int i = 0; i < n; ++i) y[i] = hdiag[static_cast<size_t>(i)] * x[i];
    for (int i = 0; i < n; ++i)
      for (i64 k = row_ptr[static_cast<size_t>(i)]; k < row_ptr[static_cast<size_t>(i) + 1]; ++k)
        y[i] += val[static_cast<size_t>(k)] * x[col[static_cast<size_t>(k)]];
  }

  // v <- exp(-i s H_c) v
  void apply_exp(VecC& v, double s) const {
    if (have_eig) {
      VecD re = evec.transpose() * v.real();
      VecD im = evec.transpose() * v.imag();
      VecC w(n);
      for (int i = 0; i < n; ++i) w[i] = std::exp(cplx(0, -s * eval[i])) * cplx(re[i], im[i]);
      VecD wr = evec * w.real();
      VecD wi = evec * w.imag();
      for (int i = 0; i < n; ++i) v[i] = cplx(wr[i], wi[i]);
      return;
    }
    // Chebyshev expansion of exp(-i s H) on [spec_lo, spec_hi]
    const double c = 0.5 * (spec_hi + spec_lo);
    const double rho = std::max(0.5 * (spec_hi - spec_lo), 1e-300);
    const double x = s * rho;
    VecC t0 = v, t1(n), tmp(n);
    // t1 = H~ v
    apply_h(t0, t1);
    for (int i = 0; i < n; ++i) t1[i] = (t1[i] - c * t0[i]) / rho;
    VecC acc(n);
    double j0 = std::cyl_bessel_j(0, std::abs(x));
    for (int i = 0; i < n; ++i) acc[i] = j0 * t0[i];
    cplx mi(0, -1);
    if (x < 0) mi = cplx(0, 1);
    cplx fac = mi;
    int k = 1;
    double ax = std::abs(x);
    while (true) {
      double jk = std::cyl_bessel_j(k, ax);
      for (int i = 0; i < n; ++i) acc[i] += 2.0 * fac * jk * t1[i];
      if (k > ax + 8 && std::abs(jk) < 1e-17) break;
      if (k > 4 * (ax + 40)) break;
      // next Chebyshev vector: t2 = 2 H~ t1 - t0
      apply_h(t1, tmp);
      for (int i = 0; i < n; ++i) tmp[i] = 2.0 * ((tmp[i] - c * t1[i]) / rho) - t0[i];
      t0.swap(t1);
      t1.swap(tmp);
      fac *= mi;
      ++k;
    }
    cplx ph = std::exp(cplx(0, -s * c));
    for (int i = 0; i < n; ++i) v[i] = ph * acc[i];
  }

  // v <- U2(t)^r v (adjoint: inverse)
  void apply_pf(VecC& v, double t, int r, bool adjoint) {
    for (auto& sw : sweeps) sw.prepare(t / 2);
    const int l = static_cast<int>(sweeps.size());
    for (int step = 0; step < r; ++step) {
      if (!adjoint) {
        for (int j = 0; j < l; ++j) sweeps[j].apply(v, false);
        for (int j = l - 1; j >= 0; --j) sweeps[j].apply(v, false);
      } else {
        for (int j = 0; j < l; ++j) sweeps[j].apply(v, true);
        for (int j = l - 1; j >= 0; --j) sweeps[j].apply(v, true);
      }
    }
  }
};

ComponentWork build_component(const TermSequence& seq, const ComponentSplit& cs,
                              const BucketedPairs& bp, std::int32_t comp, int dense_eig_cap) {
  ComponentWork w;
  const i64 lo = cs.offsets[comp], hi = cs.offsets[comp + 1];
  w.n = static_cast<int>(hi - lo);
  const int nfrag = static_cast<int>(seq.fragments.size());
  w.sweeps.resize(static_cast<size_t>(nfrag));
  w.hdiag.assign(static_cast<size_t>(w.n), 0.0);

  for (int f = 0; f < nfrag; ++f) {
    const Fragment& fr = seq.fragments[static_cast<size_t>(f)];
    if (!fr.op.diag.empty()) {
      w.sweeps[f].diagonal = true;
      w.sweeps[f].diag.resize(static_cast<size_t>(w.n));
      for (int i = 0; i < w.n; ++i) {
        double d = fr.op.diag[cs.members[static_cast<size_t>(lo + i)]];
        w.sweeps[f].diag[static_cast<size_t>(i)] = d;
        w.hdiag[static_cast<size_t>(i)] += d;
      }
    }
  }

  // gather off-diagonal pairs per fragment; build orbits and CSR
  std::vector<std::vector<std::int32_t>> adj_i(static_cast<size_t>(nfrag));
  std::vector<i64> deg(static_cast<size_t>(w.n), 0);
  const i64 pb = bp.comp_begin[comp], pe = bp.comp_begin[comp + 1];
  for (i64 k = pb; k < pe; ++k) {
    deg[bp.pairs[static_cast<size_t>(k)].li]++;
    deg[bp.pairs[static_cast<size_t>(k)].lj]++;
  }
  w.row_ptr.assign(static_cast<size_t>(w.n) + 1, 0);
  for (int i = 0; i < w.n; ++i) w.row_ptr[static_cast<size_t>(i) + 1] = w.row_ptr[static_cast<size_t>(i)] + deg[static_cast<size_t>(i)];
  w.col.resize(static_cast<size_t>(w.row_ptr[w.n]));
  w.val.resize(static_cast<size_t>(w.row_ptr[w.n]));
  {
    std::vector<i64> cur(w.row_ptr.begin(), w.row_ptr.end() - 1);
    for (i64 k = pb; k < pe; ++k) {
      const auto& p = bp.pairs[static_cast<size_t>(k)];
      w.col[static_cast<size_t>(cur[p.li])] = p.lj;
      w.val[static_cast<size_t>(cur[p.li]++)] = p.v;
      w.col[static_cast<size_t>(cur[p.lj])] = p.li;
      w.val[static_cast<size_t>(cur[p.lj]++)] = p.v;
    }
  }

  // per-fragment orbit decomposition
  {
    std::vector<std::int32_t> ufp(static_cast<size_t>(w.n));
    std::vector<std::int32_t> touched;
    for (int f = 0; f < nfrag; ++f) {
      if (w.sweeps[f].diagonal) continue;
      // collect this fragment's pairs
      std::vector<std::array<std::int32_t, 2>> pr;
      std::vector<double> pv;
      for (i64 k = pb; k < pe; ++k) {
        const auto& p = bp.pairs[static_cast<size_t>(k)];
        if (p.frag != f) continue;
        pr.push_back({p.li, p.lj});
        pv.push_back(p.v);
      }
      if (pr.empty()) continue;
      touched.clear();
      for (auto& e : pr)
        for (int s = 0; s < 2; ++s) {
          ufp[e[s]] = e[s];
          touched.push_back(e[s]);
        }
      std::function<std::int32_t(std::int32_t)> find = [&](std::int32_t x) {
        while (ufp[x] != x) { ufp[x] = ufp[ufp[x]]; x = ufp[x]; }
        return x;
      };
      for (auto& e : pr) {
        auto a = find(e[0]), b = find(e[1]);
        if (a != b) ufp[std::max(a, b)] = std::min(a, b);
      }
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      std::map<std::int32_t, std::vector<std::int32_t>> groups;
      for (auto s : touched) groups[find(s)].push_back(s);
      FragSweep& sw = w.sweeps[static_cast<size_t>(f)];
      for (auto& [root, states] : groups) {
        Orbit ob;
        ob.states = states;
        const int m = static_cast<int>(states.size());
        if (m > 64)
          throw std::runtime_error("fragment orbit larger than expected (" +
                                   std::to_string(m) + "); not a banded local term");
        ob.h = Eigen::MatrixXd::Zero(m, m);
        sw.orbits.push_back(std::move(ob));
      }
      std::map<std::int32_t, int> which;
      for (size_t o = 0; o < sw.orbits.size(); ++o)
        for (auto s : sw.orbits[o].states) which[s] = static_cast<int>(o);
      auto rank_in = [&](const Orbit& ob, std::int32_t s) {
        return static_cast<int>(std::lower_bound(ob.states.begin(), ob.states.end(), s) -
                                ob.states.begin());
      };
      for (size_t k = 0; k < pr.size(); ++k) {
        Orbit& ob = sw.orbits[static_cast<size_t>(which[pr[k][0]])];
        int a = rank_in(ob, pr[k][0]), b = rank_in(ob, pr[k][1]);
        ob.h(a, b) += pv[k];
        ob.h(b, a) += pv[k];
      }
    }
  }

  // spectral machinery for exp(-iHT)
  if (w.n <= dense_eig_cap) {
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(w.n, w.n);
    for (int i = 0; i < w.n; ++i) {
      H(i, i) = w.hdiag[static_cast<size_t>(i)];
      for (i64 k = w.row_ptr[static_cast<size_t>(i)]; k < w.row_ptr[static_cast<size_t>(i) + 1]; ++k)
        H(i, w.col[static_cast<size_t>(k)]) += w.val[static_cast<size_t>(k)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    w.evec = es.eigenvectors();
    w.eval = es.eigenvalues();
    w.have_eig = true;
  } else {
    // Gershgorin bounds
    double lo_b = 1e300, hi_b = -1e300;
    for (int i = 0; i < w.n; ++i) {
      double c = w.hdiag[static_cast<size_t>(i)], rad = 0;
      for (i64 k = w.row_ptr[static_cast<size_t>(i)]; k < w.row_ptr[static_cast<size_t>(i) + 1]; ++k)
        rad += std::abs(w.val[static_cast<size_t>(k)]);
      lo_b = std::min(lo_b, c - rad);
      hi_b = std::max(hi_b, c + rad);
    }
    w.spec_lo = lo_b;
    w.spec_hi = hi_b;
  }
  return w;
}

// ||exp(-iH_cT) - U2(t)^r|| on one block: both factors are unitary, so this
// equals sqrt(lambda_max(2 - W - W^dag)) with W = exp(iH_cT) U2^r; Lanczos
// on the Hermitian operator with full reorthogonalization.
double block_error(ComponentWork& w, double T, int r, const TrotterErrorOptions& opts,
                   std::mt19937_64& rng) {
  const int n = w.n;
  if (n == 1) return 0.0;
  auto apply_A = [&](const VecC& x, VecC& y) {
    VecC u = x;
    w.apply_pf(u, T / r, r, false);   // u = U x
    w.apply_exp(u, -T);               // u = E^dag U x = W x
    VecC z = x;
    w.apply_exp(z, T);                // z = E x
    w.apply_pf(z, T / r, r, true);    // z = U^dag E x = W^dag x
    y = 2.0 * x - u - z;
  };
  if (n <= 8) {
    // materialize and take the exact norm
    Eigen::MatrixXcd D(n, n);
    for (int j = 0; j < n; ++j) {
      VecC e = VecC::Zero(n);
      e[j] = 1.0;
      VecC u = e;
      w.apply_pf(u, T / r, r, false);
      VecC x = e;
      w.apply_exp(x, T);
      D.col(j) = x - u;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(D);
    return svd.singularValues()[0];
  }
  std::normal_distribution<double> nd;
  VecC q(n);
  for (int i = 0; i < n; ++i) q[i] = cplx(nd(rng), nd(rng));
  q /= q.norm();
  std::vector<VecC> basis;
  std::vector<double> alpha, beta;
  VecC av(n);
  double prev = -1, err = 0;
  for (int it = 0; it < opts.lanczos_max; ++it) {
    basis.push_back(q);
    apply_A(q, av);
    double a = std::real(q.dot(av));
    alpha.push_back(a);
    av -= a * q;
    if (!beta.empty()) av -= beta.back() * basis[basis.size() - 2];
    // full reorthogonalization
    for (const auto& b : basis) av -= b.dot(av) * b;
    double bnorm = av.norm();
    // largest Ritz value of the tridiagonal section
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd Tm = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      Tm(i, i) = alpha[static_cast<size_t>(i)];
      if (i + 1 < m) Tm(i, i + 1) = Tm(i + 1, i) = beta[static_cast<size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Tm);
    err = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
    if (it >= 6 && std::abs(err - prev) <= opts.lanczos_tol * std::max(1e-14, err)) break;
    prev = err;
    if (bnorm < 1e-14) break;
    beta.push_back(bnorm);
    q = av / bnorm;
  }
  return err;
}

}  // namespace

std::vector<TrotterErrorResult> empirical_trotter_error_multi(
    const TermSequence& seq, const std::vector<ErrorRequest>& reqs,
    const TrotterErrorOptions& opts) {
  if (seq.fragments.empty()) throw std::invalid_argument("empty term sequence");
  const i64 dim = seq.fragments.front().op.dim;
  ComponentSplit cs = split_components(seq, dim);
  BucketedPairs bp = bucket_pairs(seq, cs);

  std::vector<TrotterErrorResult> out(reqs.size());
  for (size_t i = 0; i < reqs.size(); ++i) {
    out[i].T = reqs[i].T;
    out[i].r = reqs[i].r;
    out[i].components_total = cs.n_components();
    out[i].states_total = dim;
  }

  i64 limit = (opts.max_components < 0) ? cs.n_components() : opts.max_components;
  std::mt19937_64 rng(opts.seed);
  for (i64 rank = 0; rank < cs.n_components() && rank < limit; ++rank) {
    std::int32_t comp = cs.by_size[static_cast<size_t>(rank)];
    if (cs.size_of(comp) == 1) {
      // diagonal-only blocks: the product formula is exact there
      for (auto& res : out) {
        res.components_evaluated++;
        res.states_covered++;
      }
      continue;
    }
    ComponentWork w = build_component(seq, cs, bp, comp, opts.dense_eig_cap);
    for (size_t i = 0; i < reqs.size(); ++i) {
      double e = block_error(w, reqs[i].T, reqs[i].r, opts, rng);
      out[i].error = std::max(out[i].error, e);
      out[i].components_evaluated++;
      out[i].states_covered += w.n;
    }
  }
  return out;
}

double empirical_trotter_error(const TermSequence& seq, double T, int r,
                               const TrotterErrorOptions& opts) {
  return empirical_trotter_error_multi(seq, {{T, r}}, opts)[0].error;
}

}  // namespace lgt
