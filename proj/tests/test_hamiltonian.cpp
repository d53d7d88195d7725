#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <bit>
#include <cstdlib>
#include <random>

#include "lgt/hamiltonian.hpp"

using namespace lgt;

namespace {

double spectral_norm_est(const HermitianOp& h, int iters = 60) {
  SpMat m = h.to_sparse();
  Eigen::VectorXd v = Eigen::VectorXd::Random(m.rows()).normalized();
  double lam = 0;
  for (int i = 0; i < iters; ++i) {
    Eigen::VectorXd w = m * v;
    lam = w.norm();
    if (lam == 0) return 0;
    v = w / lam;
  }
  return lam;
}

}  // namespace

TEST_CASE("u1 mass diagonal") {
  Lattice lat = build_lattice({1, 4});
  auto hl = HilbertLayout::make(Group::U1, lat, LinkBasis::Encoded, 2);
  double m = 0.7;
  HermitianOp hm = build_mass(lat, hl, Group::U1, m);
  CHECK(hm.diag_only());
  // all modes empty: eigenvalue -(m/2)(#even - #odd) = 0 for L=4
  CHECK(hm.diag[0] == doctest::Approx(0.0));
  // single fermion on an even site shifts by +m relative to empty
  JWOrdering jw = lat.jw_ordering(1);
  i64 one = i64(1) << jw.mode(0, 0);  // site 0 is even
  CHECK(hm.diag[static_cast<size_t>(one)] - hm.diag[0] == doctest::Approx(m));
}

TEST_CASE("su3 mass has three staggered colors") {
  Lattice lat = build_lattice({1, 2});
  LinkSpace ls = LinkSpace::make(Group::SU3, 1, LinkBasis::Physical);
  auto hl = HilbertLayout::make(Group::SU3, lat, LinkBasis::Physical, ls.dim);
  HermitianOp hm = build_mass(lat, hl, Group::SU3, 1.0);
  CHECK(hm.diag_only());
  // occupied = |0>: flipping one color qubit at the even site moves the
  // eigenvalue by one unit of m
  JWOrdering jw = lat.jw_ordering(3);
  i64 bit = i64(1) << jw.mode(0, 1);
  CHECK(std::abs(hm.diag[static_cast<size_t>(bit)] - hm.diag[0]) == doctest::Approx(1.0));
}

TEST_CASE("electric eigenvalues per group") {
  double g = 1.3, a = 0.9;
  {
    Lattice lat = build_lattice({1, 2});
    LinkSpace ls = LinkSpace::make(Group::U1, 1, LinkBasis::Encoded);
    auto hl = HilbertLayout::make(Group::U1, lat, LinkBasis::Encoded, ls.dim);
    HermitianOp he = build_electric(lat, hl, ls, g, a);
    double per = g * g / (2.0 * std::pow(a, -1));  // d=1
    CHECK(he.diag[0] == doctest::Approx(2 * per));  // both links at E=-1
  }
  {
    Lattice lat = build_lattice({1, 2});
    LinkSpace ls = LinkSpace::make(Group::SU2, 1, LinkBasis::Physical);
    auto hl = HilbertLayout::make(Group::SU2, lat, LinkBasis::Physical, ls.dim);
    HermitianOp he = build_electric(lat, hl, ls, g, a);
    int idx_j1 = ls.su2->find({2, 2, 2});  // encoded j=2 <-> physical j=1
    REQUIRE(idx_j1 >= 0);
    i64 s = hl.with_link_value(0, 0, idx_j1);
    double coef = g * g / (2.0 * std::pow(a, -1));
    CHECK(he.diag[static_cast<size_t>(s)] - he.diag[0] == doctest::Approx(coef * 2.0));
  }
  {
    Lattice lat = build_lattice({1, 2});
    LinkSpace ls = LinkSpace::make(Group::SU3, 1, LinkBasis::Physical);
    auto hl = HilbertLayout::make(Group::SU3, lat, LinkBasis::Physical, ls.dim);
    HermitianOp he = build_electric(lat, hl, ls, g, a);
    SU3State w;
    w.v = {1, 1, 0, 2, 3, 0, 2, 3};
    int idx = ls.su3->find(w);
    REQUIRE(idx >= 0);
    i64 s = hl.with_link_value(0, 0, idx);
    double coef = g * g / (2.0 * std::pow(a, -1));
    CHECK(he.diag[static_cast<size_t>(s)] - he.diag[0] == doctest::Approx(coef * 3.0));
  }
}

TEST_CASE("u1 kinetic structure on d=1 L=4") {
  Lattice lat = build_lattice({1, 4});
  LinkSpace ls = LinkSpace::make(Group::U1, 1, LinkBasis::Encoded);
  auto hl = HilbertLayout::make(Group::U1, lat, LinkBasis::Encoded, ls.dim);
  double a = 0.8;
  HermitianOp hk = build_kinetic(lat, hl, ls, a);
  CHECK(hk.diag.empty());
  for (size_t k = 0; k < hk.ov.size(); ++k) {
    CHECK(std::abs(hk.ov[k]) == doctest::Approx(1.0 / (2 * a)));
    i64 s = hk.oi[k], t = hk.oj[k];
    int link_changes = 0;
    for (int l = 0; l < 4; ++l) link_changes += hl.link_value(s, l) != hl.link_value(t, l);
    CHECK(link_changes == 1);
    CHECK(std::popcount(static_cast<unsigned long long>(hl.fermion_mask(s) ^
                                                        hl.fermion_mask(t))) == 2);
    // the all-empty fermion configuration is annihilated (occupied = |1>)
    CHECK(hl.fermion_mask(s) != 0);
    CHECK(hl.fermion_mask(t) != 0);
  }
}

TEST_CASE("su2 kinetic couples the vacuum pair with f/sqrt(2)") {
  Lattice lat = build_lattice({1, 2});
  LinkSpace ls = LinkSpace::make(Group::SU2, 1, LinkBasis::Physical);
  auto hl = HilbertLayout::make(Group::SU2, lat, LinkBasis::Physical, ls.dim);
  double a = 1.0;
  HermitianOp t = kinetic_link_term(lat, hl, ls, 0, 1, 1, a);
  int vac = ls.su2->find({0, 2, 2});
  int tgt = ls.su2->find({1, 3, 3});
  JWOrdering jw = lat.jw_ordering(2);
  // occupied = |0>: the hop annihilates color 1 at the head (bit 0) and
  // creates color 1 at the origin (bit 1 -> 0)
  i64 src = 0;
  src = hl.with_link_value(src, 0, vac);
  src = hl.with_link_value(src, 1, vac);
  src |= i64(1) << jw.mode(0, 0);
  i64 dst = hl.with_link_value(src, 0, tgt);
  dst ^= i64(1) << jw.mode(0, 0);
  dst ^= i64(1) << jw.mode(1, 0);
  double found = 0;
  for (size_t k = 0; k < t.ov.size(); ++k)
    if (t.oi[k] == std::min(src, dst) && t.oj[k] == std::max(src, dst)) found = t.ov[k];
  CHECK(std::abs(found) == doctest::Approx(1.0 / (2 * a) / std::sqrt(2.0)));
}

TEST_CASE("u1 magnetic: zero at d=1, plaquette norm bound at d=2") {
  {
    Lattice lat = build_lattice({1, 4});
    LinkSpace ls = LinkSpace::make(Group::U1, 1, LinkBasis::Encoded);
    auto hl = HilbertLayout::make(Group::U1, lat, LinkBasis::Encoded, ls.dim);
    HermitianOp hb = build_magnetic(lat, hl, ls, 1.0, 1.0);
    CHECK(hb.nnz_off() == 0);
    CHECK(hb.diag.empty());
  }
  {
    double g = 1.1, a = 0.9;
    Lattice lat = build_lattice({2, 2});
    LinkSpace ls = LinkSpace::make(Group::U1, 1, LinkBasis::Encoded);
    auto hl = HilbertLayout::make(Group::U1, lat, LinkBasis::Encoded, ls.dim);
    HermitianOp hb = build_magnetic(lat, hl, ls, g, a);
    double bound = 4.0 / (g * g * std::pow(a, 2));  // 4 plaquettes x 1/(g^2 a^{4-d})
    CHECK(spectral_norm_est(hb) <= bound * (1 + 1e-9));
  }
}

TEST_CASE("plaquette-sum norm bounds (su2; su3 when LGT_SLOW_TESTS is set)") {
  {
    LinkSpace ls = LinkSpace::make(Group::SU2, 1, LinkBasis::Physical);
    PlaquetteApply pa(ls);
    double est = pa.norm_estimate(25, 7);
    CHECK(est <= 2.0 * 16 + 1e-6);  // 16 color terms, each norm <= 2
  }
  if (std::getenv("LGT_SLOW_TESTS")) {
    LinkSpace ls = LinkSpace::make(Group::SU3, 1, LinkBasis::Physical);
    PlaquetteApply pa(ls);
    double est = pa.norm_estimate(8, 7);
    CHECK(est <= 2.0 * 81 + 1e-6);
  }
}

TEST_CASE("gauss operators: interior commutation and the vacuum") {
  Lattice lat = build_lattice({1, 4});
  LinkSpace ls = LinkSpace::make(Group::U1, 2, LinkBasis::Encoded);
  auto hl = HilbertLayout::make(Group::U1, lat, LinkBasis::Encoded, ls.dim);
  auto gs = build_gauss_u1(lat, hl, ls);
  HermitianOp hk = build_kinetic(lat, hl, ls, 1.0);
  JWOrdering jw = lat.jw_ordering(1);
  for (int n = 0; n < lat.n_sites(); ++n) {
    const auto& g = gs[static_cast<size_t>(n)];
    for (size_t k = 0; k < hk.ov.size(); ++k) {
      i64 s = hk.oi[k], t = hk.oj[k];
      bool interior = true;
      for (int l = 0; l < hl.n_links; ++l) {
        int vs = hl.link_value(s, l), vt = hl.link_value(t, l);
        if (vs <= 0 || vs >= 2 * ls.Lambda - 1 || vt <= 0 || vt >= 2 * ls.Lambda - 1)
          interior = false;
      }
      if (interior)
        CHECK(std::abs(g[static_cast<size_t>(t)] - g[static_cast<size_t>(s)]) < 1e-12);
    }
    // strong-coupling vacuum: all E=0, odd sites occupied
    i64 vac = 0;
    for (int l = 0; l < hl.n_links; ++l) vac = hl.with_link_value(vac, l, ls.Lambda);
    for (const Site& s : lat.sites)
      if (s.parity == 1) vac |= i64(1) << jw.mode(s.index, 0);
    CHECK(g[static_cast<size_t>(vac)] == doctest::Approx(0.0));
  }
}

TEST_CASE("kinetic is hermitian after symmetrization") {
  Lattice lat = build_lattice({1, 4});
  LinkSpace ls = LinkSpace::make(Group::U1, 2, LinkBasis::Encoded);
  auto hl = HilbertLayout::make(Group::U1, lat, LinkBasis::Encoded, ls.dim);
  HermitianOp hk = build_kinetic(lat, hl, ls, 1.0);
  SpMat m = hk.to_sparse();
  SpMat mt = SpMat(m.transpose());
  CHECK((Mat(m) - Mat(mt)).cwiseAbs().maxCoeff() < 1e-12);
}
