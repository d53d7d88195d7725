#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <map>

#include "lgt/fragments.hpp"

using namespace lgt;

namespace {

struct Coo {
  std::int32_t i, j;
  double v;
};

void accumulate(std::vector<Coo>& out, const HermitianOp& h) {
  for (size_t k = 0; k < h.ov.size(); ++k)
    out.push_back({h.oi[k], h.oj[k], h.ov[k]});
  for (size_t i = 0; i < h.diag.size(); ++i)
    if (h.diag[i] != 0)
      out.push_back({static_cast<std::int32_t>(i), static_cast<std::int32_t>(i), h.diag[i]});
}

void sort_dedupe(std::vector<Coo>& v) {
  std::sort(v.begin(), v.end(), [](const Coo& a, const Coo& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  size_t w = 0;
  for (size_t k = 0; k < v.size(); ++k) {
    if (w > 0 && v[w - 1].i == v[k].i && v[w - 1].j == v[k].j)
      v[w - 1].v += v[k].v;
    else
      v[w++] = v[k];
  }
  v.resize(w);
}

double max_abs_diff(const std::vector<Coo>& x, const std::vector<Coo>& y) {
  double d = 0;
  size_t a = 0, b = 0;
  while (a < x.size() || b < y.size()) {
    if (b >= y.size() || (a < x.size() && (x[a].i != y[b].i ? x[a].i < y[b].i : x[a].j < y[b].j))) {
      d = std::max(d, std::abs(x[a++].v));
    } else if (a >= x.size() || (y[b].i != x[a].i ? y[b].i < x[a].i : y[b].j < x[a].j)) {
      d = std::max(d, std::abs(y[b++].v));
    } else {
      d = std::max(d, std::abs(x[a++].v - y[b++].v));
    }
  }
  return d;
}

void check_fragment_sum(Group g, int d, int L, int Lambda, LinkBasis kind) {
  Lattice lat = build_lattice({d, L});
  LinkSpace ls = LinkSpace::make(g, Lambda, kind);
  auto hl = HilbertLayout::make(g, lat, kind, ls.dim);
  SimParams p{1.1, 0.9, 0.7, Lambda};
  std::vector<Coo> sum;
  {
    TermSequence seq = build_term_sequence(lat, hl, ls, p);
    for (const Fragment& f : seq.fragments) accumulate(sum, f.op);
  }
  sort_dedupe(sum);
  std::vector<Coo> ref;
  {
    HermitianOp t = build_mass(lat, hl, g, p.m);
    accumulate(ref, t);
  }
  {
    HermitianOp t = build_electric(lat, hl, ls, p.g, p.a);
    accumulate(ref, t);
  }
  {
    HermitianOp t = build_kinetic(lat, hl, ls, p.a);
    accumulate(ref, t);
  }
  if (d >= 2) {
    HermitianOp t = build_magnetic(lat, hl, ls, p.g, p.a);
    accumulate(ref, t);
  }
  sort_dedupe(ref);
  CHECK(max_abs_diff(sum, ref) < 1e-10);
}

}  // namespace

TEST_CASE("u1 fragment counts") {
  CHECK(term_sequence_label_count(Group::U1, 1) == 10);
  CHECK(term_sequence_label_count(Group::U1, 2) == 20);
  CHECK(term_sequence_label_count(Group::U1, 3) == 32);

  Lattice lat = build_lattice({1, 4});
  LinkSpace ls = LinkSpace::make(Group::U1, 1, LinkBasis::Encoded);
  auto hl = HilbertLayout::make(Group::U1, lat, LinkBasis::Encoded, ls.dim);
  TermSequence seq = build_term_sequence(lat, hl, ls, {1, 1, 1, 1});
  CHECK(seq.size() == 10);

  Lattice lat2 = build_lattice({2, 2});
  auto hl2 = HilbertLayout::make(Group::U1, lat2, LinkBasis::Encoded, ls.dim);
  TermSequence seq2 = build_term_sequence(lat2, hl2, ls, {1, 1, 1, 1});
  CHECK(seq2.size() == 20);
}

TEST_CASE("su kinetic piece counts") {
  CHECK(kinetic_piece_count(Group::SU2, 1) == 128);
  CHECK(kinetic_piece_count(Group::SU2, 3) == 384);
  CHECK(kinetic_piece_count(Group::SU3, 1) == 27744);
  CHECK(kinetic_piece_count(Group::SU3, 3) == 27744 * 3);
  // magnetic label counts
  CHECK(magnetic_piece_count(Group::SU2, 2) == (1LL << 21));
  CHECK(magnetic_piece_count(Group::SU3, 2) == 2 * 1470021852266496LL);
}

TEST_CASE("odd L is rejected") {
  Lattice lat = build_lattice({1, 3});
  LinkSpace ls = LinkSpace::make(Group::U1, 1, LinkBasis::Encoded);
  auto hl = HilbertLayout::make(Group::U1, lat, LinkBasis::Encoded, ls.dim);
  CHECK_THROWS(build_term_sequence(lat, hl, ls, {1, 1, 1, 1}));
}

TEST_CASE("fragment sums equal the full hamiltonian") {
  check_fragment_sum(Group::U1, 1, 4, 1, LinkBasis::Encoded);
  check_fragment_sum(Group::U1, 1, 4, 2, LinkBasis::Encoded);
  check_fragment_sum(Group::U1, 2, 2, 1, LinkBasis::Encoded);
  check_fragment_sum(Group::SU2, 1, 2, 1, LinkBasis::Physical);
  check_fragment_sum(Group::SU2, 1, 4, 1, LinkBasis::Physical);
  check_fragment_sum(Group::SU3, 1, 2, 1, LinkBasis::Physical);
}

TEST_CASE("su sequences carry the full label lists") {
  Lattice lat = build_lattice({1, 2});
  {
    LinkSpace ls = LinkSpace::make(Group::SU2, 1, LinkBasis::Physical);
    auto hl = HilbertLayout::make(Group::SU2, lat, LinkBasis::Physical, ls.dim);
    TermSequence seq = build_term_sequence(lat, hl, ls, {1, 1, 1, 1});
    CHECK(static_cast<i64>(seq.size()) == 2 + kinetic_piece_count(Group::SU2, 1));
  }
  {
    LinkSpace ls = LinkSpace::make(Group::SU3, 1, LinkBasis::Physical);
    auto hl = HilbertLayout::make(Group::SU3, lat, LinkBasis::Physical, ls.dim);
    TermSequence seq = build_term_sequence(lat, hl, ls, {1, 1, 1, 1});
    CHECK(static_cast<i64>(seq.size()) == 2 + kinetic_piece_count(Group::SU3, 1));
  }
}

TEST_CASE("per-site piece norm bounds") {
  // the appendix bounds apply to the per-site/per-plaquette pieces; a
  // fragment sums link-disjoint pieces whose norms add
  double g = 1.2, a = 0.8;
  {
    Lattice lat = build_lattice({2, 2});
    LinkSpace ls = LinkSpace::make(Group::U1, 1, LinkBasis::Encoded);
    auto hl = HilbertLayout::make(Group::U1, lat, LinkBasis::Encoded, ls.dim);
    for (int al = 1; al <= 1; ++al)
      for (const Link& lk : lat.links) {
        HermitianOp t = kinetic_link_term(lat, hl, ls, lk.index, 1, 1, a);
        CHECK(t.norm_inf_bound() <= 1.0 / a + 1e-12);
      }
    TermSequence seq = build_term_sequence(lat, hl, ls, {g, a, 0.5, 1});
    double per_plaq = 1.0 / (g * g * std::pow(a, 2));
    for (const Fragment& f : seq.fragments) {
      if (f.family != Family::Magnetic) continue;
      // restrict to entries that move one chosen plaquette's first link
      for (const Plaquette& pl : lat.plaquettes) {
        HermitianOp piece;
        piece.dim = f.op.dim;
        for (size_t k = 0; k < f.op.ov.size(); ++k) {
          if (hl.link_value(f.op.oi[k], pl.links[0]) != hl.link_value(f.op.oj[k], pl.links[0]))
            continue;
          piece.oi.push_back(f.op.oi[k]);
          piece.oj.push_back(f.op.oj[k]);
          piece.ov.push_back(f.op.ov[k]);
        }
        CHECK(piece.norm_inf_bound() <= per_plaq + 1e-12);
      }
    }
  }
  {
    // at L=2 d=1, each SU(3) kinetic fragment is a single per-site piece
    Lattice lat = build_lattice({1, 2});
    LinkSpace ls = LinkSpace::make(Group::SU3, 1, LinkBasis::Physical);
    auto hl = HilbertLayout::make(Group::SU3, lat, LinkBasis::Physical, ls.dim);
    TermSequence seq = build_term_sequence(lat, hl, ls, {g, a, 0.5, 1});
    for (const Fragment& f : seq.fragments)
      if (f.family == Family::Kinetic) CHECK(f.op.norm_inf_bound() <= 1.0 / a + 1e-12);
  }
}
