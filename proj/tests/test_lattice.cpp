#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lgt/lattice.hpp"

using namespace lgt;

TEST_CASE("counts match the closed forms") {
  // d=1, L=4: 4 sites, 4 links, 0 plaquettes
  Lattice a = build_lattice({1, 4});
  CHECK(a.n_sites() == 4);
  CHECK(a.n_links() == 4);
  CHECK(a.n_plaquettes() == 0);

  // d=2, L=2: 4 sites, 8 links, 4 plaquettes
  Lattice b = build_lattice({2, 2});
  CHECK(b.n_sites() == 4);
  CHECK(b.n_links() == 8);
  CHECK(b.n_plaquettes() == 4);

  // d=3, L=10: direct counting
  Lattice c = build_lattice({3, 10});
  CHECK(c.n_sites() == 1000);
  CHECK(c.n_links() == 3000);
  CHECK(c.n_plaquettes() == 3000);
}

TEST_CASE("rejects bad specs") {
  CHECK_THROWS(build_lattice({0, 4}));
  CHECK_THROWS(build_lattice({1, 1}));
}

TEST_CASE("parity partition and bulk/edge split") {
  for (auto [d, L] : {std::pair{1, 4}, {2, 2}, {2, 4}, {3, 2}}) {
    Lattice lat = build_lattice({d, L});
    int even = 0;
    for (const Site& s : lat.sites) even += (s.parity == 0);
    CHECK(even == lat.n_sites() / 2);  // even L
    for (int dir = 1; dir <= d; ++dir) {
      int edge = 0, bulk = 0;
      for (const Link& lk : lat.links) {
        if (lk.direction != dir) continue;
        (lk.edge ? edge : bulk)++;
      }
      int Lm1 = 1;
      for (int i = 0; i < d - 1; ++i) Lm1 *= L;
      CHECK(edge == Lm1);
      CHECK(edge + bulk == lat.n_sites());
    }
  }
}

TEST_CASE("plaquette structure") {
  Lattice lat = build_lattice({2, 2});
  for (const Plaquette& p : lat.plaquettes) {
    const Link& l1 = lat.links[p.links[0]];
    const Link& l4 = lat.links[p.links[3]];
    CHECK(l1.origin == p.origin);
    CHECK(l1.direction == p.dir_i);
    CHECK(l4.origin == p.origin);
    CHECK(l4.direction == p.dir_j);
    // (n+i, j) and (n+j, i)
    CHECK(lat.links[p.links[1]].origin == lat.neighbor(p.origin, p.dir_i));
    CHECK(lat.links[p.links[2]].origin == lat.neighbor(p.origin, p.dir_j));
  }
  // every plane appears L^d times
  CHECK(lat.n_plaquettes() == 4);
}

TEST_CASE("jw ordering is a serpentine bijection") {
  Lattice lat = build_lattice({2, 4});
  JWOrdering jw = lat.jw_ordering(1);
  std::vector<bool> seen(static_cast<size_t>(lat.n_sites()), false);
  for (const Site& s : lat.sites) {
    int m = jw.mode(s.index, 0);
    CHECK(!seen[static_cast<size_t>(m)]);
    seen[static_cast<size_t>(m)] = true;
  }
  // row 0 ascends, row 1 descends
  CHECK(jw.mode(lat.site_index({0, 0}), 0) == 0);
  CHECK(jw.mode(lat.site_index({3, 0}), 0) == 3);
  CHECK(jw.mode(lat.site_index({3, 1}), 0) == 4);
  CHECK(jw.mode(lat.site_index({0, 1}), 0) == 7);
}

TEST_CASE("jw z-strings") {
  // d=1 nearest neighbors adjacent on the path -> empty string
  Lattice lat = build_lattice({1, 4});
  JWOrdering jw = lat.jw_ordering(1);
  auto s0 = jw_z_string(lat, jw, lat.links[lat.link_index(0, 1)], 1, 1);
  CHECK(s0.empty());

  // d=2 vertical link from the row end: adjacent on the serpentine
  Lattice l2 = build_lattice({2, 2});
  JWOrdering jw2 = l2.jw_ordering(1);
  int vlink = l2.link_index(l2.site_index({0, 0}), 2);
  auto sv = jw_z_string(l2, jw2, l2.links[vlink], 1, 1);
  // modes: (0,0)=0,(1,0)=1,(1,1)=2,(0,1)=3: link (0,0)->(0,1) spans 0..3
  CHECK(sv.size() == 2);

  // string is symmetric in the link (set between endpoints)
  CHECK(sv == std::vector<int>{1, 2});

  // SU(2)-style: 2 colors per site, adjacent colors
  JWOrdering jw2c = lat.jw_ordering(2);
  int link01 = lat.link_index(1, 1);  // site 1 -> 2
  auto s12 = jw_z_string(lat, jw2c, lat.links[link01], 1, 2);
  // modes (1,1)=2,(1,2)=3,(2,1)=4,(2,2)=5: between (1,0-idx color0)=2 and (2,color1)=5
  CHECK(s12 == std::vector<int>{3, 4});
}
