#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lgt {

// d-dimensional periodic cubic lattice with L sites per direction.
struct LatticeSpec {
  int d = 1;
  int L = 2;
};

struct Site {
  std::vector<int> coords;  // size d, each in [0, L)
  int index = 0;            // lexicographic rank
  int parity = 0;           // (-1)^{sum coords}: 0 = even, 1 = odd
};

struct Link {
  int origin = 0;     // site index
  int direction = 1;  // in [1, d]
  bool edge = false;  // periodic-wrap link (origin coord in `direction` == L-1)
  int index = 0;
};

struct Plaquette {
  int origin = 0;
  int dir_i = 1, dir_j = 2;        // plane, dir_i < dir_j
  std::array<int, 4> links{};      // (n,i), (n+i,j), (n+j,i), (n,j)
  std::array<bool, 4> forward{};   // orientation: true for U, false for U^dag
  int index = 0;
};

// Zigzag (boustrophedon) Jordan-Wigner ordering. `colors` fermion modes per
// site, colors at a site adjacent on the path.
struct JWOrdering {
  int colors = 1;
  std::vector<int> mode_of;  // site*colors + color  ->  mode index
  std::vector<int> site_of;  // mode -> site
  std::vector<int> color_of; // mode -> color (0-based)

  int mode(int site, int color) const { return mode_of[site * colors + color]; }
  int n_modes() const { return static_cast<int>(mode_of.size()); }
};

struct Lattice {
  LatticeSpec spec;
  std::vector<Site> sites;
  std::vector<Plaquette> plaquettes;
  std::vector<Link> links;

  int n_sites() const { return static_cast<int>(sites.size()); }
  int n_links() const { return static_cast<int>(links.size()); }
  int n_plaquettes() const { return static_cast<int>(plaquettes.size()); }

  int site_index(const std::vector<int>& coords) const;
  // neighbor of `site` one step in `direction` (1-based), periodic
  int neighbor(int site, int direction) const;
  int link_index(int origin, int direction) const;

  JWOrdering jw_ordering(int colors) const;
};

Lattice build_lattice(const LatticeSpec& spec);

// Fermion-mode indices strictly between the two endpoint modes of `link`
// (colors alpha at origin, beta at head), ascending. 1-based colors.
std::vector<int> jw_z_string(const Lattice& lat, const JWOrdering& jw,
                             const Link& link, int alpha, int beta);

}  // namespace lgt
