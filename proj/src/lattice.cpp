#include "lgt/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace lgt {

int Lattice::site_index(const std::vector<int>& coords) const {
  int idx = 0;
  for (int i = spec.d - 1; i >= 0; --i) idx = idx * spec.L + coords[i];
  return idx;
}

int Lattice::neighbor(int site, int direction) const {
  std::vector<int> c = sites[site].coords;
  c[direction - 1] = (c[direction - 1] + 1) % spec.L;
  return site_index(c);
}

int Lattice::link_index(int origin, int direction) const {
  return origin * spec.d + (direction - 1);
}

Lattice build_lattice(const LatticeSpec& spec) {
  if (spec.d < 1) throw std::invalid_argument("build_lattice: d must be >= 1");
  if (spec.L < 2) throw std::invalid_argument("build_lattice: L must be >= 2");

  Lattice lat;
  lat.spec = spec;

  std::int64_t n = 1;
  for (int i = 0; i < spec.d; ++i) n *= spec.L;
  lat.sites.resize(static_cast<size_t>(n));
  for (std::int64_t s = 0; s < n; ++s) {
    Site& site = lat.sites[static_cast<size_t>(s)];
    site.index = static_cast<int>(s);
    site.coords.resize(spec.d);
    std::int64_t rem = s;
    int psum = 0;
    for (int i = 0; i < spec.d; ++i) {
      site.coords[i] = static_cast<int>(rem % spec.L);
      psum += site.coords[i];
      rem /= spec.L;
    }
    site.parity = psum & 1;
  }

  lat.links.reserve(static_cast<size_t>(n) * spec.d);
  for (std::int64_t s = 0; s < n; ++s) {
    for (int dir = 1; dir <= spec.d; ++dir) {
      Link lk;
      lk.origin = static_cast<int>(s);
      lk.direction = dir;
      lk.edge = (lat.sites[static_cast<size_t>(s)].coords[dir - 1] == spec.L - 1);
      lk.index = static_cast<int>(lat.links.size());
      lat.links.push_back(lk);
    }
  }

  for (std::int64_t s = 0; s < n; ++s) {
    for (int i = 1; i <= spec.d; ++i) {
      for (int j = i + 1; j <= spec.d; ++j) {
        Plaquette p;
        p.origin = static_cast<int>(s);
        p.dir_i = i;
        p.dir_j = j;
        int ni = lat.neighbor(p.origin, i);
        int nj = lat.neighbor(p.origin, j);
        p.links = {lat.link_index(p.origin, i), lat.link_index(ni, j),
                   lat.link_index(nj, i), lat.link_index(p.origin, j)};
        p.forward = {true, true, false, false};
        p.index = static_cast<int>(lat.plaquettes.size());
        lat.plaquettes.push_back(p);
      }
    }
  }
  return lat;
}

JWOrdering Lattice::jw_ordering(int colors) const {
  JWOrdering jw;
  jw.colors = colors;
  jw.mode_of.assign(sites.size() * colors, -1);
  jw.site_of.assign(sites.size() * colors, -1);
  jw.color_of.assign(sites.size() * colors, -1);

  // Serpentine rank: direction 1 is the fastest axis; each axis reverses
  // whenever the running rank of the higher axes is odd.
  for (const Site& s : sites) {
    std::int64_t rank = 0;
    for (int i = spec.d - 1; i >= 0; --i) {
      int c = (rank & 1) ? (spec.L - 1 - s.coords[i]) : s.coords[i];
      rank = rank * spec.L + c;
    }
    for (int col = 0; col < colors; ++col) {
      int mode = static_cast<int>(rank) * colors + col;
      jw.mode_of[s.index * colors + col] = mode;
      jw.site_of[mode] = s.index;
      jw.color_of[mode] = col;
    }
  }
  return jw;
}

std::vector<int> jw_z_string(const Lattice& lat, const JWOrdering& jw,
                             const Link& link, int alpha, int beta) {
  int a = jw.mode(link.origin, alpha - 1);
  int b = jw.mode(lat.neighbor(link.origin, link.direction), beta - 1);
  if (a > b) std::swap(a, b);
  std::vector<int> between;
  for (int m = a + 1; m < b; ++m) between.push_back(m);
  return between;
}

}  // namespace lgt
