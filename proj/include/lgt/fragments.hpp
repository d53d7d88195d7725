#pragma once

#include <string>
#include <vector>

#include "lgt/hamiltonian.hpp"

namespace lgt {

enum class Family { Mass, Electric, Kinetic, Magnetic };

struct Fragment {
  std::string label;
  Family family = Family::Kinetic;
  HermitianOp op;  // pure diagonal or pure off-diagonal by construction
};

// Ordered Trotter fragment list. U(1): mass, electric, kinetic groups by
// (edge/bulk direction, parity) split into T^(1,4)/T^(2,3), magnetic by
// (plane, parity). SU(2)/SU(3): mass, electric, then the T list (kinetic
// pieces keyed by Gray-coded ladder exponents and color/branch labels);
// the L magnetic list is materialized only when plaquettes exist and the
// space is small enough to hold matrices.
struct TermSequence {
  Group group;
  std::vector<Fragment> fragments;

  size_t size() const { return fragments.size(); }
};

TermSequence build_term_sequence(const Lattice& lat, const HilbertLayout& hl,
                                 const LinkSpace& ls, const SimParams& p);

// Fragment-label counts without matrices (structure checks).
i64 term_sequence_label_count(Group g, int d);
i64 kinetic_piece_count(Group g, int d);   // |T|: 8d(U1 groups) / 2^7 d / 27744 d
i64 magnetic_piece_count(Group g, int d);  // |L|

}  // namespace lgt
