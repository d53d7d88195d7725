#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "lgt/fragments.hpp"

namespace lgt {

// Finest block decomposition preserved by every fragment: connected
// components of the union of all off-diagonal sparsity patterns. Both
// exp(-iHT) and the product formula are block-diagonal over these, so the
// spectral norm of their difference is the max over blocks.
struct ComponentSplit {
  i64 dim = 0;
  std::vector<std::int32_t> comp_of;   // state -> component id
  std::vector<std::int32_t> members;   // states grouped by component
  std::vector<i64> offsets;            // component -> [offsets[c], offsets[c+1])
  std::vector<std::int32_t> by_size;   // component ids, size-descending

  i64 n_components() const { return static_cast<i64>(offsets.size()) - 1; }
  i64 size_of(i64 c) const { return offsets[c + 1] - offsets[c]; }
};

ComponentSplit split_components(const TermSequence& seq, i64 dim);

struct ErrorRequest {
  double T = 1.0;
  int r = 1;
};

struct TrotterErrorOptions {
  i64 max_components = -1;   // evaluate this many largest blocks; -1 = all
  int lanczos_max = 60;
  double lanczos_tol = 1e-7;
  int dense_eig_cap = 700;   // dense symmetric eigensolver below this size
  unsigned seed = 12345;
};

struct TrotterErrorResult {
  double T = 0;
  int r = 0;
  double error = 0;    // max over evaluated blocks of ||exp(-iH_cT) - U2(t)^r||
  i64 components_evaluated = 0;
  i64 components_total = 0;
  i64 states_covered = 0;
  i64 states_total = 0;
};

std::vector<TrotterErrorResult> empirical_trotter_error_multi(
    const TermSequence& seq, const std::vector<ErrorRequest>& reqs,
    const TrotterErrorOptions& opts = {});

double empirical_trotter_error(const TermSequence& seq, double T, int r,
                               const TrotterErrorOptions& opts = {});

}  // namespace lgt
