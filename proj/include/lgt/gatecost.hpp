#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "lgt/linkops.hpp"

namespace lgt {

// Additive T/Rz/Clifford tally; workspace ancillas compose by max, storage
// ancillas add.
struct GateCostLedger {
  double t_count = 0;
  double rz_count = 0;
  double clifford_count = 0;
  double storage_ancilla = 0;
  double workspace_ancilla = 0;

  GateCostLedger& operator+=(const GateCostLedger& o) {
    t_count += o.t_count;
    rz_count += o.rz_count;
    clifford_count += o.clifford_count;
    storage_ancilla += o.storage_ancilla;
    workspace_ancilla = std::max(workspace_ancilla, o.workspace_ancilla);
    return *this;
  }
  friend GateCostLedger operator+(GateCostLedger a, const GateCostLedger& b) { return a += b; }
};

int weight(long long p);  // population count

// in-place adder of a classically known constant / incrementer: 4(n-2) T,
// n reusable ancillas; n < 3 clamps to 0 with a flag
GateCostLedger cost_adder_inplace_classical(int n, bool* clamped = nullptr);
// out-of-place log-depth adder: Toffoli count 5n - 3 floor(log n) - 4
GateCostLedger cost_adder_outofplace_log(int n);
long long adder_outofplace_toffoli(int n);
// squaring an (n+1)-bit value: 4n(12n - 3 floor(log(n+1)) - 2) T
GateCostLedger cost_multiplier(int n);
// weight-sum trick on p equal-angle Rz gates
GateCostLedger cost_weight_sum(long long p);
// RUS synthesis T count for one Rz at accuracy eps
double cost_rus_rz(double eps);
// phase-gradient addition (4M or 8M T controlled); gadget prep 1.15 M log2(M/delta)
GateCostLedger cost_phase_gradient(int M, bool controlled);
double cost_phase_gradient_state(int M, double delta);
// multi-controlled X/Toffoli T counts; quoted table values, interpolation
// 8(k-1)-1 elsewhere (flagged model assumption)
long long cost_mcx(int k, bool relative_phase, bool* interpolated = nullptr);
// QSP query count: smallest q >= 2 with 4 tau^q / (2^q q!) <= eps, queries 2(q-1)
long long cost_qsp_queries(double tau, double eps);

// quoted-constant regression table: (primitive, width) -> T count
std::map<std::string, long long> cost_catalog_golden();

}  // namespace lgt
