#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lgt/gatecost.hpp"
#include "lgt/hamiltonian.hpp"

namespace lgt {

using cplx = std::complex<double>;

enum class GateKind {
  X, H, S, Sdg, CNOT, CZ, SWAP,
  CPhase,   // diag(1,1,1,e^{i angle}) on (control, target)
  Rz,       // exp(-i angle Z/2)
  CCRx,     // doubly-controlled exp(-i angle X/2)
  MCRz,     // multi-controlled Rz (controls with polarities, target last)
  PermBox,  // reversible-arithmetic block: bijection on register values
  DiagBox,  // diagonal-phase block: phase(register values) in radians
};

struct Gate {
  GateKind kind;
  std::vector<int> qubits;          // controls first, target last
  std::vector<bool> polarity;       // MCRz control polarities (default all-1)
  double angle = 0;
  // black boxes: registers as qubit lists (LSB first), concatenated
  std::vector<std::vector<int>> regs;
  std::function<void(std::vector<i64>&)> perm;       // in-place on register values
  std::function<double(const std::vector<i64>&)> phase;
  std::string box_name;
  GateCostLedger box_cost;
};

struct GateSequence {
  int n_qubits = 0;
  std::vector<Gate> gates;

  void append(const GateSequence& o);
};

// Register map for a lattice circuit: per-link registers (LSB first),
// fermion qubits by JW mode, ancilla pool.
struct QubitLayout {
  int n_qubits = 0;
  int n_system = 0;  // link + fermion qubits; ancillas above this index
  std::vector<std::vector<int>> link_regs;
  std::vector<int> fermion_qubits;
  std::vector<int> ancilla;

  static QubitLayout make(const Lattice& lat, int eta, int colors, int n_ancilla);
};

void apply_gate(const Gate& g, std::vector<cplx>& state, int n_qubits);
void apply_sequence(const GateSequence& seq, std::vector<cplx>& state);

struct SimResult {
  CMat system_unitary;   // 2^n_system x 2^n_system, ancillas in/out |0..0>
  double ancilla_leak;   // max column norm escaping the ancilla-zero sector
};

// Exact simulation; rejects above the qubit cap.
SimResult simulate(const GateSequence& seq, int n_system, int cap = 22);

GateCostLedger audit_costs(const GateSequence& seq);

// one line per gate: "KIND q0[,q1,...] [angle]"; boxes serialized with the
// function identifier and register map
void dump_sequence(std::ostream& os, const GateSequence& seq);

// distance min_phi || U - e^{i phi} V ||
double unitary_distance_up_to_phase(const CMat& u, const CMat& v);

}  // namespace lgt
