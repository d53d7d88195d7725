#pragma once

#include "lgt/circuit.hpp"
#include "lgt/estimator.hpp"

namespace lgt {

// Gate-level synthesis of the U(1) Trotter-step circuits on the encoded
// qubit basis. Lambda must be a power of two so the link register is exactly
// eta = log2(2 Lambda) qubits and the cyclic raiser is a binary incrementer.

struct SynthContext {
  Lattice lat;
  QubitLayout layout;
  int Lambda = 1;
  int eta = 1;
  double qsp_eps = 1e-10;  // charged per diagonal-phase block query

  static SynthContext make(const LatticeSpec& spec, int Lambda, int n_ancilla);
};

// e^{-i H_M t}; weight-sum variant uses floor(log2 L^d)+1 Rz gates
GateSequence synth_mass_step(const SynthContext& cx, double m, double t, bool weight_sum);

// e^{-i H_E t}; Variant::PhaseGradient requires g^2 t/(2 a^{d-2}) = pi/2^M
GateSequence synth_electric_step(const SynthContext& cx, double g, double a, double t,
                                 Variant variant);

// one kinetic stage (T14 or T23) for the (direction p_index, parity) group;
// the full step is the ordered product over groups of [T14, T23] stages
GateSequence synth_kinetic_stage(const SynthContext& cx, double a, double t, int p_index,
                                 int parity, bool stage23);
GateSequence synth_kinetic_step_blockdiag(const SynthContext& cx, double a, double t);

// method 2: QFT-diagonalized factors; whole step is first-order in the
// cos/sin split per link
GateSequence synth_kinetic_factor_qft(const SynthContext& cx, double a, double t, int link,
                                      bool sin_factor);
GateSequence synth_kinetic_step_qft(const SynthContext& cx, double a, double t);

// method 1: 16-factor Gray-code product per plaquette
GateSequence synth_magnetic_factor_gray(const SynthContext& cx, double g, double a, double t,
                                        int plaquette, int gray_index);
GateSequence synth_magnetic_step_gray(const SynthContext& cx, double g, double a, double t);

// method 2: exact F^{x4}-diagonalized step (no Trotter split)
GateSequence synth_magnetic_step_qft(const SynthContext& cx, double g, double a, double t);

// undo of the cyclic-wrap matrix elements of one link's kinetic stage
GateSequence synth_wrap_correction(const SynthContext& cx, double a, double t, int link);

// F on one link register, F|j> = 2^{-eta/2} sum_k e^{2 pi i jk/2^eta}|k>
GateSequence qft_register(const std::vector<int>& reg);
GateSequence qft_register_inverse(const std::vector<int>& reg);

// e^{-i theta (|tgt><src| + h.c.)} for a product ladder string: source bit
// pattern `src` over `qubits`, target is the complement.
GateSequence ladder_string_exp(const std::vector<int>& qubits, const std::vector<bool>& src,
                               double theta);

// basis permutation between circuit bit order and HilbertLayout index order
std::vector<i64> circuit_to_hilbert_perm(const Lattice& lat, const HilbertLayout& hl,
                                         const QubitLayout& layout);

}  // namespace lgt
