#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lgt/fixedpoint.hpp"
#include "lgt/linkops.hpp"

namespace lgt {

enum class Variant { RzPhase, PhaseGradient };

struct SimulationParams {
  Group group = Group::U1;
  int d = 1;
  int L = 2;
  int Lambda = 1;
  double g = 1, a = 1, m = 1;
  double T = 1;
  double eps_total = 1e-8;
  Variant variant = Variant::RzPhase;
  std::optional<int> pg_M;  // pins the phase-gradient adder width (testing knob)
};

struct OracleTCount {
  Group group;
  HamTerm term;
  int eta = 0, b = 0, c = 0;
  long long t_per_query = 0;
};

// exact transcription, organized by pipeline stage; must equal the linear
// transcription bit-for-bit
long long oracle_t_linear(Group g, HamTerm term, int eta, int b, int c);
OracleTCount oracle_tcount(Group g, HamTerm term, int eta, int b, int c);

struct ResourceEstimate {
  SimulationParams input;
  double rho = 0;
  double r = 0;
  std::map<std::string, double> epsilon_split;  // sums to eps_total
  double eps_rz = 0;
  double cost_rz = 0;
  int eta = 0;
  int bK = 0, cK = 0, bB = 0, cB = 0;
  double t_total = 0;
  std::map<std::string, double> t_by_term;
  double qubits_register = 0, qubits_ancilla = 0, qubits_total = 0;
  std::vector<std::string> flags;
};

ResourceEstimate estimate(const SimulationParams& p);

struct UnaryRecord {
  Group group;
  HamTerm term;
  std::string unary_class;   // prior-art scaling in Lambda
  std::string binary_class;  // this work
  double u1_rz_census = 0;   // concrete d L^d Lambda count, U(1) electric only
};

UnaryRecord estimate_unary(Group g, HamTerm term, int Lambda, int d, int L, double eps);

struct SweepResult {
  std::vector<ResourceEstimate> grid;
  size_t argmax = 0;
};

SweepResult sweep(const SimulationParams& base, const std::vector<double>& ms,
                  const std::vector<double>& gs);

}  // namespace lgt
