#include "lgt/gatecost.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace lgt {

int weight(long long p) {
  if (p < 0) throw std::invalid_argument("weight: p >= 0");
  return std::popcount(static_cast<unsigned long long>(p));
}

namespace {
int flog2(long long x) {
  int e = -1;
  while (x) {
    x >>= 1;
    ++e;
  }
  return e;
}
}  // namespace

GateCostLedger cost_adder_inplace_classical(int n, bool* clamped) {
  GateCostLedger l;
  if (n < 3) {
    if (clamped) *clamped = true;
    l.t_count = 0;
  } else {
    if (clamped) *clamped = false;
    l.t_count = 4.0 * (n - 2);
  }
  l.workspace_ancilla = n;
  return l;
}

long long adder_outofplace_toffoli(int n) { return 5LL * n - 3 * flog2(n) - 4; }

GateCostLedger cost_adder_outofplace_log(int n) {
  if (n < 2) throw std::invalid_argument("cost_adder_outofplace_log: n >= 2");
  GateCostLedger l;
  l.t_count = 4.0 * adder_outofplace_toffoli(n);  // each Toffoli costs four T gates
  l.workspace_ancilla = n - flog2(n) - 1;
  return l;
}

GateCostLedger cost_multiplier(int n) {
  if (n < 1) throw std::invalid_argument("cost_multiplier: n >= 1");
  GateCostLedger l;
  l.t_count = 4.0 * n * (12 * n - 3 * flog2(n + 1) - 2);
  l.workspace_ancilla = 3 * (n + 1) - flog2(n + 1) - 1;
  return l;
}

GateCostLedger cost_weight_sum(long long p) {
  if (p < 1) throw std::invalid_argument("cost_weight_sum: p >= 1");
  GateCostLedger l;
  l.t_count = 4.0 * (p - weight(p));
  l.storage_ancilla = static_cast<double>(p - weight(p));
  l.rz_count = flog2(p) + 1;  // floor(log p) + 1 rotations
  return l;
}

double cost_rus_rz(double eps) {
  if (!(eps > 0) || !(eps < 1)) throw std::invalid_argument("cost_rus_rz: eps in (0,1)");
  return 1.15 * std::log2(1.0 / eps);
}

GateCostLedger cost_phase_gradient(int M, bool controlled) {
  if (M < 1) throw std::invalid_argument("cost_phase_gradient: M >= 1");
  GateCostLedger l;
  l.t_count = controlled ? 8.0 * M : 4.0 * M;  // O(1) fixed to 0 (model floor)
  return l;
}

double cost_phase_gradient_state(int M, double delta) {
  return 1.15 * M * std::log2(M / delta);
}

long long cost_mcx(int k, bool relative_phase, bool* interpolated) {
  if (k < 2) throw std::invalid_argument("cost_mcx: k >= 2");
  if (interpolated) *interpolated = false;
  if (relative_phase) {
    if (k == 2) return 4;
    if (k == 3) return 8;
  } else {
    switch (k) {
      case 3: return 15;
      case 5: return 31;
      case 10: return 71;
      case 15: return 119;
      case 31: return 239;
      default: break;
    }
  }
  if (interpolated) *interpolated = true;
  return 8LL * (k - 1) - 1;
}

long long cost_qsp_queries(double tau, double eps) {
  if (!(tau > 0) || !(eps > 0)) throw std::invalid_argument("cost_qsp_queries: tau, eps > 0");
  int q = 2;
  auto err = [&](int qq) {
    double v = 4.0;
    for (int i = 1; i <= qq; ++i) v *= tau / 2.0 / i;  // 4 tau^q / (2^q q!)
    return v;
  };
  while (err(q) > eps && q < 10000) ++q;
  return 2LL * (q - 1);
}

std::map<std::string, long long> cost_catalog_golden() {
  std::map<std::string, long long> g;
  for (int n : {3, 4, 5, 6, 8, 16}) g["adder_const_" + std::to_string(n)] = 4LL * (n - 2);
  for (int n : {2, 4, 8}) g["adder_log_toffoli_" + std::to_string(n)] = adder_outofplace_toffoli(n);
  for (int n : {1, 2, 4})
    g["multiplier_" + std::to_string(n)] = 4LL * n * (12 * n - 3 * flog2(n + 1) - 2);
  g["mcx_rel_2"] = 4;
  g["mcx_rel_3"] = 8;
  g["mcx_3"] = 15;
  g["mcx_5"] = 31;
  g["mcx_10"] = 71;
  g["mcx_15"] = 119;
  g["mcx_31"] = 239;
  for (long long p : {1LL, 4LL, 10LL}) g["weight_sum_" + std::to_string(p)] = 4 * (p - weight(p));
  g["queries_su2_kinetic_per_link"] = 64;
  g["queries_su2_magnetic_per_plaquette"] = 1048576;
  g["queries_su3_kinetic_per_link"] = 13872;
  g["queries_su3_magnetic_per_plaquette"] = 1470021852266496;
  g["incdec_su3_kinetic_per_link"] = 832;
  g["incdec_su3_magnetic_per_plaquette"] = 41977643008;
  g["tgates_su3_magnetic_incdec_per_eta_plus_1"] = 167910572032;
  return g;
}

}  // namespace lgt
