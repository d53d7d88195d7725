#include "lgt/circuit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace lgt {

void GateSequence::append(const GateSequence& o) {
  gates.insert(gates.end(), o.gates.begin(), o.gates.end());
  n_qubits = std::max(n_qubits, o.n_qubits);
}

QubitLayout QubitLayout::make(const Lattice& lat, int eta, int colors, int n_ancilla) {
  QubitLayout ql;
  JWOrdering jw = lat.jw_ordering(colors);
  int q = 0;
  ql.fermion_qubits.resize(static_cast<size_t>(jw.n_modes()));
  for (int m = 0; m < jw.n_modes(); ++m) ql.fermion_qubits[static_cast<size_t>(m)] = q++;
  ql.link_regs.resize(static_cast<size_t>(lat.n_links()));
  for (int l = 0; l < lat.n_links(); ++l)
    for (int k = 0; k < eta; ++k) ql.link_regs[static_cast<size_t>(l)].push_back(q++);
  ql.n_system = q;
  for (int k = 0; k < n_ancilla; ++k) ql.ancilla.push_back(q++);
  ql.n_qubits = q;
  return ql;
}

namespace {

inline bool bit(i64 x, int q) { return (x >> q) & 1; }

void apply_1q(std::vector<cplx>& st, int q, cplx u00, cplx u01, cplx u10, cplx u11) {
  const i64 n = static_cast<i64>(st.size());
  const i64 mask = i64(1) << q;
  for (i64 i = 0; i < n; ++i) {
    if (i & mask) continue;
    cplx a = st[static_cast<size_t>(i)], b = st[static_cast<size_t>(i | mask)];
    st[static_cast<size_t>(i)] = u00 * a + u01 * b;
    st[static_cast<size_t>(i | mask)] = u10 * a + u11 * b;
  }
}

}  // namespace

void apply_gate(const Gate& g, std::vector<cplx>& state, int n_qubits) {
  const i64 dim = static_cast<i64>(state.size());
  switch (g.kind) {
    case GateKind::X:
      apply_1q(state, g.qubits[0], 0, 1, 1, 0);
      return;
    case GateKind::H: {
      double s = 1.0 / std::sqrt(2.0);
      apply_1q(state, g.qubits[0], s, s, s, -s);
      return;
    }
    case GateKind::S:
      apply_1q(state, g.qubits[0], 1, 0, 0, cplx(0, 1));
      return;
    case GateKind::Sdg:
      apply_1q(state, g.qubits[0], 1, 0, 0, cplx(0, -1));
      return;
    case GateKind::Rz: {
      cplx p0 = std::exp(cplx(0, -g.angle / 2)), p1 = std::exp(cplx(0, g.angle / 2));
      apply_1q(state, g.qubits[0], p0, 0, 0, p1);
      return;
    }
    case GateKind::CNOT: {
      const i64 c = i64(1) << g.qubits[0], t = i64(1) << g.qubits[1];
      for (i64 i = 0; i < dim; ++i)
        if ((i & c) && !(i & t)) std::swap(state[static_cast<size_t>(i)], state[static_cast<size_t>(i | t)]);
      return;
    }
    case GateKind::SWAP: {
      const i64 a = i64(1) << g.qubits[0], b = i64(1) << g.qubits[1];
      for (i64 i = 0; i < dim; ++i)
        if ((i & a) && !(i & b))
          std::swap(state[static_cast<size_t>(i)], state[static_cast<size_t>(i ^ a ^ b)]);
      return;
    }
    case GateKind::CZ: {
      const i64 c = i64(1) << g.qubits[0], t = i64(1) << g.qubits[1];
      for (i64 i = 0; i < dim; ++i)
        if ((i & c) && (i & t)) state[static_cast<size_t>(i)] = -state[static_cast<size_t>(i)];
      return;
    }
    case GateKind::CPhase: {
      const i64 c = i64(1) << g.qubits[0], t = i64(1) << g.qubits[1];
      cplx ph = std::exp(cplx(0, g.angle));
      for (i64 i = 0; i < dim; ++i)
        if ((i & c) && (i & t)) state[static_cast<size_t>(i)] *= ph;
      return;
    }
    case GateKind::CCRx: {
      const i64 c1 = i64(1) << g.qubits[0], c2 = i64(1) << g.qubits[1];
      const i64 t = i64(1) << g.qubits[2];
      cplx cc = std::cos(g.angle / 2), ss = cplx(0, -1) * std::sin(g.angle / 2);
      for (i64 i = 0; i < dim; ++i) {
        if (!(i & c1) || !(i & c2) || (i & t)) continue;
        cplx a = state[static_cast<size_t>(i)], b = state[static_cast<size_t>(i | t)];
        state[static_cast<size_t>(i)] = cc * a + ss * b;
        state[static_cast<size_t>(i | t)] = ss * a + cc * b;
      }
      return;
    }
    case GateKind::MCRz: {
      const int nq = static_cast<int>(g.qubits.size());
      const i64 t = i64(1) << g.qubits[nq - 1];
      cplx p0 = std::exp(cplx(0, -g.angle / 2)), p1 = std::exp(cplx(0, g.angle / 2));
      for (i64 i = 0; i < dim; ++i) {
        bool ok = true;
        for (int k = 0; k < nq - 1 && ok; ++k) {
          bool want = g.polarity.empty() ? true : g.polarity[static_cast<size_t>(k)];
          if (bit(i, g.qubits[static_cast<size_t>(k)]) != want) ok = false;
        }
        if (ok) state[static_cast<size_t>(i)] *= (i & t) ? p1 : p0;
      }
      return;
    }
    case GateKind::PermBox: {
      std::vector<cplx> out(state.size(), cplx(0, 0));
      std::vector<i64> vals(g.regs.size());
      for (i64 i = 0; i < dim; ++i) {
        if (state[static_cast<size_t>(i)] == cplx(0, 0)) continue;
        for (size_t rI = 0; rI < g.regs.size(); ++rI) {
          i64 v = 0;
          for (size_t k = 0; k < g.regs[rI].size(); ++k)
            if (bit(i, g.regs[rI][k])) v |= i64(1) << k;
          vals[rI] = v;
        }
        g.perm(vals);
        i64 j = i;
        for (size_t rI = 0; rI < g.regs.size(); ++rI)
          for (size_t k = 0; k < g.regs[rI].size(); ++k) {
            i64 msk = i64(1) << g.regs[rI][k];
            if ((vals[rI] >> k) & 1)
              j |= msk;
            else
              j &= ~msk;
          }
        out[static_cast<size_t>(j)] += state[static_cast<size_t>(i)];
      }
      state.swap(out);
      return;
    }
    case GateKind::DiagBox: {
      std::vector<i64> vals(g.regs.size());
      for (i64 i = 0; i < dim; ++i) {
        if (state[static_cast<size_t>(i)] == cplx(0, 0)) continue;
        for (size_t rI = 0; rI < g.regs.size(); ++rI) {
          i64 v = 0;
          for (size_t k = 0; k < g.regs[rI].size(); ++k)
            if (bit(i, g.regs[rI][k])) v |= i64(1) << k;
          vals[rI] = v;
        }
        state[static_cast<size_t>(i)] *= std::exp(cplx(0, g.phase(vals)));
      }
      return;
    }
  }
  (void)n_qubits;
  throw std::logic_error("apply_gate: unhandled gate kind");
}

void apply_sequence(const GateSequence& seq, std::vector<cplx>& state) {
  for (const Gate& g : seq.gates) apply_gate(g, state, seq.n_qubits);
}

SimResult simulate(const GateSequence& seq, int n_system, int cap) {
  if (seq.n_qubits > cap)
    throw std::invalid_argument("simulate: " + std::to_string(seq.n_qubits) +
                                " qubits exceeds the cap of " + std::to_string(cap));
  const i64 sys_dim = i64(1) << n_system;
  const i64 dim = i64(1) << seq.n_qubits;
  SimResult res;
  res.system_unitary = CMat::Zero(sys_dim, sys_dim);
  res.ancilla_leak = 0;
  std::vector<cplx> st(static_cast<size_t>(dim));
  for (i64 colv = 0; colv < sys_dim; ++colv) {
    std::fill(st.begin(), st.end(), cplx(0, 0));
    st[static_cast<size_t>(colv)] = 1.0;  // ancillas (high bits) start at 0
    apply_sequence(seq, st);
    double leak = 0;
    for (i64 i = 0; i < dim; ++i) {
      if (st[static_cast<size_t>(i)] == cplx(0, 0)) continue;
      if (i < sys_dim)
        res.system_unitary(i, colv) = st[static_cast<size_t>(i)];
      else
        leak += std::norm(st[static_cast<size_t>(i)]);
    }
    res.ancilla_leak = std::max(res.ancilla_leak, std::sqrt(leak));
  }
  return res;
}

GateCostLedger audit_costs(const GateSequence& seq) {
  GateCostLedger l;
  for (const Gate& g : seq.gates) {
    switch (g.kind) {
      case GateKind::Rz:
        l.rz_count += 1;
        break;
      case GateKind::CPhase:
        l.rz_count += 1;  // counted as one synthesized rotation
        break;
      case GateKind::CCRx:
        // two uncontrolled Rz and two relative-phase Toffolis at 4 T each
        l.rz_count += 2;
        l.t_count += 8;
        break;
      case GateKind::MCRz: {
        int k = static_cast<int>(g.qubits.size()) - 1;
        l.rz_count += 2;
        if (k > 0) l.t_count += 2.0 * cost_mcx(std::max(2, k), k <= 3);
        break;
      }
      case GateKind::PermBox:
      case GateKind::DiagBox:
        l += g.box_cost;
        break;
      default:
        l.clifford_count += 1;
        break;
    }
  }
  return l;
}

void dump_sequence(std::ostream& os, const GateSequence& seq) {
  auto name = [](GateKind k) {
    switch (k) {
      case GateKind::X: return "X";
      case GateKind::H: return "H";
      case GateKind::S: return "S";
      case GateKind::Sdg: return "SDG";
      case GateKind::CNOT: return "CNOT";
      case GateKind::CZ: return "CZ";
      case GateKind::SWAP: return "SWAP";
      case GateKind::CPhase: return "CPHASE";
      case GateKind::Rz: return "RZ";
      case GateKind::CCRx: return "CCRX";
      case GateKind::MCRz: return "MCRZ";
      case GateKind::PermBox: return "PERM";
      case GateKind::DiagBox: return "DIAG";
    }
    return "?";
  };
  for (const Gate& g : seq.gates) {
    os << name(g.kind);
    if (g.kind == GateKind::PermBox || g.kind == GateKind::DiagBox) {
      os << " " << g.box_name;
      for (const auto& reg : g.regs) {
        os << " [";
        for (size_t k = 0; k < reg.size(); ++k) os << (k ? "," : "") << reg[k];
        os << "]";
      }
      os << "\n";
      continue;
    }
    os << " ";
    for (size_t k = 0; k < g.qubits.size(); ++k) os << (k ? "," : "") << g.qubits[k];
    if (g.kind == GateKind::Rz || g.kind == GateKind::CPhase || g.kind == GateKind::CCRx ||
        g.kind == GateKind::MCRz)
      os << " " << g.angle;
    os << "\n";
  }
}

namespace {
double op_norm(const CMat& m) {
  if (m.rows() <= 256) {
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  }
  // power iteration on m^dag m (deterministic start)
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(m.cols());
  v /= v.norm();
  double s = 0;
  for (int it = 0; it < 300; ++it) {
    Eigen::VectorXcd w = m.adjoint() * (m * v);
    double ns = std::sqrt(w.norm());
    if (w.norm() < 1e-30) return 0;
    v = w / w.norm();
    if (it > 20 && std::abs(ns - s) < 1e-12 * std::max(1.0, ns)) return ns;
    s = ns;
  }
  return s;
}
}  // namespace

double unitary_distance_up_to_phase(const CMat& u, const CMat& v) {
  cplx tr = (v.adjoint() * u).trace();
  cplx ph = std::abs(tr) > 0 ? tr / std::abs(tr) : cplx(1, 0);
  return op_norm(u - ph * v);
}

}  // namespace lgt
