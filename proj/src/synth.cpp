#include "lgt/synth.hpp"

#include <cmath>
#include <stdexcept>

namespace lgt {

namespace {

bool is_pow2(int x) { return x > 0 && (x & (x - 1)) == 0; }

Gate g1(GateKind k, int q, double angle = 0) {
  Gate g;
  g.kind = k;
  g.qubits = {q};
  g.angle = angle;
  return g;
}

Gate g2(GateKind k, int a, int b, double angle = 0) {
  Gate g;
  g.kind = k;
  g.qubits = {a, b};
  g.angle = angle;
  return g;
}

}  // namespace

SynthContext SynthContext::make(const LatticeSpec& spec, int Lambda, int n_ancilla) {
  if (!is_pow2(Lambda))
    throw std::invalid_argument("synth: Lambda must be a power of two for an exact register");
  SynthContext cx;
  cx.lat = build_lattice(spec);
  cx.Lambda = Lambda;
  cx.eta = 0;
  while ((1 << cx.eta) < 2 * Lambda) ++cx.eta;
  cx.layout = QubitLayout::make(cx.lat, cx.eta, 1, n_ancilla);
  return cx;
}

std::vector<i64> circuit_to_hilbert_perm(const Lattice& lat, const HilbertLayout& hl,
                                         const QubitLayout& layout) {
  const i64 dim = i64(1) << layout.n_system;
  if (dim != hl.dim) throw std::invalid_argument("layout/hilbert dimension mismatch");
  std::vector<i64> perm(static_cast<size_t>(dim));
  for (i64 c = 0; c < dim; ++c) {
    i64 f = 0;
    for (size_t m = 0; m < layout.fermion_qubits.size(); ++m)
      if ((c >> layout.fermion_qubits[m]) & 1) f |= i64(1) << m;
    i64 lp = 0;
    for (int l = 0; l < lat.n_links(); ++l) {
      i64 v = 0;
      const auto& reg = layout.link_regs[static_cast<size_t>(l)];
      for (size_t k = 0; k < reg.size(); ++k)
        if ((c >> reg[k]) & 1) v |= i64(1) << k;
      lp = lp * hl.link_dim + v;
    }
    perm[static_cast<size_t>(c)] = (lp << hl.n_modes) | f;
  }
  return perm;
}

GateSequence qft_register(const std::vector<int>& reg) {
  GateSequence s;
  const int n = static_cast<int>(reg.size());
  // F = (bit reversal) . prod_j [H_j . controlled phases]; qubit reg[k] is
  // weight 2^k
  for (int j = n - 1; j >= 0; --j) {
    s.gates.push_back(g1(GateKind::H, reg[static_cast<size_t>(j)]));
    for (int k = j - 1; k >= 0; --k)
      s.gates.push_back(g2(GateKind::CPhase, reg[static_cast<size_t>(k)],
                           reg[static_cast<size_t>(j)], M_PI / (1 << (j - k))));
  }
  for (int k = 0; k < n / 2; ++k)
    s.gates.push_back(g2(GateKind::SWAP, reg[static_cast<size_t>(k)],
                         reg[static_cast<size_t>(n - 1 - k)]));
  return s;
}

GateSequence qft_register_inverse(const std::vector<int>& reg) {
  GateSequence f = qft_register(reg);
  GateSequence s;
  for (auto it = f.gates.rbegin(); it != f.gates.rend(); ++it) {
    Gate g = *it;
    if (g.kind == GateKind::CPhase) g.angle = -g.angle;
    s.gates.push_back(g);  // H, SWAP self-inverse
  }
  return s;
}

GateSequence ladder_string_exp(const std::vector<int>& qubits, const std::vector<bool>& src,
                               double theta) {
  const int k = static_cast<int>(qubits.size());
  if (k < 2) throw std::invalid_argument("ladder_string_exp: need >= 2 qubits");
  GateSequence net;
  const int t = 0;  // target position
  // CNOT network: map {src, ~src} onto a pair differing only at the target
  int kprime = -1;
  for (int j = 1; j < k; ++j)
    if (src[static_cast<size_t>(j)] != src[0]) { kprime = j; break; }
  for (int j = 1; j < k; ++j)
    if (src[static_cast<size_t>(j)] != src[0])
      net.gates.push_back(g2(GateKind::CNOT, qubits[0], qubits[static_cast<size_t>(j)]));
  if (kprime >= 0)
    for (int j = 1; j < k; ++j)
      if (j != kprime && src[static_cast<size_t>(j)] == src[0])
        net.gates.push_back(
            g2(GateKind::CNOT, qubits[static_cast<size_t>(kprime)], qubits[static_cast<size_t>(j)]));
  if (kprime < 0)
    for (int j = 1; j < k; ++j)
      net.gates.push_back(g2(GateKind::CNOT, qubits[0], qubits[static_cast<size_t>(j)]));

  // track the two basis patterns through the network to find the control
  // polarities of the residual rotation
  auto track = [&](std::vector<bool> bits) {
    for (const Gate& g : net.gates) {
      int c = -1, tq = -1;
      for (int j = 0; j < k; ++j) {
        if (qubits[static_cast<size_t>(j)] == g.qubits[0]) c = j;
        if (qubits[static_cast<size_t>(j)] == g.qubits[1]) tq = j;
      }
      if (bits[static_cast<size_t>(c)]) bits[static_cast<size_t>(tq)] = !bits[static_cast<size_t>(tq)];
    }
    return bits;
  };
  std::vector<bool> a = track(src);
  std::vector<bool> bsrc(src.size());
  for (size_t i = 0; i < src.size(); ++i) bsrc[i] = !src[i];
  std::vector<bool> b = track(bsrc);
  for (int j = 1; j < k; ++j)
    if (a[static_cast<size_t>(j)] != b[static_cast<size_t>(j)])
      throw std::logic_error("ladder_string_exp: network failed to align patterns");
  if (a[0] == b[0]) throw std::logic_error("ladder_string_exp: target did not split");

  GateSequence s;
  s.gates = net.gates;
  s.gates.push_back(g1(GateKind::H, qubits[static_cast<size_t>(t)]));
  Gate mc;
  mc.kind = GateKind::MCRz;
  for (int j = 1; j < k; ++j) {
    mc.qubits.push_back(qubits[static_cast<size_t>(j)]);
    mc.polarity.push_back(a[static_cast<size_t>(j)]);
  }
  mc.qubits.push_back(qubits[static_cast<size_t>(t)]);
  mc.angle = 2 * theta;
  s.gates.push_back(mc);
  s.gates.push_back(g1(GateKind::H, qubits[static_cast<size_t>(t)]));
  for (auto it = net.gates.rbegin(); it != net.gates.rend(); ++it) s.gates.push_back(*it);
  return s;
}

// ---------------------------------------------------------------- mass ----

GateSequence synth_mass_step(const SynthContext& cx, double m, double t, bool weight_sum) {
  GateSequence s;
  s.n_qubits = cx.layout.n_qubits;
  JWOrdering jw = cx.lat.jw_ordering(1);
  if (!weight_sum) {
    for (const Site& site : cx.lat.sites) {
      double theta = -m * (site.parity == 0 ? 1.0 : -1.0) * t;
      s.gates.push_back(
          g1(GateKind::Rz, cx.layout.fermion_qubits[static_cast<size_t>(jw.mode(site.index, 0))],
             theta));
    }
    return s;
  }
  const long long p = cx.lat.n_sites();
  const int wbits = static_cast<int>(std::floor(std::log2(double(p)))) + 1;
  if (static_cast<int>(cx.layout.ancilla.size()) < wbits)
    throw std::invalid_argument("synth_mass_step: not enough ancillas for the weight register");
  std::vector<int> anc(cx.layout.ancilla.begin(), cx.layout.ancilla.begin() + wbits);
  // X on odd sites unifies the angle
  std::vector<int> odd_qubits;
  for (const Site& site : cx.lat.sites)
    if (site.parity == 1)
      odd_qubits.push_back(
          cx.layout.fermion_qubits[static_cast<size_t>(jw.mode(site.index, 0))]);
  for (int q : odd_qubits) s.gates.push_back(g1(GateKind::X, q));

  Gate wbox;
  wbox.kind = GateKind::PermBox;
  wbox.box_name = "weight_sum_" + std::to_string(p);
  std::vector<int> site_qubits;
  for (const Site& site : cx.lat.sites)
    site_qubits.push_back(cx.layout.fermion_qubits[static_cast<size_t>(jw.mode(site.index, 0))]);
  wbox.regs = {site_qubits, anc};
  wbox.perm = [](std::vector<i64>& v) {
    v[1] += std::popcount(static_cast<unsigned long long>(v[0]));
  };
  wbox.box_cost = cost_weight_sum(p);
  wbox.box_cost.rz_count = 0;  // rotations are explicit gates below
  s.gates.push_back(wbox);

  const double theta = -m * t;
  for (int kk = 0; kk < wbits; ++kk)
    s.gates.push_back(g1(GateKind::Rz, anc[static_cast<size_t>(kk)], theta * (1LL << kk)));

  Gate unbox = wbox;
  unbox.box_name = "weight_sum_uncompute";
  unbox.perm = [](std::vector<i64>& v) {
    v[1] -= std::popcount(static_cast<unsigned long long>(v[0]));
  };
  unbox.box_cost = GateCostLedger{};  // measurement-based uncompute
  s.gates.push_back(unbox);
  for (int q : odd_qubits) s.gates.push_back(g1(GateKind::X, q));
  return s;
}

// ------------------------------------------------------------- electric ---

GateSequence synth_electric_step(const SynthContext& cx, double g, double a, double t,
                                 Variant variant) {
  GateSequence s;
  s.n_qubits = cx.layout.n_qubits;
  const int eta = cx.eta;
  const int d = cx.lat.spec.d;
  const double coef = g * g / (2.0 * std::pow(a, d - 2));
  const int sq_bits = 2 * (eta + 1);
  const int half = 1 << (eta - 1);

  int M = 0;
  std::vector<int> gadget;
  if (variant == Variant::PhaseGradient) {
    double Mr = std::log2(M_PI / (coef * t));
    if (std::abs(Mr - std::round(Mr)) > 1e-9)
      throw std::invalid_argument(
          "synth_electric_step: phase gradient requires g^2 t/(2 a^{d-2}) = pi/2^M");
    M = static_cast<int>(std::round(Mr));
    if (M <= 2 * eta - 2)
      throw std::invalid_argument("synth_electric_step: phase gradient register too narrow");
  }

  int need = sq_bits + (variant == Variant::PhaseGradient ? M : 0);
  if (static_cast<int>(cx.layout.ancilla.size()) < need)
    throw std::invalid_argument("synth_electric_step: not enough ancillas");
  std::vector<int> anc(cx.layout.ancilla.begin(), cx.layout.ancilla.begin() + sq_bits);
  if (variant == Variant::PhaseGradient)
    gadget.assign(cx.layout.ancilla.begin() + sq_bits, cx.layout.ancilla.begin() + need);

  GateCostLedger box_cost;
  {
    bool clamp;
    box_cost = cost_adder_inplace_classical(eta, &clamp);
    box_cost += cost_multiplier(eta);
  }

  if (variant == Variant::PhaseGradient) {
    // one-time gadget state: H + per-qubit phase, |psi> = 2^{-M/2} sum_b e^{-i pi b/2^M}|b>
    for (int kk = 0; kk < M; ++kk) {
      s.gates.push_back(g1(GateKind::H, gadget[static_cast<size_t>(kk)]));
      s.gates.push_back(
          g1(GateKind::Rz, gadget[static_cast<size_t>(kk)], coef * t * (1LL << kk)));
    }
  }

  for (int l = 0; l < cx.lat.n_links(); ++l) {
    Gate box;
    box.kind = GateKind::PermBox;
    box.box_name = "square_shifted_eta" + std::to_string(eta);
    box.regs = {cx.layout.link_regs[static_cast<size_t>(l)], anc};
    box.perm = [half, sq_bits](std::vector<i64>& v) {
      i64 e = v[0] - half;
      v[1] = (v[1] + e * e) & ((i64(1) << sq_bits) - 1);
    };
    box.box_cost = box_cost;
    s.gates.push_back(box);

    if (variant == Variant::RzPhase) {
      for (int kk = 0; kk < sq_bits; ++kk)
        s.gates.push_back(
            g1(GateKind::Rz, anc[static_cast<size_t>(kk)], -coef * t * (1LL << kk)));
    } else {
      Gate add;
      add.kind = GateKind::PermBox;
      add.box_name = "phase_gradient_sub_M" + std::to_string(M);
      add.regs = {anc, gadget};
      add.perm = [M](std::vector<i64>& v) {
        v[1] = (v[1] - v[0]) & ((i64(1) << M) - 1);
      };
      add.box_cost = cost_phase_gradient(M, false);
      s.gates.push_back(add);
    }

    Gate unbox = box;
    unbox.box_name = box.box_name + "_uncompute";
    unbox.perm = [half, sq_bits](std::vector<i64>& v) {
      i64 e = v[0] - half;
      v[1] = (v[1] - e * e) & ((i64(1) << sq_bits) - 1);
    };
    unbox.box_cost = box_cost;  // arithmetic is recomputed to uncompute
    s.gates.push_back(unbox);
  }

  if (variant == Variant::PhaseGradient) {
    // return the gadget register to |0..0>
    for (int kk = M - 1; kk >= 0; --kk) {
      s.gates.push_back(
          g1(GateKind::Rz, gadget[static_cast<size_t>(kk)], -coef * t * (1LL << kk)));
      s.gates.push_back(g1(GateKind::H, gadget[static_cast<size_t>(kk)]));
    }
  }
  return s;
}

// -------------------------------------------------------------- kinetic ---

namespace {

GateSequence incdec_box(const SynthContext& cx, int link, bool inc) {
  GateSequence s;
  Gate box;
  box.kind = GateKind::PermBox;
  box.box_name = inc ? "increment" : "decrement";
  box.regs = {cx.layout.link_regs[static_cast<size_t>(link)]};
  const i64 mask = (i64(1) << cx.eta) - 1;
  if (inc)
    box.perm = [mask](std::vector<i64>& v) { v[0] = (v[0] + 1) & mask; };
  else
    box.perm = [mask](std::vector<i64>& v) { v[0] = (v[0] - 1) & mask; };
  bool clamp;
  box.box_cost = cost_adder_inplace_classical(cx.eta, &clamp);
  s.gates.push_back(box);
  return s;
}

}  // namespace

GateSequence synth_kinetic_stage(const SynthContext& cx, double a, double t, int p_index,
                                 int parity, bool stage23) {
  if (cx.lat.spec.L % 2 != 0) throw std::invalid_argument("synth_kinetic_stage: even L");
  GateSequence s;
  s.n_qubits = cx.layout.n_qubits;
  JWOrdering jw = cx.lat.jw_ordering(1);
  const int d = cx.lat.spec.d;
  const int dir = ((p_index - 1) % d) + 1;
  const bool edge = p_index <= d;
  for (const Link& lk : cx.lat.links) {
    if (lk.direction != dir || lk.edge != edge) continue;
    if (cx.lat.sites[lk.origin].parity != parity) continue;
    int head = cx.lat.neighbor(lk.origin, lk.direction);
    int fa = cx.layout.fermion_qubits[static_cast<size_t>(jw.mode(lk.origin, 0))];
    int fb = cx.layout.fermion_qubits[static_cast<size_t>(jw.mode(head, 0))];
    int j0 = cx.layout.link_regs[static_cast<size_t>(lk.index)][0];
    std::vector<int> zstring;
    for (int mode : jw_z_string(cx.lat, jw, lk, 1, 1))
      zstring.push_back(cx.layout.fermion_qubits[static_cast<size_t>(mode)]);

    if (stage23) s.append(incdec_box(cx, lk.index, true));
    for (int zq : zstring) s.gates.push_back(g2(GateKind::CZ, zq, fb));
    s.gates.push_back(g2(GateKind::CNOT, fb, fa));
    s.gates.push_back(g2(GateKind::CNOT, fb, j0));
    Gate rx;
    rx.kind = GateKind::CCRx;
    rx.qubits = {j0, fa, fb};
    rx.angle = t / a;
    s.gates.push_back(rx);
    s.gates.push_back(g2(GateKind::CNOT, fb, j0));
    s.gates.push_back(g2(GateKind::CNOT, fb, fa));
    for (int zq : zstring) s.gates.push_back(g2(GateKind::CZ, zq, fb));
    if (stage23) s.append(incdec_box(cx, lk.index, false));
  }
  return s;
}

GateSequence synth_kinetic_step_blockdiag(const SynthContext& cx, double a, double t) {
  GateSequence s;
  s.n_qubits = cx.layout.n_qubits;
  const int d = cx.lat.spec.d;
  for (int p = 1; p <= 2 * d; ++p)
    for (int parity = 0; parity <= 1; ++parity) {
      s.append(synth_kinetic_stage(cx, a, t, p, parity, false));
      s.append(synth_kinetic_stage(cx, a, t, p, parity, true));
    }
  return s;
}

GateSequence synth_kinetic_factor_qft(const SynthContext& cx, double a, double t, int link,
                                      bool sin_factor) {
  GateSequence s;
  s.n_qubits = cx.layout.n_qubits;
  JWOrdering jw = cx.lat.jw_ordering(1);
  const Link& lk = cx.lat.links[static_cast<size_t>(link)];
  int head = cx.lat.neighbor(lk.origin, lk.direction);
  int fa = cx.layout.fermion_qubits[static_cast<size_t>(jw.mode(lk.origin, 0))];
  int fb = cx.layout.fermion_qubits[static_cast<size_t>(jw.mode(head, 0))];
  const auto& reg = cx.layout.link_regs[static_cast<size_t>(link)];
  std::vector<int> zstring;
  for (int mode : jw_z_string(cx.lat, jw, lk, 1, 1))
    zstring.push_back(cx.layout.fermion_qubits[static_cast<size_t>(mode)]);

  // diagonalize: F on the link register; Bell transform on the fermion pair
  // (S conjugation first for the sin factor)
  if (sin_factor) s.gates.push_back(g1(GateKind::S, fa));
  s.gates.push_back(g2(GateKind::CNOT, fa, fb));
  s.gates.push_back(g1(GateKind::H, fa));
  s.append(qft_register(reg));

  Gate diag;
  diag.kind = GateKind::DiagBox;
  diag.box_name = sin_factor ? "kinetic_sin_phase" : "kinetic_cos_phase";
  diag.regs = {reg, {fa}, {fb}, zstring};
  const int N = 1 << cx.eta;
  const double pref = -t / (8.0 * a);
  diag.phase = [pref, N, sin_factor](const std::vector<i64>& v) {
    double dc = sin_factor ? -2.0 * std::sin(2 * M_PI * v[0] / N)
                           : 2.0 * std::cos(2 * M_PI * v[0] / N);
    double df = 2.0 * v[2] * (v[1] ? -1.0 : 1.0);
    double zeta = (std::popcount(static_cast<unsigned long long>(v[3])) & 1) ? -1.0 : 1.0;
    return pref * dc * df * zeta;
  };
  diag.box_cost.t_count = 0;  // charged as QSP queries below
  {
    double tau = t / (2.0 * a);
    long long queries = cost_qsp_queries(std::abs(tau) > 0 ? std::abs(tau) : 1e-12, 1e-10);
    // each query: one controlled eta-qubit phase gradient + relative-phase Toffoli pair
    diag.box_cost.t_count = static_cast<double>(queries) * (8.0 * cx.eta + 16);
    diag.box_cost.rz_count = 3;  // serial QSP phase rotations
  }
  s.gates.push_back(diag);

  s.append(qft_register_inverse(reg));
  s.gates.push_back(g1(GateKind::H, fa));
  s.gates.push_back(g2(GateKind::CNOT, fa, fb));
  if (sin_factor) s.gates.push_back(g1(GateKind::Sdg, fa));
  return s;
}

GateSequence synth_kinetic_step_qft(const SynthContext& cx, double a, double t) {
  GateSequence s;
  s.n_qubits = cx.layout.n_qubits;
  const int d = cx.lat.spec.d;
  for (int p = 1; p <= 2 * d; ++p) {
    const int dir = ((p - 1) % d) + 1;
    const bool edge = p <= d;
    for (int parity = 0; parity <= 1; ++parity)
      for (const Link& lk : cx.lat.links) {
        if (lk.direction != dir || lk.edge != edge) continue;
        if (cx.lat.sites[lk.origin].parity != parity) continue;
        s.append(synth_kinetic_factor_qft(cx, a, t, lk.index, false));
        s.append(synth_kinetic_factor_qft(cx, a, t, lk.index, true));
      }
  }
  return s;
}

// ------------------------------------------------------------- magnetic ---

namespace {
int gray_code(int k) { return k ^ (k >> 1); }
}  // namespace

GateSequence synth_magnetic_factor_gray(const SynthContext& cx, double g, double a, double t,
                                        int plaquette, int gray_index) {
  GateSequence s;
  s.n_qubits = cx.layout.n_qubits;
  const Plaquette& pl = cx.lat.plaquettes[static_cast<size_t>(plaquette)];
  const int d = cx.lat.spec.d;
  const double theta = -t / (2.0 * std::pow(a, 4 - d) * g * g);
  // R_box string: sigma^+ on bit0 of links 1,2; sigma^- on bit0 of links 3,4
  std::vector<int> qs;
  std::vector<bool> src;
  for (int q = 0; q < 4; ++q) {
    qs.push_back(cx.layout.link_regs[static_cast<size_t>(pl.links[static_cast<size_t>(q)])][0]);
    src.push_back(q >= 2);  // sigma^+ needs source 0, sigma^- source 1
  }
  (void)gray_index;
  GateSequence core = ladder_string_exp(qs, src, theta);
  s.append(core);
  return s;
}

GateSequence synth_magnetic_step_gray(const SynthContext& cx, double g, double a, double t) {
  if (cx.lat.spec.d < 2) throw std::invalid_argument("magnetic step needs d >= 2");
  GateSequence s;
  s.n_qubits = cx.layout.n_qubits;
  for (int i = 1; i <= cx.lat.spec.d; ++i)
    for (int j = i + 1; j <= cx.lat.spec.d; ++j)
      for (int parity = 0; parity <= 1; ++parity)
        for (const Plaquette& pl : cx.lat.plaquettes) {
          if (pl.dir_i != i || pl.dir_j != j) continue;
          if (cx.lat.sites[pl.origin].parity != parity) continue;
          int prev = 0;
          for (int k = 0; k < 16; ++k) {
            int gc = gray_code(k);
            int diff = gc ^ prev;
            if (diff) {
              int bitpos = 0;
              while (!((diff >> bitpos) & 1)) ++bitpos;
              int link = pl.links[static_cast<size_t>(3 - bitpos)];
              bool on = (gc >> bitpos) & 1;
              s.append(incdec_box(cx, link, on));
            }
            prev = gc;
            s.append(synth_magnetic_factor_gray(cx, g, a, t, pl.index, k));
          }
          // unwind the last Gray prefix (GC(15) = 1000)
          s.append(incdec_box(cx, pl.links[0], false));
        }
  return s;
}

GateSequence synth_magnetic_step_qft(const SynthContext& cx, double g, double a, double t) {
  if (cx.lat.spec.d < 2) throw std::invalid_argument("magnetic step needs d >= 2");
  GateSequence s;
  s.n_qubits = cx.layout.n_qubits;
  const int eta = cx.eta;
  const int d = cx.lat.spec.d;
  const int w12 = eta + 1, ws = eta + 2;
  if (static_cast<int>(cx.layout.ancilla.size()) < 2 * w12 + ws)
    throw std::invalid_argument("synth_magnetic_step_qft: not enough ancillas");
  std::vector<int> anc12(cx.layout.ancilla.begin(), cx.layout.ancilla.begin() + w12);
  std::vector<int> anc34(cx.layout.ancilla.begin() + w12, cx.layout.ancilla.begin() + 2 * w12);
  std::vector<int> ancs(cx.layout.ancilla.begin() + 2 * w12,
                        cx.layout.ancilla.begin() + 2 * w12 + ws);

  for (const auto& reg : cx.layout.link_regs) s.append(qft_register(reg));
  for (const Plaquette& pl : cx.lat.plaquettes) {
    GateCostLedger add_cost = cost_adder_outofplace_log(eta);
    Gate box;
    box.kind = GateKind::PermBox;
    box.box_name = "plaquette_adder_tree";
    box.regs = {cx.layout.link_regs[static_cast<size_t>(pl.links[0])],
                cx.layout.link_regs[static_cast<size_t>(pl.links[1])],
                cx.layout.link_regs[static_cast<size_t>(pl.links[2])],
                cx.layout.link_regs[static_cast<size_t>(pl.links[3])],
                anc12, anc34, ancs};
    box.perm = [w12, ws](std::vector<i64>& v) {
      v[4] = (v[4] + v[0] + v[1]) & ((i64(1) << w12) - 1);
      v[5] = (v[5] + v[2] + v[3]) & ((i64(1) << w12) - 1);
      v[6] = (v[6] + v[4] - v[5]) & ((i64(1) << ws) - 1);
    };
    box.box_cost = add_cost + add_cost + cost_adder_outofplace_log(eta + 1);
    s.gates.push_back(box);

    Gate diag;
    diag.kind = GateKind::DiagBox;
    diag.box_name = "plaquette_cos_phase";
    diag.regs = {ancs};
    const int N = 1 << eta;
    const double pref = -t / (std::pow(a, 4 - d) * g * g);
    diag.phase = [pref, N](const std::vector<i64>& v) {
      return pref * std::cos(2 * M_PI * (v[0] % N) / N);
    };
    {
      double tau = std::abs(pref);
      long long queries = cost_qsp_queries(tau > 0 ? tau : 1e-12, 1e-10);
      diag.box_cost.t_count = static_cast<double>(queries) * (8.0 * (eta + 2) + 16);
      diag.box_cost.rz_count = 3;
    }
    s.gates.push_back(diag);

    Gate unbox = box;
    unbox.box_name = "plaquette_adder_tree_uncompute";
    unbox.perm = [w12, ws](std::vector<i64>& v) {
      v[6] = (v[6] - v[4] + v[5]) & ((i64(1) << ws) - 1);
      v[5] = (v[5] - v[2] - v[3]) & ((i64(1) << w12) - 1);
      v[4] = (v[4] - v[0] - v[1]) & ((i64(1) << w12) - 1);
    };
    unbox.box_cost = box.box_cost;
    s.gates.push_back(unbox);
  }
  for (const auto& reg : cx.layout.link_regs) s.append(qft_register_inverse(reg));
  return s;
}

GateSequence synth_wrap_correction(const SynthContext& cx, double a, double t, int link) {
  GateSequence s;
  s.n_qubits = cx.layout.n_qubits;
  JWOrdering jw = cx.lat.jw_ordering(1);
  const Link& lk = cx.lat.links[static_cast<size_t>(link)];
  int head = cx.lat.neighbor(lk.origin, lk.direction);
  int fa = cx.layout.fermion_qubits[static_cast<size_t>(jw.mode(lk.origin, 0))];
  int fb = cx.layout.fermion_qubits[static_cast<size_t>(jw.mode(head, 0))];
  const auto& reg = cx.layout.link_regs[static_cast<size_t>(link)];
  std::vector<int> zstring;
  for (int mode : jw_z_string(cx.lat, jw, lk, 1, 1))
    zstring.push_back(cx.layout.fermion_qubits[static_cast<size_t>(mode)]);

  // wrap element of psi^dag(n) U psi(n+l): link 1..1 -> 0..0 with the
  // fermion pair (fa: 0->1, fb: 1->0); undo with the opposite angle
  std::vector<int> qs;
  std::vector<bool> src;
  for (int q : reg) {
    qs.push_back(q);
    src.push_back(true);
  }
  qs.push_back(fa);
  src.push_back(false);
  qs.push_back(fb);
  src.push_back(true);
  for (int zq : zstring) s.gates.push_back(g2(GateKind::CZ, zq, fb));
  s.append(ladder_string_exp(qs, src, -t / (2.0 * a)));
  for (int zq : zstring) s.gates.push_back(g2(GateKind::CZ, zq, fb));
  return s;
}

}  // namespace lgt
