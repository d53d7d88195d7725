#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "lgt/trotter.hpp"

using namespace lgt;

TEST_CASE("rho_u1 golden value and structural zeros") {
  RhoBound b = rho_u1(1, 2, 1, 1, 1, 1);
  CHECK(b.total == doctest::Approx(4.625).epsilon(1e-14));
  // m = 0 kills every m-carrying item
  RhoBound b0 = rho_u1(3, 4, 2, 1.3, 0.9, 0.0);
  for (const auto& it : b0.items)
    if (it.key.find("mass") != std::string::npos) CHECK(it.value == 0.0);
  // d = 1 kills every magnetic-carrying item
  RhoBound b1 = rho_u1(1, 4, 2, 1.3, 0.9, 0.7);
  for (const auto& it : b1.items)
    if (it.key.find("magnetic") != std::string::npos) CHECK(it.value == 0.0);
  CHECK_THROWS(rho_u1(1, 3, 1, 1, 1, 1));  // odd L
}

TEST_CASE("rho su2/su3 structural zeros at d=1") {
  for (auto* f : {&rho_su2, &rho_su3}) {
    RhoBound b = (*f)(1, 4, 1, 1.2, 0.8, 0.5);
    for (const auto& it : b.items) {
      CHECK(it.value >= 0.0);
      if (it.key.find("magnetic") != std::string::npos) CHECK(it.value == 0.0);
    }
    RhoBound b0 = (*f)(1, 4, 1, 1.2, 0.8, 0.0);
    for (const auto& it : b0.items)
      if (it.key.find("mass") != std::string::npos) CHECK(it.value == 0.0);
  }
}

TEST_CASE("dual transcriptions agree over a random sweep") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  std::uniform_int_distribution<int> di(1, 3), dL(1, 5), dLam(1, 16);
  for (int k = 0; k < 100; ++k) {
    int d = di(rng), L = 2 * dL(rng), Lam = dLam(rng);
    double g = u(rng), a = u(rng), m = u(rng);
    // the evaluators throw if the itemized and collected paths disagree
    RhoBound r1 = rho_u1(d, L, Lam, g, a, m);
    RhoBound r2 = rho_su2(d, L, Lam, g, a, m);
    RhoBound r3 = rho_su3(d, L, Lam, g, a, m);
    CHECK(r1.total == doctest::Approx(rho_u1_collected(d, L, Lam, g, a, m)).epsilon(1e-12));
    CHECK(r2.total == doctest::Approx(rho_su2_collected(d, L, Lam, g, a, m)).epsilon(1e-12));
    CHECK(r3.total == doctest::Approx(rho_su3_collected(d, L, Lam, g, a, m)).epsilon(1e-12));
  }
}

TEST_CASE("rho monotonicity sweeps") {
  // non-decreasing in L, Lambda, m at a = 1 for all groups and d; in g only
  // at d = 1 (the 1/g^k magnetic items break it for d >= 2)
  auto sweep = [&](auto f) {
    for (int d = 1; d <= 3; ++d) {
      double prev = -1;
      for (int L = 2; L <= 8; L += 2) {
        double v = f(d, L, 2, 1.0, 1.0, 1.0).total;
        CHECK(v >= prev);
        prev = v;
      }
      prev = -1;
      for (int Lam = 1; Lam <= 8; ++Lam) {
        double v = f(d, 4, Lam, 1.0, 1.0, 1.0).total;
        CHECK(v >= prev);
        prev = v;
      }
      prev = -1;
      for (double m = 0; m <= 2.0; m += 0.5) {
        double v = f(d, 4, 2, 1.0, 1.0, m).total;
        CHECK(v >= prev);
        prev = v;
      }
    }
    double prev = -1;
    for (double g = 0.5; g <= 4.0; g *= 2) {
      double v = f(1, 4, 2, g, 1.0, 1.0).total;
      CHECK(v >= prev);
      prev = v;
    }
  };
  sweep(rho_u1);
  sweep(rho_su2);
  sweep(rho_su3);
}

TEST_CASE("trotter step counts") {
  CHECK(trotter_steps(1.0, 4.625, 0.1, Group::U1) == 10.0);
  CHECK(trotter_steps(1.0, 4.625, 0.1, Group::SU2) == 12.0);
  CHECK(trotter_steps(1.0, 0.0, 0.1, Group::U1) == 1.0);  // clamp to >= 1
}

namespace {

TermSequence u1_seq(int d, int L, int Lambda, SimParams p) {
  Lattice lat = build_lattice({d, L});
  LinkSpace ls = LinkSpace::make(Group::U1, Lambda, LinkBasis::Encoded);
  auto hl = HilbertLayout::make(Group::U1, lat, LinkBasis::Encoded, ls.dim);
  p.Lambda = Lambda;
  return build_term_sequence(lat, hl, ls, p);
}

CMat dense_total_exp(const TermSequence& seq, double T) {
  HermitianOp total;
  total.dim = seq.fragments.front().op.dim;
  total.add_diag(total.dim);
  for (const Fragment& f : seq.fragments) {
    for (size_t k = 0; k < f.op.ov.size(); ++k) {
      total.oi.push_back(f.op.oi[k]);
      total.oj.push_back(f.op.oj[k]);
      total.ov.push_back(f.op.ov[k]);
    }
    for (size_t i = 0; i < f.op.diag.size(); ++i) total.diag[i] += f.op.diag[i];
  }
  total.compress();
  return dense_exp(total, T);
}

}  // namespace

TEST_CASE("product formula basics") {
  TermSequence seq = u1_seq(1, 4, 1, {1.0, 1.0, 0.7});
  double t = 0.3;
  CMat u2 = product_formula_step(seq, t);
  i64 dim = seq.fragments.front().op.dim;
  CHECK((u2 * u2.adjoint() - CMat::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);
  // time-reversal symmetry of the symmetric formula
  CMat u2m = product_formula_step(seq, -t);
  CHECK((u2.adjoint() * u2m.adjoint() - CMat::Identity(dim, dim)).cwiseAbs().maxCoeff() <
        1e-10);

  // a single fragment evolves exactly
  TermSequence one;
  one.group = Group::U1;
  one.fragments.push_back(seq.fragments[2]);
  CMat x = product_formula_step(one, t);
  CMat y = dense_exp(one.fragments[0].op, t);
  CHECK((x - y).cwiseAbs().maxCoeff() < 1e-12);

  // commuting fragments (the two diagonal ones) are exact as well
  TermSequence diag;
  diag.group = Group::U1;
  diag.fragments = {seq.fragments[0], seq.fragments[1]};
  HermitianOp sum = seq.fragments[0].op;
  for (size_t i = 0; i < sum.diag.size(); ++i) sum.diag[i] += seq.fragments[1].op.diag[i];
  CMat xd = product_formula_step(diag, t);
  CMat yd = dense_exp(sum, t);
  CHECK((xd - yd).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("empirical error agrees with the dense reference") {
  TermSequence seq = u1_seq(1, 4, 1, {1.1, 0.9, 0.7});
  for (double T : {0.4, 1.0}) {
    for (int r : {1, 3}) {
      CMat e = dense_total_exp(seq, T);
      CMat u = product_formula_step(seq, T / r);
      CMat ur = CMat::Identity(e.rows(), e.cols());
      for (int k = 0; k < r; ++k) ur = u * ur;
      Eigen::JacobiSVD<CMat> svd(e - ur);
      double dense_err = svd.singularValues()[0];
      double comp_err = empirical_trotter_error(seq, T, r);
      CHECK(comp_err == doctest::Approx(dense_err).epsilon(1e-6));
    }
  }
}

TEST_CASE("empirical error: T=0 exact, bound dominance, order-2 slope") {
  TermSequence seq = u1_seq(1, 4, 1, {1.0, 1.0, 1.0});
  CHECK(empirical_trotter_error(seq, 1e-300, 1) < 1e-12);

  double rho = rho_u1(1, 4, 1, 1.0, 1.0, 1.0).total;
  std::vector<ErrorRequest> reqs;
  for (double T : {0.5, 1.0})
    for (int r : {1, 2, 4}) reqs.push_back({T, r});
  auto res = empirical_trotter_error_multi(seq, reqs);
  for (const auto& rr : res) {
    double bound = rr.r * std::pow(rr.T / rr.r, 3) * rho;
    CHECK(rr.error <= bound);
  }

  // log-log slope of error vs r approaches -2
  std::vector<double> errs;
  std::vector<int> rs = {4, 8, 16, 32, 64};
  for (int r : rs) errs.push_back(empirical_trotter_error(seq, 1.0, r));
  double slope = std::log2(errs.back() / errs.front()) /
                 std::log2(double(rs.back()) / rs.front());
  CHECK(slope == doctest::Approx(-2.0).epsilon(0.05));
}
