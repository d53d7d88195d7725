#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "lgt/linkops.hpp"

using namespace lgt;

TEST_CASE("u1 ops") {
  auto set = u1_ops(1);
  CHECK(set.dim == 2);
  Mat e = Mat(set.op("E"));
  CHECK(e(0, 0) == -1);
  CHECK(e(1, 1) == 0);
  Mat u = Mat(set.op("U"));
  CHECK(u(1, 0) == 1);  // bit flip
  CHECK(u(0, 1) == 1);

  auto s2 = u1_ops(2);
  // wrap: U|E=1> = |E=-2>, i.e. j=3 -> j=0
  CHECK(Mat(s2.op("U"))(0, 3) == 1);
  // U unitary
  Mat uu = Mat(s2.op("U"));
  CHECK((uu.transpose() * uu - Mat::Identity(4, 4)).norm() == 0);
  // [E, U] = U - 2 Lambda |{-L}><{L-1}| exactly
  Mat E = Mat(s2.op("E"));
  Mat comm = E * uu - uu * E;
  Mat expect = uu;
  expect(0, 3) -= 2 * 2;
  CHECK((comm - expect).norm() == 0);
}

TEST_CASE("su2 cg examples") {
  // c11 at physical (j=1/2, m=1/2): encoded j=1, m = 2L+1
  int L = 2;
  CHECK(su2_cg(1, 1, 1, 2 * L + 1, L) == doctest::Approx(1.0));
  // c21 at physical (j=1/2, m=1/2) -> 0
  CHECK(su2_cg(2, 1, 1, 2 * L + 1, L) == 0.0);
  // c22 at physical (j=0, m=0) -> 0
  CHECK(su2_cg(2, 2, 0, 2 * L, L) == 0.0);
}

TEST_CASE("su2 f examples") {
  int L = 3;
  CHECK(su2_f(1, 1, 0, 1, 2 * L, 2 * L, L) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(su2_f(2, 2, 0, -1, 2 * L, 2 * L, L) == 0.0);
  CHECK(su2_f(1, 2, 0, 1, 2 * L, 2 * L, L) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("su2 physical subspace dimension") {
  CHECK(su2_basis(1, LinkBasis::Physical).dim() == 14);  // 1 + 4 + 9
  CHECK(su2_basis(2, LinkBasis::Physical).dim() == 1 + 4 + 9 + 16 + 25);
}

TEST_CASE("su2 operator identities on the physical subspace") {
  for (int L = 1; L <= 4; ++L) {
    auto basis = su2_basis(L, LinkBasis::Physical);
    Mat u11 = Mat(su2_u_op(1, 1, L, basis));
    Mat u12 = Mat(su2_u_op(1, 2, L, basis));
    Mat u21 = Mat(su2_u_op(2, 1, L, basis));
    Mat u22 = Mat(su2_u_op(2, 2, L, basis));
    CHECK((u22 - u11.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((u21 + u12.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    // norm bound
    Eigen::JacobiSVD<Mat> svd(u11);
    CHECK(svd.singularValues()[0] <= 1.0 + 1e-12);
  }
}

TEST_CASE("su2 f-route equals cg-route entrywise") {
  for (int L = 1; L <= 3; ++L) {
    for (auto kind : {LinkBasis::Physical, LinkBasis::Encoded}) {
      auto basis = su2_basis(L, kind);
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
          Mat x = Mat(su2_u_op(a, b, L, basis));
          Mat y = Mat(su2_u_op_from_f(a, b, L, basis));
          CHECK((x - y).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
  }
}

TEST_CASE("su2 u11 action on the vacuum") {
  int L = 1;
  auto basis = su2_basis(L, LinkBasis::Physical);
  int vac = basis.find({0, 2 * L, 2 * L});
  Mat u11 = Mat(su2_u_op(1, 1, L, basis));
  Eigen::VectorXd v = u11.col(vac);
  int tgt = basis.find({1, 2 * L + 1, 2 * L + 1});
  CHECK(v[tgt] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(v.norm() == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("su3 casimir") {
  CHECK(su3_casimir(0, 0).to_double() == 0.0);
  CHECK(su3_casimir(1, 0).to_double() == doctest::Approx(4.0 / 3));
  CHECK(su3_casimir(1, 1).to_double() == doctest::Approx(3.0));
}

TEST_CASE("su3 isoscalar examples") {
  int L = 1;
  // I33 at physical (p,q,T,Y) = (1,0,0,-2/3): encoded T=0, Y = 3(-2/3+L) = 1
  CHECK(su3_isoscalar(3, 3, 1, 0, 0, 3 * L - 2, L) == 0.0);
  // I13 at (0,0,0,0) -> 1
  CHECK(su3_isoscalar(1, 3, 0, 0, 0, 3 * L, L) == doctest::Approx(1.0));
}

TEST_CASE("su3 physical subspace counts") {
  CHECK(su3_basis(1, LinkBasis::Physical).dim() == 83);  // 1 + 9 + 9 + 64
  long long expect2 = 0;
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q) expect2 += su3_dim(p, q) * su3_dim(p, q);
  CHECK(su3_basis(2, LinkBasis::Physical).dim() == expect2);
}

TEST_CASE("su3 vacuum overlap identity") {
  for (int L = 1; L <= 2; ++L) {
    auto basis = su3_basis(L, LinkBasis::Physical);
    SU3State vac;
    vac.v = {0, 0, 0, 2 * L, 3 * L, 0, 2 * L, 3 * L};
    int v0 = basis.find(vac);
    std::vector<Mat> u(9);
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b) u[(a - 1) * 3 + (b - 1)] = Mat(su3_u_op(a, b, L, basis));
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b)
        for (int gg = 1; gg <= 3; ++gg)
          for (int dd = 1; dd <= 3; ++dd) {
            // <0| U_ab [U^dag]_{dg} |0> = 1/3 delta_{ag} delta_{bd},
            // with [U^dag]_{dg} = (U_{gd})^dag
            Eigen::VectorXd x = u[(a - 1) * 3 + (b - 1)].row(v0).transpose();
            Eigen::VectorXd y = u[(gg - 1) * 3 + (dd - 1)].row(v0).transpose();
            double val = x.dot(y);
            double expect = (a == gg && b == dd) ? 1.0 / 3 : 0.0;
            CHECK(std::abs(val - expect) < 1e-12);
          }
  }
}

TEST_CASE("su3 norm bound on the physical subspace") {
  for (int L = 1; L <= 2; ++L) {
    auto basis = su3_basis(L, LinkBasis::Physical);
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b) {
        Mat u = Mat(su3_u_op(a, b, L, basis));
        Eigen::JacobiSVD<Mat> svd(u);
        CHECK(svd.singularValues()[0] <= 1.0 + 1e-12);
      }
  }
}

#include "iso_oracle_data.inc"

TEST_CASE("isoscalar factors match the frozen Gelfand-Tsetlin oracle") {
  // encoded arguments: T_enc = 2T, Y_enc = 3Y + 3 Lambda; pick Lambda large
  // enough that every sampled Y is representable
  const int L = 4;
  for (const auto& row : kIsoOracle) {
    int p = int(row[0]), q = int(row[1]), k = int(row[2]), r = int(row[3]);
    int Tenc = int(row[4]), Yenc = int(row[5]) + 3 * L;
    double want = row[6];
    double got = su3_isoscalar(k, r, p, q, Tenc, Yenc, L);
    CHECK(got * got == doctest::Approx(want).epsilon(1e-6));
  }
}

TEST_CASE("isoscalar completeness: sum over branches of (I c)^2 = 1") {
  // for every physical link state and fundamental color, the squared
  // couplings into the three branches add to one
  const int L = 2;
  auto basis = su3_basis(L, LinkBasis::Physical);
  for (const auto& st : basis.states) {
    int p = st.v[0], q = st.v[1], T = st.v[2], Tz = st.v[3], Y = st.v[4];
    for (int gamma = 1; gamma <= 3; ++gamma) {
      double sum = 0;
      for (int k = 1; k <= 3; ++k) {
        if (gamma <= 2) {
          double Ia = su3_isoscalar(k, 1, p, q, T, Y, L);
          double Ib = su3_isoscalar(k, 2, p, q, T, Y, L);
          double ca = su2_cg(1, gamma, T, Tz, L);
          double cb = su2_cg(2, gamma, T, Tz, L);
          sum += Ia * Ia * ca * ca + Ib * Ib * cb * cb;
        } else {
          double I3 = su3_isoscalar(k, 3, p, q, T, Y, L);
          sum += I3 * I3;
        }
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}
