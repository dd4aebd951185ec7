#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sbpdiss/sbp_operator.hpp"

using namespace sbpdiss;

namespace {

void check_sbp_invariants(const SbpOperator& op, double length) {
  const Mat r = op.q + op.q.transpose() - op.e;
  CHECK(r.cwiseAbs().maxCoeff() <= 1e-12 * op.q.cwiseAbs().maxCoeff());
  CHECK(op.h.minCoeff() > 0.0);
  CHECK(std::abs(op.h.sum() - length) <= 1e-12 * length);
  const int n = op.size();
  Vec x(n);
  for (int i = 0; i < n; ++i) x(i) = op.dist.nodes(i) * op.node_spacing;
  for (int k = 0; k <= op.dist.p; ++k) {
    Vec ref = k == 0 ? Vec(Vec::Zero(n)) : Vec(k * x.array().pow(k - 1));
    const double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
    CHECK((op.d * Vec(x.array().pow(k)) - ref).cwiseAbs().maxCoeff() <=
          1e-10 * scale);
  }
}

}  // namespace

TEST_CASE("nodal distributions") {
  auto c = build_nodal_distribution(Family::CSBP, 2, 5);
  for (int i = 0; i < 5; ++i) CHECK(c.nodes(i) == double(i));

  // LGL p=2 reference nodes are {-1, 0, 1}, i.e. {0, 1, 2} undivided
  auto lgl = build_nodal_distribution(Family::LGL, 2, 3);
  CHECK(lgl.n == 3);
  CHECK(lgl.nodes(0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(lgl.nodes(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lgl.nodes(2) == doctest::Approx(2.0).epsilon(1e-15));

  // LG p=1: reference nodes +-1/sqrt(3) (tabulated to 20 digits)
  Vec xr, wr;
  lg_reference(1, xr, wr);
  CHECK(std::abs(xr(0) + 0.57735026918962576451) < 1e-15);
  CHECK(std::abs(xr(1) - 0.57735026918962576451) < 1e-15);
  CHECK(std::abs(wr(0) - 1.0) < 1e-15);

  // monotone ordering and range on the undivided domain
  for (auto fam : {Family::LGL, Family::LG}) {
    for (int p = 1; p <= 8; ++p) {
      auto d = build_nodal_distribution(fam, p, p + 1);
      CHECK(d.n == p + 1);
      CHECK(d.nodes(0) >= -1e-15);
      CHECK(d.nodes(d.n - 1) <= d.n - 1.0 + 1e-15);
      for (int i = 1; i < d.n; ++i) CHECK(d.nodes(i) > d.nodes(i - 1));
    }
  }

  CHECK_THROWS_AS(build_nodal_distribution(Family::CSBP, 3, 5),
                  InsufficientNodes);
}

TEST_CASE("csbp p=1 block") {
  auto dist = build_nodal_distribution(Family::CSBP, 1, 5);
  auto op = build_sbp_operator(dist, 4.0);  // dx = 1
  CHECK(op.h(0) == doctest::Approx(0.5));
  CHECK(op.h(1) == doctest::Approx(1.0));
  CHECK(op.h(4) == doctest::Approx(0.5));
  CHECK(op.d(2, 1) == doctest::Approx(-0.5));
  CHECK(op.d(2, 2) == doctest::Approx(0.0));
  CHECK(op.d(2, 3) == doctest::Approx(0.5));
  check_sbp_invariants(op, 4.0);
}

TEST_CASE("csbp p=1..4 invariants") {
  for (int p = 1; p <= 4; ++p) {
    const int n = std::max(4 * p + 5, 2 * p + 1);
    auto dist = build_nodal_distribution(Family::CSBP, p, n);
    auto op = build_sbp_operator(dist, 3.0);
    CAPTURE(p);
    check_sbp_invariants(op, 3.0);
    // quadrature exact to degree 2p-1
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = dist.nodes(i) * op.node_spacing;
    for (int k = 0; k <= 2 * p - 1; ++k) {
      const double exact = std::pow(3.0, k + 1) / (k + 1);
      CHECK(std::abs(op.h.dot(Vec(x.array().pow(k))) - exact) <= 1e-10 * exact);
    }
    CHECK((op.d * Vec::Ones(n)).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(
      build_sbp_operator(build_nodal_distribution(Family::CSBP, 5, 40), 1.0),
      DegreeUnsupported);
}

TEST_CASE("lgl p=1 block") {
  auto dist = build_nodal_distribution(Family::LGL, 1, 2);
  auto op = build_sbp_operator(dist, 2.0);  // reference element [-1, 1]
  CHECK(op.d(0, 0) == doctest::Approx(-0.5));
  CHECK(op.d(0, 1) == doctest::Approx(0.5));
  CHECK(op.d(1, 0) == doctest::Approx(-0.5));
  CHECK(op.d(1, 1) == doctest::Approx(0.5));
  CHECK(op.h(0) == doctest::Approx(1.0));
  CHECK(op.h(1) == doctest::Approx(1.0));
}

TEST_CASE("spectral element invariants") {
  for (auto fam : {Family::LGL, Family::LG}) {
    for (int p = 1; p <= 7; ++p) {
      auto dist = build_nodal_distribution(fam, p, p + 1);
      auto op = build_sbp_operator(dist, 1.7);
      CAPTURE(int(fam));
      CAPTURE(p);
      check_sbp_invariants(op, 1.7);
      // quadrature: LGL exact to 2p-1, LG to 2p+1
      const int qdeg = fam == Family::LG ? 2 * p + 1 : 2 * p - 1;
      Vec x(op.size());
      for (int i = 0; i < op.size(); ++i)
        x(i) = op.dist.nodes(i) * op.node_spacing;
      for (int k = 0; k <= qdeg; ++k) {
        const double exact = std::pow(1.7, k + 1) / (k + 1);
        CHECK(std::abs(op.h.dot(Vec(x.array().pow(k))) - exact) <=
              1e-10 * exact);
      }
      // extrapolation vectors reproduce polynomials at the edges
      if (fam == Family::LG) {
        for (int k = 0; k <= p; ++k) {
          Vec xk = x.array().pow(k);
          const double left = k == 0 ? 1.0 : 0.0;
          CHECK(std::abs(op.e_left.dot(xk) - left) <=
                1e-10 * std::max(1.0, std::pow(1.7, k)));
          CHECK(std::abs(op.e_right.dot(xk) - std::pow(1.7, k)) <=
                1e-10 * std::max(1.0, std::pow(1.7, k)));
        }
      }
    }
  }
}

TEST_CASE("upwind pu2 block") {
  auto u = build_upwind_pu2_block();
  // first row of the printed D+
  CHECK(u.d_plus(0, 0) == -12.0);
  CHECK(u.d_plus(0, 1) == 20.0);
  CHECK(u.d_plus(0, 2) == -8.0);
  CHECK(u.h(1) == doctest::Approx(5.0 / 16));

  // reflection relation
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(std::abs(u.d_minus(i, j) + u.d_plus(4 - i, 4 - j)) < 1e-14);

  // both split operators are consistent
  CHECK((u.d_central * Vec::Ones(5)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((u.d_plus * Vec::Ones(5)).cwiseAbs().maxCoeff() < 1e-13);

  // S = S^T >= 0
  CHECK((u.s - u.s.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Mat> es(u.s);
  CHECK(es.eigenvalues().minCoeff() >= -1e-12 * u.s.cwiseAbs().maxCoeff());

  // Q + Q^T = E for the central pair
  Mat q = u.h.asDiagonal() * u.d_central;
  Mat e = Mat::Zero(5, 5);
  e(0, 0) = -1;
  e(4, 4) = 1;
  CHECK((q + q.transpose() - e).cwiseAbs().maxCoeff() < 1e-13);
}
