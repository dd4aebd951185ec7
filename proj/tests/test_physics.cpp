#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sbpdiss/physics.hpp"

using namespace sbpdiss;

namespace {

Eigen::Vector3d state1d(double rho, double v, double p) {
  Eigen::Vector3d u;
  u << rho, rho * v, p / 0.4 + 0.5 * rho * v * v;
  return u;
}

Eigen::Vector4d state2d(double rho, double vx, double vy, double p) {
  Eigen::Vector4d u;
  u << rho, rho * vx, rho * vy, p / 0.4 + 0.5 * rho * (vx * vx + vy * vy);
  return u;
}

struct RandomStates {
  std::mt19937_64 rng{42};
  std::uniform_real_distribution<double> rho_d{0.1, 3.0}, v_d{-2.0, 2.0},
      p_d{0.1, 5.0};
  Eigen::Vector3d next1d() { return state1d(rho_d(rng), v_d(rng), p_d(rng)); }
  Eigen::Vector4d next2d() {
    return state2d(rho_d(rng), v_d(rng), v_d(rng), p_d(rng));
  }
};

}  // namespace

TEST_CASE("entropy variables and inverse map") {
  EulerParams gas;
  auto u = state1d(1.0, 0.0, 1.0);
  auto w = entropy_variables<double, 1>(u, gas);
  CHECK(w(0) == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(w(1) == doctest::Approx(0.0));
  CHECK(w(2) == doctest::Approx(-1.0).epsilon(1e-14));

  RandomStates rs;
  for (int trial = 0; trial < 1000; ++trial) {
    auto q = rs.next1d();
    auto wq = entropy_variables<double, 1>(q, gas);
    auto back = conservative_from_entropy<double, 1>(wq, gas);
    CHECK((back - q).cwiseAbs().maxCoeff() <=
          1e-12 * q.cwiseAbs().maxCoeff());
    // w^T (du/dw) w > 0
    Mat a0 = dudw<double, 1>(q, gas);
    CHECK(wq.dot(a0 * wq) > 0.0);
  }
  CHECK_THROWS_AS(
      checked::entropy_variables_1d(state1d(-1.0, 0.0, 1.0), gas),
      NonAdmissibleState);
}

TEST_CASE("flux, eigenvalues and finite-difference Jacobian oracle") {
  EulerParams gas;
  auto u = state1d(1.0, 0.0, 1.0);
  auto f = euler_flux<double, 1>(u, 0, gas);
  CHECK(f(0) == doctest::Approx(0.0));
  CHECK(f(1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f(2) == doctest::Approx(0.0));
  auto eig = euler_eig<double, 1>(u, 0, gas, false);
  const double c = std::sqrt(1.4);
  CHECK(eig.lam(0) == doctest::Approx(-c).epsilon(1e-14));
  CHECK(eig.lam(1) == doctest::Approx(0.0));
  CHECK(eig.lam(2) == doctest::Approx(c).epsilon(1e-14));

  // X Lambda X^-1 reconstructs the finite-difference flux Jacobian
  RandomStates rs;
  for (int trial = 0; trial < 200; ++trial) {
    auto q = rs.next1d();
    auto e = euler_eig<double, 1>(q, 0, gas, false);
    Mat lam_x = e.x;
    for (int j = 0; j < 3; ++j) lam_x.col(j) *= e.lam(j);
    // jacobian = (X Lambda) X^{-1}: solve X^T J^T = (X Lambda)^T
    Mat jac(3, 3);
    SMat<double, 3> xt = e.x.transpose();
    for (int r = 0; r < 3; ++r)
      jac.row(r) =
          solve_small<double, 3>(xt, SVec<double, 3>(lam_x.row(r).transpose()))
              .transpose();
    const double h = 1e-6 * std::max(1.0, q.cwiseAbs().maxCoeff());
    Mat fd(3, 3);
    for (int j = 0; j < 3; ++j) {
      Eigen::Vector3d qp = q, qm = q;
      qp(j) += h;
      qm(j) -= h;
      fd.col(j) = (euler_flux<double, 1>(qp, 0, gas) -
                   euler_flux<double, 1>(qm, 0, gas)) /
                  (2.0 * h);
    }
    CHECK((jac - fd).cwiseAbs().maxCoeff() <=
          1e-7 * std::max(1.0, fd.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("Barth scaling X X^T = du/dw, 1D and 2D") {
  EulerParams gas;
  RandomStates rs;
  for (int trial = 0; trial < 1000; ++trial) {
    auto q = rs.next1d();
    auto e = euler_eig<double, 1>(q, 0, gas, true);
    Mat a0 = dudw<double, 1>(q, gas);
    CHECK((e.x * e.x.transpose() - a0).cwiseAbs().maxCoeff() <=
          1e-10 * std::max(1.0, a0.cwiseAbs().maxCoeff()));

    auto q2 = rs.next2d();
    for (int dir = 0; dir < 2; ++dir) {
      auto e2 = euler_eig<double, 2>(q2, dir, gas, true);
      Mat b0 = dudw<double, 2>(q2, gas);
      CHECK((e2.x * e2.x.transpose() - b0).cwiseAbs().maxCoeff() <=
            1e-10 * std::max(1.0, b0.cwiseAbs().maxCoeff()));
    }
  }
  // du/dw itself against a complex-step oracle of u(w)
  for (int trial = 0; trial < 100; ++trial) {
    auto q = rs.next1d();
    auto w = entropy_variables<double, 1>(q, gas);
    Mat fd(3, 3);
    const double h = 1e-30;
    for (int j = 0; j < 3; ++j) {
      SVec<Cplx, 3> wc = w.cast<Cplx>();
      wc(j) += Cplx(0.0, h);
      auto uc = conservative_from_entropy<Cplx, 1>(wc, gas);
      for (int i = 0; i < 3; ++i) fd(i, j) = uc(i).imag() / h;
    }
    Mat a0 = dudw<double, 1>(q, gas);
    CHECK((a0 - fd).cwiseAbs().maxCoeff() <=
          1e-8 * std::max(1.0, fd.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("logarithmic mean") {
  CHECK(logarithmic_mean(1.0, 1.0 + 1e-9) ==
        doctest::Approx(1.0 + 5e-10).epsilon(1e-15));
  CHECK(logarithmic_mean(2.0, 2.0) == doctest::Approx(2.0));
  // asymptotic formula away from the switch: (a-b)/ln(a/b)
  CHECK(logarithmic_mean(1.0, 3.0) ==
        doctest::Approx(2.0 / std::log(3.0)).epsilon(1e-14));
  CHECK(logarithmic_mean(3.0, 1.0) == logarithmic_mean(1.0, 3.0));
}

TEST_CASE("Chandrashekar flux: consistency and shuffle condition") {
  EulerParams gas;
  RandomStates rs;
  for (int trial = 0; trial < 1000; ++trial) {
    auto ul = rs.next1d();
    auto ur = rs.next1d();
    auto f = chandrashekar_flux<double>(ul, ur, gas);
    auto wl = entropy_variables<double, 1>(ul, gas);
    auto wr = entropy_variables<double, 1>(ur, gas);
    // (wR - wL) . f* = psiR - psiL with psi = rho v
    CHECK(std::abs((wr - wl).dot(f) - (ur(1) - ul(1))) <= 1e-12);
  }
  auto u = state1d(1.3, 0.7, 2.1);
  CHECK((chandrashekar_flux<double>(u, u, gas) - euler_flux<double, 1>(u, 0, gas))
            .cwiseAbs()
            .maxCoeff() <= 1e-13);
}

TEST_CASE("Ranocha 2D flux: consistency, symmetry, shuffle") {
  EulerParams gas;
  RandomStates rs;
  for (int trial = 0; trial < 1000; ++trial) {
    auto ul = rs.next2d();
    auto ur = rs.next2d();
    for (int dir = 0; dir < 2; ++dir) {
      auto f = ranocha_flux_2d<double>(ul, ur, dir, gas);
      auto fr = ranocha_flux_2d<double>(ur, ul, dir, gas);
      CHECK((f - fr).cwiseAbs().maxCoeff() <= 1e-14 * f.cwiseAbs().maxCoeff());
      auto wl = entropy_variables<double, 2>(ul, gas);
      auto wr = entropy_variables<double, 2>(ur, gas);
      CHECK(std::abs((wr - wl).dot(f) - (ur(1 + dir) - ul(1 + dir))) <= 1e-12);
    }
  }
  auto u = state2d(1.2, 0.5, -0.4, 1.8);
  for (int dir = 0; dir < 2; ++dir)
    CHECK((ranocha_flux_2d<double>(u, u, dir, gas) -
           euler_flux<double, 2>(u, dir, gas))
              .cwiseAbs()
              .maxCoeff() <= 1e-13);
}

TEST_CASE("Burgers splitting") {
  double fp, fm;
  burgers_flux_split(2.0, fp, fm);
  CHECK(fp == doctest::Approx(3.0));
  CHECK(fm == doctest::Approx(-1.0));
  burgers_flux_split(0.0, fp, fm);
  CHECK(fp == 0.0);
  CHECK(fm == 0.0);
  burgers_flux_split(-1.0, fp, fm);
  CHECK(fp == doctest::Approx(-0.25));
  CHECK(fm == doctest::Approx(0.75));
  // exact split: f+ + f- = u^2/2, f+ - f- = |u| u
  for (double u : {-3.0, -0.3, 0.0, 0.7, 5.0}) {
    burgers_flux_split(u, fp, fm);
    CHECK(fp + fm == doctest::Approx(0.5 * u * u));
    CHECK(fp - fm == doctest::Approx(std::abs(u) * u));
  }
}

TEST_CASE("Steger-Warming splitting sums to the flux") {
  EulerParams gas;
  RandomStates rs;
  for (int trial = 0; trial < 500; ++trial) {
    auto u = rs.next1d();
    SVec<double, 3> fp, fm;
    steger_warming_split<double>(u, gas, fp, fm);
    auto f = euler_flux<double, 1>(u, 0, gas);
    CHECK((fp + fm - f).cwiseAbs().maxCoeff() <=
          1e-12 * std::max(1.0, f.cwiseAbs().maxCoeff()));
  }
  // supersonic right-running flow: f- = 0
  auto u = state1d(1.0, 5.0, 1.0);
  SVec<double, 3> fp, fm;
  steger_warming_split<double>(u, gas, fp, fm);
  CHECK(fm.cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("entropy function convex along admissible segments") {
  EulerParams gas;
  RandomStates rs;
  for (int trial = 0; trial < 200; ++trial) {
    auto ua = rs.next1d();
    auto ub = rs.next1d();
    // second difference of S along the segment, sampled
    auto S = [&](double theta) {
      Eigen::Vector3d u = (1.0 - theta) * ua + theta * ub;
      if (!admissible<double, 1>(u, gas)) return std::nan("");
      return entropy_density<double, 1>(u, gas);
    };
    const double h = 1e-3;
    for (double theta : {0.25, 0.5, 0.75}) {
      double d2 = S(theta - h) - 2.0 * S(theta) + S(theta + h);
      if (std::isnan(d2)) continue;
      CHECK(d2 > -1e-12);
    }
  }
}

TEST_CASE("equation of state round trip") {
  EulerParams gas;
  RandomStates rs;
  for (int trial = 0; trial < 100; ++trial) {
    auto u = rs.next1d();
    double rho, p;
    SVec<double, 1> v;
    primitive<double, 1>(u, gas, rho, v, p);
    auto back = conservative<double, 1>(rho, v, p, gas);
    CHECK((back - u).cwiseAbs().maxCoeff() <=
          1e-14 * u.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("smooth_abs keeps |u|u analytic under complex step") {
  const double h = 1e-30;
  for (double u0 : {-2.0, -0.5, 0.3, 1.7}) {
    Cplx u(u0, h);
    Cplx fd = smooth_abs(u) * u;  // d/du (|u| u) = 2|u|
    CHECK(fd.imag() / h == doctest::Approx(2.0 * std::abs(u0)).epsilon(1e-14));
  }
}
