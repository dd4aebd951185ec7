#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sbpdiss/analysis.hpp"
#include "sbpdiss/integrate.hpp"
#include "sbpdiss/problems.hpp"
#include "sbpdiss/semidisc2d.hpp"

using namespace sbpdiss;

namespace {

SemiDisc1D linconv(Family fam, int p, int n, int blocks, SatKind sat,
                   double eps = 0.0, int s = 0) {
  Semi1DConfig sc;
  sc.pde = PdeId::LinearConvection;
  sc.scheme = Scheme::Central;
  sc.sat = sat;
  sc.n_blocks = blocks;
  if (eps > 0) {
    sc.diss.eps = eps;
    sc.diss.s = s;
  }
  auto dist = build_nodal_distribution(fam, p, n);
  auto op = build_sbp_operator(dist, 1.0 / blocks);
  return SemiDisc1D(op, sc);
}

Vec random_vec(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = unit(rng);
  return v;
}

Vec random_euler(std::mt19937_64& rng, int nodes, int dim) {
  std::uniform_real_distribution<double> rho_d(0.1, 3.0), v_d(-2.0, 2.0),
      p_d(0.1, 5.0);
  const int nc = dim + 2;
  Vec u(nodes * nc);
  for (int i = 0; i < nodes; ++i) {
    double rho = rho_d(rng), p = p_d(rng), ke = 0.0;
    u(i * nc) = rho;
    for (int d = 0; d < dim; ++d) {
      double v = v_d(rng);
      u(i * nc + 1 + d) = rho * v;
      ke += v * v;
    }
    u(i * nc + nc - 1) = p / 0.4 + 0.5 * rho * ke;
  }
  return u;
}

}  // namespace

TEST_CASE("linear convection: constants, skew-adjointness, energy rate") {
  for (auto fam : {Family::CSBP, Family::LGL, Family::LG}) {
    const int p = 3;
    const int n = fam == Family::CSBP ? 16 : 4;
    auto sd = linconv(fam, p, n, 3, SatKind::Symmetric);
    Vec c = Vec::Constant(sd.dofs(), 2.3);
    Vec r(sd.dofs());
    sd.rhs_double(0.0, c, r);
    CHECK(r.cwiseAbs().maxCoeff() <= 1e-12);

    Mat m = sd.assemble_linear_operator();
    Mat hm = sd.h_global().asDiagonal() * m;
    CHECK((hm + hm.transpose()).cwiseAbs().maxCoeff() <= 1e-11);

    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
      Vec u = random_vec(rng, sd.dofs());
      sd.rhs_double(0.0, u, r);
      CHECK(std::abs(2.0 * u.dot(sd.h_global().asDiagonal() * r)) <= 1e-11);
    }
  }
}

TEST_CASE("linear convection: jacobian equals assembled operator") {
  auto sd = linconv(Family::CSBP, 2, 20, 2, SatKind::LaxFriedrichs, 0.025, 3);
  Mat m = sd.assemble_linear_operator();
  std::mt19937_64 rng(2);
  Vec u0 = random_vec(rng, sd.dofs());
  auto jr = jacobian_complex_step(
      [&](double t, const VecT<Cplx>& u, VecT<Cplx>& out) { sd.rhs(t, u, out); },
      u0);
  CHECK((jr.matrix - m).cwiseAbs().maxCoeff() <= 1e-12 * m.cwiseAbs().maxCoeff());
  // apply path agrees with assembled columns
  Vec r(sd.dofs());
  sd.rhs_double(0.0, u0, r);
  CHECK((m * u0 - r).cwiseAbs().maxCoeff() <= 1e-13 * r.cwiseAbs().maxCoeff());
}

TEST_CASE("burgers split form: energy conservation and dissipation") {
  Semi1DConfig sc;
  sc.pde = PdeId::Burgers;
  sc.scheme = Scheme::SplitFormBurgers;
  sc.sat = SatKind::Symmetric;
  sc.n_blocks = 2;
  auto dist = build_nodal_distribution(Family::CSBP, 2, 20);
  auto op = build_sbp_operator(dist, 0.5);
  SemiDisc1D sd(op, sc);

  std::mt19937_64 rng(3);
  Vec r(sd.dofs());
  for (int trial = 0; trial < 50; ++trial) {
    Vec u = random_vec(rng, sd.dofs());
    sd.rhs_double(0.0, u, r);
    // EC interface flux + split volume: energy conserved
    CHECK(std::abs(2.0 * u.dot(sd.h_global().asDiagonal() * r)) <= 1e-11);
    // mass conserved
    CHECK(std::abs(sd.h_global().dot(r)) <= 1e-12);
  }

  sc.sat = SatKind::Rusanov;
  sc.diss.eps = 0.025;
  sc.diss.s = 3;
  SemiDisc1D sdd(op, sc);
  for (int trial = 0; trial < 50; ++trial) {
    Vec u = random_vec(rng, sdd.dofs());
    sdd.rhs_double(0.0, u, r);
    CHECK(2.0 * u.dot(sdd.h_global().asDiagonal() * r) <= 1e-11);
    CHECK(std::abs(sdd.h_global().dot(r)) <= 1e-12);
  }
}

TEST_CASE("burgers upwind counterexample value") {
  // u = 2 + 6x - x^2 on [0, 1]: the FVS dissipation is antidissipative,
  // u^T H A_D u = -u^T S diag(|u|) u = +0.185...
  auto uw = build_upwind_pu2_block();
  Vec x = Vec::LinSpaced(5, 0.0, 1.0);
  Vec u = (2.0 + 6.0 * x.array() - x.array().square()).matrix();
  double val = -u.dot(uw.s * (u.array().abs() * u.array()).matrix());
  CHECK(val == doctest::Approx(0.185).epsilon(0.03));
  CHECK(val > 0.0);
}

TEST_CASE("convection spectrum stays in the left half-plane with dissipation") {
  // CSBP p=2 single block, 80 nodes, upwind SATs, s=3, eps = 3.125*5^-3
  auto sd = linconv(Family::CSBP, 2, 80, 1, SatKind::LaxFriedrichs, 0.025, 3);
  auto ev = eigenvalues(sd.assemble_linear_operator());
  CHECK(ev.real().maxCoeff() <= 1e-10);
}

TEST_CASE("euler upwind-fvs on the 5-node block conserves") {
  Semi1DConfig sc;
  sc.pde = PdeId::Euler1D;
  sc.scheme = Scheme::UpwindFVS;
  sc.sat = SatKind::RoeMatrix;
  sc.n_blocks = 4;
  sc.x0 = -1;
  sc.x1 = 1;
  SemiDisc1D sd(build_upwind_pu2_block(), sc);
  std::mt19937_64 rng(19);
  Vec r(sd.dofs());
  for (int trial = 0; trial < 40; ++trial) {
    Vec u = random_euler(rng, sd.nodes(), 1);
    sd.rhs_double(0.0, u, r);
    Vec tot = Vec::Zero(3), mass = Vec::Zero(3);
    for (int i = 0; i < sd.nodes(); ++i) {
      tot += sd.h_global()(i) * r.segment<3>(i * 3);
      mass += sd.h_global()(i) * r.segment<3>(i * 3).cwiseAbs();
    }
    for (int c = 0; c < 3; ++c)
      CHECK(std::abs(tot(c)) <= 1e-11 * std::max(1.0, mass(c)));
  }
  // constant state annihilated
  Vec uc(sd.dofs());
  Eigen::Vector3d inf;
  inf << 1.0, 0.3, 2.0;
  for (int i = 0; i < sd.nodes(); ++i) uc.segment<3>(i * 3) = inf;
  sd.rhs_double(0.0, uc, r);
  CHECK(r.cwiseAbs().maxCoeff() <= 1e-11);
}

TEST_CASE("burgers upwind-fvs runs and conserves") {
  Semi1DConfig sc;
  sc.pde = PdeId::Burgers;
  sc.scheme = Scheme::UpwindFVS;
  sc.sat = SatKind::Rusanov;
  sc.n_blocks = 3;
  SemiDisc1D sd(build_upwind_pu2_block(), sc);
  std::mt19937_64 rng(5);
  Vec r(sd.dofs());
  for (int trial = 0; trial < 50; ++trial) {
    Vec u = random_vec(rng, sd.dofs());
    sd.rhs_double(0.0, u, r);
    CHECK(std::abs(sd.h_global().dot(r)) <= 1e-12);
  }
}

TEST_CASE("euler 1d: free stream, conservation, entropy") {
  EulerParams gas;
  for (auto scheme : {Scheme::HadamardEntropyStable, Scheme::Central}) {
    Semi1DConfig sc;
    sc.pde = PdeId::Euler1D;
    sc.scheme = scheme;
    sc.sat = scheme == Scheme::Central ? SatKind::RoeMatrix : SatKind::Symmetric;
    sc.n_blocks = 2;
    sc.x0 = -1;
    sc.x1 = 1;
    auto dist = build_nodal_distribution(Family::CSBP, 3, 18);
    auto op = build_sbp_operator(dist, 1.0);
    SemiDisc1D sd(op, sc);

    Vec uc(sd.dofs());
    Eigen::Vector3d inf;
    inf << 1.4, 0.35, 2.2;
    for (int i = 0; i < sd.nodes(); ++i) uc.segment<3>(i * 3) = inf;
    Vec r(sd.dofs());
    sd.rhs_double(0.0, uc, r);
    CHECK(r.cwiseAbs().maxCoeff() <= 1e-12);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
      Vec u = random_euler(rng, sd.nodes(), 1);
      sd.rhs_double(0.0, u, r);
      Vec tot = Vec::Zero(3), mass = Vec::Zero(3);
      for (int i = 0; i < sd.nodes(); ++i) {
        tot += sd.h_global()(i) * r.segment<3>(i * 3);
        mass += sd.h_global()(i) * r.segment<3>(i * 3).cwiseAbs();
      }
      for (int c = 0; c < 3; ++c)
        CHECK(std::abs(tot(c)) <= 1e-11 * std::max(1.0, mass(c)));
      if (scheme == Scheme::HadamardEntropyStable) {
        // semi-discrete entropy conservation: w^T H R = 0
        double val = 0.0, scale = 0.0;
        for (int i = 0; i < sd.nodes(); ++i) {
          auto w = entropy_variables<double, 1>(
              Eigen::Vector3d(u.segment<3>(i * 3)), gas);
          val += sd.h_global()(i) * w.dot(r.segment<3>(i * 3));
          scale += sd.h_global()(i) * w.cwiseAbs().dot(
                                          r.segment<3>(i * 3).cwiseAbs());
        }
        CHECK(std::abs(val) <= 1e-10 * std::max(1.0, scale));
      }
    }
  }
}

TEST_CASE("euler 1d: entropy-variable volume dissipation is entropy-stable") {
  EulerParams gas;
  Semi1DConfig sc;
  sc.pde = PdeId::Euler1D;
  sc.scheme = Scheme::HadamardEntropyStable;
  sc.sat = SatKind::Symmetric;
  sc.n_blocks = 1;
  sc.x0 = -1;
  sc.x1 = 1;
  sc.diss.eps = 0.02;
  sc.diss.vars = VarSet::Entropy;
  auto dist = build_nodal_distribution(Family::CSBP, 3, 20);
  auto op = build_sbp_operator(dist, 2.0);

  std::mt19937_64 rng(11);
  for (auto mode : {CoeffMode::ScalarMatrixBlock, CoeffMode::MatrixMatrixBlock}) {
    for (int s : {3, 4}) {
      sc.diss.mode = mode;
      sc.diss.s = s;
      SemiDisc1D base(op, [&] {
        Semi1DConfig c = sc;
        c.diss.eps = 0.0;
        return c;
      }());
      SemiDisc1D full(op, sc);
      Vec r0(full.dofs()), r1(full.dofs());
      for (int trial = 0; trial < 1000; ++trial) {
        Vec u = random_euler(rng, full.nodes(), 1);
        base.rhs_double(0.0, u, r0);
        full.rhs_double(0.0, u, r1);
        Vec rdiss = r1 - r0;  // isolate the A_D w contribution
        double val = 0.0, scale = 0.0;
        for (int i = 0; i < full.nodes(); ++i) {
          auto w = entropy_variables<double, 1>(
              Eigen::Vector3d(u.segment<3>(i * 3)), gas);
          val += full.h_global()(i) * w.dot(rdiss.segment<3>(i * 3));
          scale += full.h_global()(i) *
                   w.cwiseAbs().dot(rdiss.segment<3>(i * 3).cwiseAbs());
        }
        CHECK(val <= 1e-11 * std::max(1.0, scale));
      }
    }
  }
}

TEST_CASE("euler 2d: free stream and conservation") {
  for (auto scheme : {Scheme::Central, Scheme::HadamardEntropyStable}) {
    Semi2DConfig sc;
    sc.scheme = scheme;
    sc.sat = scheme == Scheme::Central ? SatKind::RoeMatrix
                                       : SatKind::EntropyDissipativeMatrix;
    sc.kx = 2;
    sc.ky = 2;
    sc.x0 = -1;
    sc.x1 = 1;
    sc.y0 = -1;
    sc.y1 = 1;
    sc.diss.eps = 0.01;
    sc.diss.s = 3;
    sc.diss.mode = scheme == Scheme::Central ? CoeffMode::MatrixBlock
                                             : CoeffMode::MatrixMatrixBlock;
    sc.diss.vars = scheme == Scheme::Central ? VarSet::Conservative
                                             : VarSet::Entropy;
    auto dist = build_nodal_distribution(Family::CSBP, 2, 8);
    auto op = build_sbp_operator(dist, 1.0);
    SemiDisc2D sd(op, op, sc);

    Vec uc = sd.project([](double, double) {
      Eigen::Vector4d q;
      q << 1.1, 0.25, -0.4, 2.0;
      return q;
    });
    Vec r(sd.dofs());
    sd.rhs_double(0.0, uc, r);
    CHECK(r.cwiseAbs().maxCoeff() <= 1e-12);

    std::mt19937_64 rng(13);
    const int nodes = sd.dofs() / 4;
    for (int trial = 0; trial < 10; ++trial) {
      Vec u = random_euler(rng, nodes, 2);
      sd.rhs_double(0.0, u, r);
      Vec tot = Vec::Zero(4), mass = Vec::Zero(4);
      for (int b = 0; b < sd.n_blocks(); ++b)
        for (int i = 0; i < sd.nx(); ++i)
          for (int j = 0; j < sd.ny(); ++j) {
            const double w = sd.node_weight(i, j);
            const int at = ((b * sd.nx() + i) * sd.ny() + j) * 4;
            tot += w * r.segment<4>(at);
            mass += w * r.segment<4>(at).cwiseAbs();
          }
      for (int c = 0; c < 4; ++c)
        CHECK(std::abs(tot(c)) <= 1e-11 * std::max(1.0, mass(c)));
    }
  }
}

TEST_CASE("euler 2d hadamard: semi-discrete entropy conservation") {
  EulerParams gas;
  Semi2DConfig sc;
  sc.scheme = Scheme::HadamardEntropyStable;
  sc.sat = SatKind::Symmetric;  // pure entropy-conservative coupling
  sc.kx = 2;
  sc.ky = 2;
  sc.x0 = -1;
  sc.x1 = 1;
  sc.y0 = -1;
  sc.y1 = 1;
  auto dist = build_nodal_distribution(Family::CSBP, 2, 9);
  auto op = build_sbp_operator(dist, 1.0);
  SemiDisc2D sd(op, op, sc);
  std::mt19937_64 rng(37);
  Vec r(sd.dofs());
  for (int trial = 0; trial < 20; ++trial) {
    Vec u = random_euler(rng, sd.dofs() / 4, 2);
    sd.rhs_double(0.0, u, r);
    double val = 0.0, scale = 0.0;
    for (int b = 0; b < sd.n_blocks(); ++b)
      for (int i = 0; i < sd.nx(); ++i)
        for (int j = 0; j < sd.ny(); ++j) {
          const double w = sd.node_weight(i, j);
          const int at = ((b * sd.nx() + i) * sd.ny() + j) * 4;
          auto wv = entropy_variables<double, 2>(
              Eigen::Vector4d(u.segment<4>(at)), gas);
          val += w * wv.dot(r.segment<4>(at));
          scale += w * wv.cwiseAbs().dot(r.segment<4>(at).cwiseAbs());
        }
    CHECK(std::abs(val) <= 1e-10 * std::max(1.0, scale));
  }
}

TEST_CASE("euler 1d on LG elements: trace coupling conserves") {
  // LG blocks have no boundary nodes; interfaces couple through the dense
  // extrapolation vectors. Conservation and free stream must still hold.
  Semi1DConfig sc;
  sc.pde = PdeId::Euler1D;
  sc.scheme = Scheme::HadamardEntropyStable;
  sc.sat = SatKind::Rusanov;
  sc.n_blocks = 4;
  sc.x0 = -1;
  sc.x1 = 1;
  sc.diss.eps = 0.01;
  sc.diss.s = 3;
  sc.diss.include_b = false;
  sc.diss.mode = CoeffMode::MatrixMatrixBlock;
  sc.diss.vars = VarSet::Entropy;
  auto dist = build_nodal_distribution(Family::LG, 3, 4);
  auto op = build_sbp_operator(dist, 0.5);
  SemiDisc1D sd(op, sc);

  Vec uc(sd.dofs());
  Eigen::Vector3d inf;
  inf << 1.2, -0.4, 2.6;
  for (int i = 0; i < sd.nodes(); ++i) uc.segment<3>(i * 3) = inf;
  Vec r(sd.dofs());
  sd.rhs_double(0.0, uc, r);
  CHECK(r.cwiseAbs().maxCoeff() <= 1e-12);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    // smooth field: random trigonometric density/velocity/pressure profiles
    double a1 = 0.3 * std::sin(trial), a2 = 0.2 * std::cos(2.0 * trial);
    Vec u(sd.dofs());
    for (int i = 0; i < sd.nodes(); ++i) {
      double x = sd.x()(i);
      double rho = 1.0 + 0.4 * std::sin(M_PI * x + a1);
      double v = 0.3 * std::cos(M_PI * x + a2);
      double p = 1.5 + 0.5 * std::sin(2.0 * M_PI * x);
      u.segment<3>(i * 3) << rho, rho * v, p / 0.4 + 0.5 * rho * v * v;
    }
    sd.rhs_double(0.0, u, r);
    Vec tot = Vec::Zero(3), mass = Vec::Zero(3);
    for (int i = 0; i < sd.nodes(); ++i) {
      tot += sd.h_global()(i) * r.segment<3>(i * 3);
      mass += sd.h_global()(i) * r.segment<3>(i * 3).cwiseAbs();
    }
    for (int c = 0; c < 3; ++c)
      CHECK(std::abs(tot(c)) <= 1e-11 * std::max(1.0, mass(c)));
  }
}

TEST_CASE("2d hadamard vortex holds entropy and admissibility short-time") {
  Semi2DConfig sc;
  sc.scheme = Scheme::HadamardEntropyStable;
  sc.sat = SatKind::EntropyDissipativeMatrix;
  sc.kx = 1;
  sc.ky = 1;
  sc.diss.eps = 0.001;
  sc.diss.s = 4;
  sc.diss.mode = CoeffMode::MatrixMatrixBlock;
  sc.diss.vars = VarSet::Entropy;
  auto dist = build_nodal_distribution(Family::CSBP, 3, 24);
  auto op = build_sbp_operator(dist, 10.0);
  SemiDisc2D sd(op, op, sc);
  EulerParams gas;
  VortexParams vp;
  Vec u0 = sd.project([&](double x, double y) {
    return vortex_state(x, y, 0.0, 0.0, vp, gas);
  });
  IntegratorOptions opt;
  opt.t_final = 0.5;
  opt.rtol = 1e-9;
  opt.atol = 1e-9;
  std::vector<double> marks = {0.1, 0.2, 0.3, 0.4, 0.5};
  auto traj = integrate(
      [&](double t, const Vec& u, Vec& out) { sd.rhs_double(t, u, out); }, u0,
      opt, [&](const Vec& u) { return sd.admissible_state(u); }, marks);
  CHECK_FALSE(traj.crash.crashed);
  double prev = 1e100;
  for (const auto& u : traj.states) {
    double s = sd.functionals(u).entropy;
    CHECK(s <= prev + 1e-8);
    prev = s;
  }
}

TEST_CASE("functionals: quadrature of nodal values") {
  auto sd = linconv(Family::CSBP, 2, 40, 1, SatKind::Symmetric);
  Vec zero = Vec::Zero(sd.dofs());
  CHECK(sd.functionals(zero).energy == 0.0);
  Vec one = Vec::Ones(sd.dofs());
  CHECK(sd.functionals(one).energy == doctest::Approx(1.0).epsilon(1e-12));

  // Gaussian energy against a fine composite-trapezoid reference
  auto fine = [&] {
    const int m = 1000000;
    double acc = 0.0;
    for (int i = 0; i <= m; ++i) {
      double x = double(i) / m;
      double g = gaussian_pulse(x);
      acc += (i == 0 || i == m) ? 0.5 * g * g : g * g;
    }
    return acc / m;
  }();
  auto sd4 = linconv(Family::CSBP, 4, 200, 1, SatKind::Symmetric);
  Vec g(sd4.dofs());
  for (int i = 0; i < sd4.nodes(); ++i) g(i) = gaussian_pulse(sd4.x()(i));
  CHECK(std::abs(sd4.functionals(g).energy - fine) <= 1e-8);
}

TEST_CASE("unsupported configurations are rejected") {
  auto dist = build_nodal_distribution(Family::CSBP, 2, 10);
  auto op = build_sbp_operator(dist, 1.0);

  Semi1DConfig bad;
  bad.pde = PdeId::LinearConvection;
  bad.scheme = Scheme::SplitFormBurgers;
  CHECK_THROWS_AS(SemiDisc1D(op, bad), UnsupportedConfig);

  bad.pde = PdeId::Burgers;
  bad.scheme = Scheme::UpwindFVS;  // needs the upwind-operator constructor
  CHECK_THROWS_AS(SemiDisc1D(op, bad), UnsupportedConfig);

  Semi2DConfig bad2;
  bad2.scheme = Scheme::UpwindFVS;
  CHECK_THROWS_AS(SemiDisc2D(op, op, bad2), UnsupportedConfig);

  // block operator must tile the domain
  Semi1DConfig sc;
  sc.pde = PdeId::LinearConvection;
  sc.scheme = Scheme::Central;
  sc.n_blocks = 3;  // block length 1/3, operator built for length 1
  CHECK_THROWS_AS(SemiDisc1D(op, sc), DimensionMismatch);
}

TEST_CASE("admissibility detection") {
  Semi1DConfig sc;
  sc.pde = PdeId::Euler1D;
  sc.scheme = Scheme::HadamardEntropyStable;
  sc.sat = SatKind::Rusanov;
  sc.x0 = -1;
  sc.x1 = 1;
  auto dist = build_nodal_distribution(Family::CSBP, 2, 10);
  auto op = build_sbp_operator(dist, 2.0);
  SemiDisc1D sd(op, sc);
  std::mt19937_64 rng(17);
  Vec u = random_euler(rng, sd.nodes(), 1);
  CHECK(sd.admissible_state(u));
  u(3) = -0.2;  // negative density somewhere
  CHECK(!sd.admissible_state(u));
}
