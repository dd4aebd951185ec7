#include "sbpdiss/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "sbpdiss/problems.hpp"

namespace sbpdiss {

namespace {

void domain_for(PdeId pde, double& x0, double& x1) {
  if (pde == PdeId::Euler1D) {
    x0 = -1.0;
    x1 = 1.0;
  } else {
    x0 = 0.0;
    x1 = 1.0;
  }
}

DissipationSpec diss_spec_of(const ExperimentConfig& cfg) {
  DissipationSpec d;
  d.eps = cfg.eps;
  d.s = cfg.s;
  d.include_b = cfg.include_b;
  d.include_htilde = cfg.include_htilde;
  d.mode = cfg.mode;
  d.vars = cfg.vars;
  return d;
}

IntegratorOptions integrator_of(const ExperimentConfig& cfg) {
  IntegratorOptions o;
  o.method = cfg.method;
  o.rtol = cfg.rtol;
  o.atol = cfg.atol;
  o.dt_init = cfg.dt_init;
  o.t_final = cfg.t_final;
  return o;
}

// fixed-step RK4: dt from the CFL number, smallest node gap and the largest
// wave speed of the initial state
double rk4_dt_from_cfl(const ExperimentConfig& cfg, const Vec& x, const Vec& u0,
                       int ncomp) {
  double hmin = 1e300;
  for (int i = 1; i < x.size(); ++i)
    if (x(i) > x(i - 1)) hmin = std::min(hmin, x(i) - x(i - 1));
  double lam = 0.0;
  const int nodes = static_cast<int>(x.size());
  if (ncomp == 1) {
    if (cfg.pde == PdeId::LinearConvection) {
      lam = std::abs(cfg.wave_speed);
    } else {
      for (int i = 0; i < nodes; ++i) lam = std::max(lam, std::abs(u0(i)));
    }
  } else {
    EulerParams gas{cfg.gamma};
    for (int i = 0; i < nodes; ++i)
      lam = std::max(lam, max_wave_speed<double, 1>(
                              Eigen::Vector3d(u0.segment<3>(i * 3)), 0, gas));
  }
  if (lam <= 0.0) lam = 1.0;
  return cfg.cfl * hmin / lam;
}

std::vector<double> output_marks(double t_final, int n) {
  std::vector<double> out;
  for (int i = 1; i <= n; ++i) out.push_back(t_final * i / n);
  return out;
}

Vec random_euler_states(std::mt19937_64& rng, int nodes, int dim) {
  std::uniform_real_distribution<double> rho_d(0.1, 3.0), v_d(-2.0, 2.0),
      p_d(0.1, 5.0);
  const int nc = dim + 2;
  Vec u(nodes * nc);
  for (int i = 0; i < nodes; ++i) {
    double rho = rho_d(rng), p = p_d(rng);
    double ke = 0.0;
    u(i * nc + 0) = rho;
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

SemiDisc1D make_semidisc1d(const ExperimentConfig& cfg) {
  Semi1DConfig sc;
  sc.pde = cfg.pde;
  sc.scheme = cfg.scheme;
  sc.sat = cfg.sat;
  sc.diss = diss_spec_of(cfg);
  sc.wave_speed = cfg.wave_speed;
  sc.gas.gamma = cfg.gamma;
  sc.n_blocks = cfg.blocks;
  domain_for(cfg.pde, sc.x0, sc.x1);
  if (cfg.pde == PdeId::Euler1D && sc.diss.enabled() &&
      (sc.diss.mode == CoeffMode::NodalScalar ||
       sc.diss.mode == CoeffMode::HalfNodeScalar))
    throw ValidationError("mode", "Euler dissipation requires a block mode");
  if (cfg.scheme == Scheme::UpwindFVS) {
    return SemiDisc1D(build_upwind_pu2_block(), sc);
  }
  auto dist = build_nodal_distribution(cfg.family, cfg.p, cfg.n);
  auto op = build_sbp_operator(dist, (sc.x1 - sc.x0) / sc.n_blocks);
  return SemiDisc1D(op, sc);
}

Vec initial_condition_1d(const SemiDisc1D& sd, const ExperimentConfig& cfg) {
  const Vec& x = sd.x();
  Vec u(sd.dofs());
  switch (cfg.pde) {
    case PdeId::LinearConvection:
      for (int i = 0; i < sd.nodes(); ++i) u(i) = gaussian_pulse(x(i));
      break;
    case PdeId::Burgers:
      for (int i = 0; i < sd.nodes(); ++i) u(i) = burgers_ic(x(i), cfg.burgers_beta);
      break;
    case PdeId::Euler1D: {
      EulerParams gas{cfg.gamma};
      for (int i = 0; i < sd.nodes(); ++i)
        u.segment<3>(i * 3) = density_wave_ic(x(i), gas);
      break;
    }
    default:
      throw UnsupportedConfig("initial_condition_1d: 1D PDEs only");
  }
  return u;
}

// ------------------------------------------------------------------ spectra

ExperimentResult run_spectra(const ExperimentConfig& cfg) {
  ExperimentResult res;
  auto sd = make_semidisc1d(cfg);
  Mat jac;
  std::string method;
  if (cfg.pde == PdeId::LinearConvection) {
    jac = sd.assemble_linear_operator();
    method = "assembled-linear";
  } else {
    Vec u0 = initial_condition_1d(sd, cfg);
    auto jr = jacobian_complex_step(
        [&](double t, const VecT<Cplx>& u, VecT<Cplx>& out) { sd.rhs(t, u, out); },
        u0);
    jac = jr.matrix;
    method = jr.method;
  }
  auto rep = spectrum_of(jac, method);

  Table eig;
  eig.columns = {"re", "im"};
  for (Eigen::Index i = 0; i < rep.eigenvalues.size(); ++i)
    eig.add_row({Table::num(rep.eigenvalues(i).real()),
                 Table::num(rep.eigenvalues(i).imag())});
  Table summary;
  summary.columns = {"dofs", "max_real_part", "spectral_radius", "jacobian_method"};
  summary.add_row({std::to_string(sd.dofs()), Table::num(rep.max_real_part),
                   Table::num(rep.spectral_radius), method});
  res.tables["eigenvalues"] = eig;
  res.tables["summary"] = summary;
  return res;
}

// -------------------------------------------------------------- convergence

ExperimentResult run_convergence(const ExperimentConfig& cfg) {
  if (cfg.pde != PdeId::LinearConvection)
    throw UnsupportedConfig("convergence command drives linear convection");
  ExperimentResult res;
  ConvergenceReport rep;
  const bool se = cfg.family != Family::CSBP;
  for (int g : cfg.grids) {
    ExperimentConfig c = cfg;
    if (se) {
      c.blocks = g;  // refine by element count
      c.n = cfg.p + 1;
    } else {
      c.n = g;
    }
    auto sd = make_semidisc1d(c);
    Vec u0 = initial_condition_1d(sd, c);
    auto traj = integrate(
        [&](double t, const Vec& u, Vec& out) { sd.rhs_double(t, u, out); }, u0,
        integrator_of(c));
    const Vec& uf = traj.states.back();
    const Vec& x = sd.x();
    double err2 = 0.0;
    for (int i = 0; i < sd.nodes(); ++i) {
      double xe = x(i) - cfg.wave_speed * cfg.t_final;
      xe -= std::floor(xe);
      double e = uf(i) - gaussian_pulse(xe);
      err2 += sd.h_global()(i) * e * e;
    }
    rep.grid_sizes.push_back(se ? g * (cfg.p + 1) : g);
    rep.mesh_sizes.push_back(se ? 1.0 / g : 1.0 / (g - 1.0));
    rep.errors.push_back(std::sqrt(err2));
  }
  fit_rate(rep);
  Table t;
  t.columns = {"grid", "h", "error_H"};
  for (size_t i = 0; i < rep.errors.size(); ++i)
    t.add_row({std::to_string(rep.grid_sizes[i]), Table::num(rep.mesh_sizes[i]),
               Table::num(rep.errors[i])});
  Table s;
  s.columns = {"rate", "fit_residual"};
  s.add_row({Table::num(rep.rate), Table::num(rep.fit_residual)});
  res.tables["errors"] = t;
  res.tables["rate"] = s;
  return res;
}

// -------------------------------------------------------------------- run1d

ExperimentResult run_run1d(const ExperimentConfig& cfg) {
  ExperimentResult res;
  auto sd = make_semidisc1d(cfg);
  Vec u0 = initial_condition_1d(sd, cfg);
  auto marks = output_marks(cfg.t_final, cfg.n_outputs);
  IntegratorOptions opt = integrator_of(cfg);
  if (opt.method == TimeMethod::RK4 && opt.dt_init <= 0.0 && cfg.cfl > 0.0)
    opt.dt_init = rk4_dt_from_cfl(cfg, sd.x(), u0, sd.ncomp());
  auto traj = integrate(
      [&](double t, const Vec& u, Vec& out) { sd.rhs_double(t, u, out); }, u0,
      opt, [&](const Vec& u) { return sd.admissible_state(u); },
      marks);

  Table series;
  series.columns = {"t", "energy", "entropy"};
  for (int c = 0; c < sd.ncomp(); ++c)
    series.columns.push_back("conserved_" + std::to_string(c));
  if (cfg.track_spectrum) series.columns.push_back("max_re");
  for (size_t k = 0; k < traj.states.size(); ++k) {
    auto f = sd.functionals(traj.states[k]);
    std::vector<std::string> row = {Table::num(traj.times[k]),
                                    Table::num(f.energy), Table::num(f.entropy)};
    for (int c = 0; c < sd.ncomp(); ++c) row.push_back(Table::num(f.conserved(c)));
    if (cfg.track_spectrum) {
      if (!sd.admissible_state(traj.states[k])) {
        row.push_back("nan");
      } else {
        auto jr = jacobian_complex_step(
            [&](double t, const VecT<Cplx>& u, VecT<Cplx>& out) {
              sd.rhs(t, u, out);
            },
            traj.states[k], traj.times[k]);
        row.push_back(Table::num(spectrum_of(jr.matrix).max_real_part));
      }
    }
    series.add_row(row);
  }
  Table summary;
  summary.columns = {"crashed", "crash_time", "crash_cause", "steps_accepted",
                     "steps_rejected"};
  summary.add_row({traj.crash.crashed ? "1" : "0",
                   traj.crash.crashed ? Table::num(traj.crash.time) : "",
                   traj.crash.cause, std::to_string(traj.steps_accepted),
                   std::to_string(traj.steps_rejected)});
  res.tables["series"] = series;
  res.tables["summary"] = summary;
  res.crashed = traj.crash.crashed;
  res.crash_time = traj.crash.time;
  return res;
}

// ------------------------------------------------------------------- vortex

namespace {

SemiDisc2D make_vortex_semidisc(const ExperimentConfig& cfg, int grid) {
  Semi2DConfig sc;
  sc.scheme = cfg.scheme;
  sc.sat = cfg.sat;
  sc.diss = diss_spec_of(cfg);
  sc.gas.gamma = cfg.gamma;
  const bool se = cfg.family != Family::CSBP;
  sc.kx = se ? grid : cfg.blocks_x;
  sc.ky = se ? grid : cfg.blocks_y;
  const int n = se ? cfg.p + 1 : grid;
  auto dist = build_nodal_distribution(cfg.family, cfg.p, n);
  auto opx = build_sbp_operator(dist, (sc.x1 - sc.x0) / sc.kx);
  auto opy = build_sbp_operator(dist, (sc.y1 - sc.y0) / sc.ky);
  return SemiDisc2D(opx, opy, sc);
}

}  // namespace

ExperimentResult run_vortex(const ExperimentConfig& cfg) {
  ExperimentResult res;
  VortexParams vp{cfg.mach, cfg.vortex_beta, cfg.vortex_radius};
  EulerParams gas{cfg.gamma};
  ConvergenceReport prep, rrep, srep;
  Table t;
  t.columns = {"grid", "h", "pressure_error", "density_error", "entropy_error",
               "crashed"};
  for (int g : cfg.grids) {
    auto sd = make_vortex_semidisc(cfg, g);
    Vec u0 = sd.project([&](double x, double y) {
      return vortex_state(x, y, 0.0, 0.0, vp, gas);
    });
    auto traj = integrate(
        [&](double tt, const Vec& u, Vec& out) { sd.rhs_double(tt, u, out); },
        u0, integrator_of(cfg),
        [&](const Vec& u) { return sd.admissible_state(u); });
    const Vec& uf = traj.states.back();
    double pe = 0.0, re = 0.0, see = 0.0;
    for (int bx = 0; bx < sd.config().kx; ++bx)
      for (int by = 0; by < sd.config().ky; ++by) {
        const int b = bx * sd.config().ky + by;
        for (int i = 0; i < sd.nx(); ++i)
          for (int j = 0; j < sd.ny(); ++j) {
            Eigen::Vector4d uh =
                uf.segment<4>(((b * sd.nx() + i) * sd.ny() + j) * 4);
            Eigen::Vector4d ue = vortex_exact(sd.node_x(bx, i), sd.node_y(by, j),
                                              cfg.t_final, vp, gas);
            const double w = sd.node_weight(i, j);
            auto prim = [&](const Eigen::Vector4d& q, double& p, double& s) {
              double rho = q(0);
              double ke = (q(1) * q(1) + q(2) * q(2)) / rho;
              p = (gas.gamma - 1.0) * (q(3) - 0.5 * ke);
              s = std::log(p) - gas.gamma * std::log(rho);
            };
            double ph, sh, pex, sex;
            prim(uh, ph, sh);
            prim(ue, pex, sex);
            pe += w * (ph - pex) * (ph - pex);
            re += w * (uh(0) - ue(0)) * (uh(0) - ue(0));
            see += w * (sh - sex) * (sh - sex);
          }
      }
    const double h = (sd.config().x1 - sd.config().x0) /
                     (sd.config().kx * std::max(1, sd.nx() - 1));
    prep.mesh_sizes.push_back(h);
    prep.errors.push_back(std::sqrt(pe));
    rrep.mesh_sizes.push_back(h);
    rrep.errors.push_back(std::sqrt(re));
    srep.mesh_sizes.push_back(h);
    srep.errors.push_back(std::sqrt(see));
    prep.grid_sizes.push_back(g);
    rrep.grid_sizes.push_back(g);
    srep.grid_sizes.push_back(g);
    t.add_row({std::to_string(g), Table::num(h), Table::num(std::sqrt(pe)),
               Table::num(std::sqrt(re)), Table::num(std::sqrt(see)),
               traj.crash.crashed ? "1" : "0"});
    if (traj.crash.crashed) {
      res.crashed = true;
      res.crash_time = traj.crash.time;
    }
  }
  fit_rate(prep);
  fit_rate(rrep);
  fit_rate(srep);
  Table s;
  s.columns = {"pressure_rate", "density_rate", "entropy_rate"};
  s.add_row({Table::num(prep.rate), Table::num(rrep.rate), Table::num(srep.rate)});
  res.tables["errors"] = t;
  res.tables["rates"] = s;
  return res;
}

// ----------------------------------------------------------------- khi-demo

namespace {

SemiDisc2D make_khi_semidisc(const ExperimentConfig& cfg, bool entropy_variant) {
  Semi2DConfig sc;
  sc.x0 = -1.0;
  sc.x1 = 1.0;
  sc.y0 = -1.0;
  sc.y1 = 1.0;
  sc.gas.gamma = cfg.gamma;
  sc.kx = cfg.blocks_x;
  sc.ky = cfg.blocks_y;
  if (entropy_variant) {
    sc.scheme = Scheme::HadamardEntropyStable;
    sc.sat = SatKind::EntropyDissipativeMatrix;
    sc.diss = diss_spec_of(cfg);
    if (sc.diss.mode != CoeffMode::MatrixMatrixBlock &&
        sc.diss.mode != CoeffMode::ScalarMatrixBlock)
      sc.diss.mode = CoeffMode::MatrixMatrixBlock;
    sc.diss.vars = VarSet::Entropy;
  } else {
    sc.scheme = Scheme::Central;
    sc.sat = SatKind::RoeMatrix;
    sc.diss = DissipationSpec{};  // eps = 0 baseline
  }
  auto dist = build_nodal_distribution(cfg.family, cfg.p, cfg.n);
  auto opx = build_sbp_operator(dist, (sc.x1 - sc.x0) / sc.kx);
  auto opy = build_sbp_operator(dist, (sc.y1 - sc.y0) / sc.ky);
  return SemiDisc2D(opx, opy, sc);
}

}  // namespace

ExperimentResult run_khi_demo(const ExperimentConfig& cfg) {
  if (cfg.n > 64)
    throw ValidationError("N", "khi-demo is limited to 64^2 nodes per block");
  ExperimentResult res;
  EulerParams gas{cfg.gamma};
  Table runs;
  runs.columns = {"scheme", "crashed", "reached_time", "crash_cause"};
  Table ent;
  ent.columns = {"t", "entropy", "energy"};

  double central_crash = cfg.t_final;
  for (int variant = 0; variant < 2; ++variant) {
    const bool entropy_variant = variant == 1;
    auto sd = make_khi_semidisc(cfg, entropy_variant);
    Vec u0 = sd.project(
        [&](double x, double y) { return khi_ic(x, y, gas); });
    IntegratorOptions opt = integrator_of(cfg);
    auto marks = output_marks(opt.t_final, std::max(10, cfg.n_outputs));
    auto traj = integrate(
        [&](double tt, const Vec& u, Vec& out) { sd.rhs_double(tt, u, out); },
        u0, opt, [&](const Vec& u) { return sd.admissible_state(u); }, marks);
    const double reached = traj.times.back();
    runs.add_row({entropy_variant ? "hadamard+entropy-diss" : "central-eps0",
                  traj.crash.crashed ? "1" : "0", Table::num(reached),
                  traj.crash.cause});
    if (!entropy_variant) {
      central_crash = traj.crash.crashed ? traj.crash.time : opt.t_final;
      res.crash_time = central_crash;
      res.crashed = traj.crash.crashed;
    } else {
      for (size_t k = 0; k < traj.states.size(); ++k) {
        auto f = sd.functionals(traj.states[k]);
        ent.add_row({Table::num(traj.times[k]), Table::num(f.entropy),
                     Table::num(f.energy)});
      }
    }
  }
  res.tables["runs"] = runs;
  res.tables["entropy_history"] = ent;
  return res;
}

// -------------------------------------------------------------------- dumps

ExperimentResult run_dump_operator(const ExperimentConfig& cfg,
                                   const std::string& out_dir) {
  ExperimentResult res;
  auto dist = build_nodal_distribution(cfg.family, cfg.p, cfg.n);
  auto op = build_sbp_operator(dist, 1.0);
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  write_matrix_txt(out_dir + "/H.txt", Mat(op.h.asDiagonal()));
  write_matrix_txt(out_dir + "/D.txt", op.d);
  write_matrix_txt(out_dir + "/Q.txt", op.q);
  write_matrix_txt(out_dir + "/E.txt", op.e);
  write_matrix_txt(out_dir + "/nodes.txt", Mat(dist.nodes.transpose()));
  return res;
}

ExperimentResult run_dump_dissipation(const ExperimentConfig& cfg,
                                      const std::string& out_dir) {
  ExperimentResult res;
  auto dist = build_nodal_distribution(cfg.family, cfg.p, cfg.n);
  auto op = build_sbp_operator(dist, 1.0);
  DissipationSpec spec = diss_spec_of(cfg);
  if (spec.eps == 0.0) spec.eps = 1.0;
  if (spec.mode != CoeffMode::NodalScalar && spec.mode != CoeffMode::HalfNodeScalar)
    spec.mode = CoeffMode::NodalScalar;
  DissipationOperator diss(op, spec);
  Vec coeff = make_scalar_coefficient(Vec::Ones(op.size()), spec.mode);
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  write_matrix_txt(out_dir + "/Dtilde.txt", diss.undivided().matrix);
  write_matrix_txt(out_dir + "/B.txt", Mat(diss.boundary().diag.asDiagonal()));
  write_matrix_txt(out_dir + "/AD.txt", diss.dense_scalar_matrix(coeff));
  return res;
}

// ------------------------------------------------------------------- verify

namespace {

struct Verifier {
  Table table;
  bool all_pass = true;
  Verifier() { table.columns = {"invariant", "residual", "tolerance", "pass"}; }
  void check(const std::string& name, double residual, double tol) {
    const bool ok = residual <= tol;
    all_pass = all_pass && ok;
    table.add_row({name, Table::num(residual), Table::num(tol), ok ? "1" : "0"});
  }
};

}  // namespace

ExperimentResult run_verify(const ExperimentConfig& cfg) {
  ExperimentResult res;
  Verifier v;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  // ---- operator invariants over all families ----
  std::vector<std::pair<Family, int>> fams;
  for (int p = 1; p <= 4; ++p) fams.push_back({Family::CSBP, p});
  for (int p = 1; p <= 6; ++p) fams.push_back({Family::LGL, p});
  for (int p = 1; p <= 6; ++p) fams.push_back({Family::LG, p});
  for (auto [fam, p] : fams) {
    const int n = fam == Family::CSBP ? std::max(4 * p + 4, 2 * p + 1) : p + 1;
    auto dist = build_nodal_distribution(fam, p, n);
    auto op = build_sbp_operator(dist, 2.0);
    std::string tag = to_string(fam) + " p=" + std::to_string(p);
    Mat r = op.q + op.q.transpose() - op.e;
    v.check("sbp-property " + tag,
            r.cwiseAbs().maxCoeff(), 1e-12 * op.q.cwiseAbs().maxCoeff());
    // accuracy D x^k = k x^{k-1}
    Vec x(op.size());
    for (int i = 0; i < op.size(); ++i) x(i) = dist.nodes(i) * op.node_spacing;
    double acc = 0.0;
    for (int k = 0; k <= p; ++k) {
      Vec xk = x.array().pow(k);
      Vec ref = k == 0 ? Vec(Vec::Zero(op.size()))
                       : Vec(k * x.array().pow(k - 1));
      double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
      acc = std::max(acc, (op.d * xk - ref).cwiseAbs().maxCoeff() / scale);
    }
    v.check("accuracy " + tag, acc, 1e-10);
    // quadrature exactness
    const int qdeg = fam == Family::LG ? 2 * p + 1 : 2 * p - 1;
    double qerr = 0.0;
    for (int k = 0; k <= qdeg; ++k) {
      double exact = std::pow(2.0, k + 1) / (k + 1);
      double got = op.h.dot(Vec(x.array().pow(k)));
      qerr = std::max(qerr, std::abs(got - exact) / std::abs(exact));
    }
    v.check("quadrature " + tag, qerr, 1e-10);
    v.check("norm-positive " + tag, op.h.minCoeff() > 0 ? 0.0 : 1.0, 0.5);
    double hsum = std::abs(op.h.sum() - 2.0) / 2.0;
    v.check("norm-sums-to-length " + tag, hsum, 1e-12);
  }

  // ---- undivided differences ----
  for (auto [fam, p] : fams) {
    const int n = fam == Family::CSBP ? std::max(4 * p + 4, 2 * p + 1) : p + 1;
    auto dist = build_nodal_distribution(fam, p, n);
    const int smax = fam == Family::CSBP ? std::min(p + 1, n - 1) : p;
    for (int s = fam == Family::CSBP ? 1 : p; s <= smax; ++s) {
      auto ud = build_undivided_diff(dist, s);
      double racc = 0.0;
      for (int k = 0; k < s; ++k)
        racc = std::max(
            racc, (ud.matrix * dist.nodes.array().pow(k).matrix()).cwiseAbs().maxCoeff());
      v.check("dtilde-annihilation " + to_string(fam) + " p=" + std::to_string(p) +
                  " s=" + std::to_string(s),
              racc, 1e-10);
      double sfact = 1.0;
      for (int k = 2; k <= s; ++k) sfact *= k;
      Vec top = ud.matrix * dist.nodes.array().pow(s).matrix();
      v.check("dtilde-target " + to_string(fam) + " p=" + std::to_string(p) +
                  " s=" + std::to_string(s),
              (top.array() - sfact).abs().maxCoeff() / sfact, 1e-9);
      int maxnnz = 0;
      for (int i = 0; i < ud.matrix.rows(); ++i) {
        int nnz = 0;
        for (int j = 0; j < ud.matrix.cols(); ++j)
          if (ud.matrix(i, j) != 0.0) ++nnz;
        maxnnz = std::max(maxnnz, nnz);
      }
      v.check("dtilde-minwidth " + to_string(fam) + " p=" + std::to_string(p) +
                  " s=" + std::to_string(s),
              maxnnz <= s + 1 ? 0.0 : 1.0, 0.5);
    }
  }

  // ---- golden dissipation matrices ----
  {
    auto dist = build_nodal_distribution(Family::CSBP, 1, 8);
    auto op = build_sbp_operator(dist, 14.0);  // dx = 2
    DissipationSpec spec;
    spec.eps = 1.0;
    spec.s = 2;
    spec.include_b = true;
    DissipationOperator diss(op, spec);
    Mat ad = diss.dense_scalar_matrix(Vec::Ones(8)) * op.node_spacing;
    Mat expect = Mat::Zero(3, 5);
    expect << -2, 4, -2, 0, 0, 2, -5, 4, -1, 0, -1, 4, -6, 4, -1;
    double err = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 5; ++j) err = std::max(err, std::abs(ad(i, j) - expect(i, j)));
    v.check("golden-AD2-withB", err, 1e-13);
    spec.include_b = false;
    DissipationOperator diss2(op, spec);
    Mat ad2 = diss2.dense_scalar_matrix(Vec::Ones(8)) * op.node_spacing;
    Mat expect2 = Mat::Zero(4, 6);
    expect2 << -4, 8, -4, 0, 0, 0, 4, -9, 6, -1, 0, 0, -2, 6, -7, 4, -1, 0, 0,
        -1, 4, -6, 4, -1;
    err = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 6; ++j)
        err = std::max(err, std::abs(ad2(i, j) - expect2(i, j)));
    v.check("golden-AD2-noB", err, 1e-13);
  }

  // ---- half-node s=1 operator (vol_diss_1st) ----
  {
    const int n = 7;
    auto dist = build_nodal_distribution(Family::CSBP, 1, n);
    auto op = build_sbp_operator(dist, n - 1.0);
    DissipationSpec spec;
    spec.eps = 1.0;
    spec.s = 1;
    spec.mode = CoeffMode::HalfNodeScalar;
    DissipationOperator diss(op, spec);
    double err = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      Vec a(n);
      for (int i = 0; i < n; ++i) a(i) = 0.5 + 0.5 * std::abs(unit(rng));
      Vec coeff = make_scalar_coefficient(a, CoeffMode::HalfNodeScalar);
      Mat ad = diss.dense_scalar_matrix(coeff) * op.node_spacing;
      Mat ref = Mat::Zero(n, n);
      ref(0, 0) = -(a(0) + a(1));
      ref(0, 1) = a(0) + a(1);
      for (int i = 1; i < n - 1; ++i) {
        ref(i, i - 1) = 0.5 * (a(i - 1) + a(i));
        ref(i, i) = -(0.5 * a(i - 1) + a(i) + 0.5 * a(i + 1));
        ref(i, i + 1) = 0.5 * (a(i) + a(i + 1));
      }
      ref(n - 1, n - 2) = a(n - 2) + a(n - 1);
      ref(n - 1, n - 1) = -(a(n - 2) + a(n - 1));
      err = std::max(err, (ad - ref).cwiseAbs().maxCoeff());
    }
    v.check("golden-AD1-halfnode", err, 1e-13);
  }

  // ---- upwind block ----
  {
    auto uw = build_upwind_pu2_block();
    double rel = 0.0;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        rel = std::max(rel, std::abs(uw.d_minus(i, j) + uw.d_plus(4 - i, 4 - j)));
    v.check("upwind-reflection", rel, 1e-14);
    v.check("upwind-S-symmetric", (uw.s - uw.s.transpose()).cwiseAbs().maxCoeff(),
            1e-13);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (uw.s + uw.s.transpose()));
    v.check("upwind-S-psd", std::max(0.0, -es.eigenvalues().minCoeff()),
            1e-12 * uw.s.cwiseAbs().maxCoeff());
    Mat q = uw.h.asDiagonal() * uw.d_central;
    Mat e = Mat::Zero(5, 5);
    e(0, 0) = -1;
    e(4, 4) = 1;
    v.check("upwind-sbp", (q + q.transpose() - e).cwiseAbs().maxCoeff(), 1e-13);
    // antidissipation counterexample
    Vec x = Vec::LinSpaced(5, 0.0, 1.0);
    Vec u = (2.0 + 6.0 * x.array() - x.array().square()).matrix();
    double val = -u.dot(uw.s * (u.array().abs() * u.array()).matrix());
    v.check("upwind-antidissipation-0.185", std::abs(val - 0.185), 0.005);
  }

  // ---- conservation / dissipativity sweeps ----
  {
    auto dist = build_nodal_distribution(Family::CSBP, 2, 14);
    auto op = build_sbp_operator(dist, 1.0);
    for (int s : {1, 2, 3}) {
      for (bool with_b : {true, false}) {
        DissipationSpec spec;
        spec.eps = 1.0;
        spec.s = s;
        spec.include_b = with_b;
        spec.mode = s % 2 == 1 ? CoeffMode::HalfNodeScalar : CoeffMode::NodalScalar;
        DissipationOperator diss(op, spec);
        double cons = 0.0, dissv = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
          Vec a(op.size());
          for (int i = 0; i < op.size(); ++i) a(i) = std::abs(unit(rng)) + 0.01;
          Vec coeff = make_scalar_coefficient(a, spec.mode);
          Vec q(op.size()), out = Vec::Zero(op.size());
          for (int i = 0; i < op.size(); ++i) q(i) = unit(rng);
          diss.apply_scalar<double>(coeff, q, out);
          cons = std::max(cons, std::abs(op.h.dot(out)));
          dissv = std::max(dissv, q.dot(op.h.asDiagonal() * out));
        }
        std::string tag = " s=" + std::to_string(s) + (with_b ? " B" : " noB");
        v.check("conservation" + tag, cons, 1e-11);
        v.check("dissipativity" + tag, std::max(0.0, dissv), 1e-11);
      }
    }
  }

  // ---- physics invariants ----
  {
    EulerParams gas;
    double shuffle = 0.0, cons = 0.0, barth = 0.0, rt = 0.0, shuffle2 = 0.0,
           sym2 = 0.0;
    std::uniform_real_distribution<double> rho_d(0.1, 3.0), v_d(-2.0, 2.0),
        p_d(0.1, 5.0);
    for (int trial = 0; trial < 1000; ++trial) {
      Eigen::Vector3d ul, ur;
      double rl = rho_d(rng), vl = v_d(rng), pl = p_d(rng);
      double rr = rho_d(rng), vr = v_d(rng), pr = p_d(rng);
      ul << rl, rl * vl, pl / 0.4 + 0.5 * rl * vl * vl;
      ur << rr, rr * vr, pr / 0.4 + 0.5 * rr * vr * vr;
      auto f = chandrashekar_flux<double>(ul, ur, gas);
      auto wl = entropy_variables<double, 1>(ul, gas);
      auto wr = entropy_variables<double, 1>(ur, gas);
      shuffle = std::max(shuffle,
                         std::abs((wr - wl).dot(f) - (ur(1) - ul(1))));
      cons = std::max(cons, (chandrashekar_flux<double>(ul, ul, gas) -
                             euler_flux<double, 1>(ul, 0, gas))
                                .cwiseAbs()
                                .maxCoeff());
      // Barth scaling vs analytic du/dw
      auto eig = euler_eig<double, 1>(ul, 0, gas, true);
      barth = std::max(barth, (eig.x * eig.x.transpose() - dudw<double, 1>(ul, gas))
                                  .cwiseAbs()
                                  .maxCoeff());
      // entropy-variable round trip
      rt = std::max(rt, (conservative_from_entropy<double, 1>(wl, gas) - ul)
                                .cwiseAbs()
                                .maxCoeff() /
                            ul.cwiseAbs().maxCoeff());
      // 2D flux: shuffle + symmetry
      Eigen::Vector4d u2l, u2r;
      double v2l = v_d(rng), v2r = v_d(rng);
      u2l << rl, rl * vl, rl * v2l, pl / 0.4 + 0.5 * rl * (vl * vl + v2l * v2l);
      u2r << rr, rr * vr, rr * v2r, pr / 0.4 + 0.5 * rr * (vr * vr + v2r * v2r);
      for (int dir = 0; dir < 2; ++dir) {
        auto f2 = ranocha_flux_2d<double>(u2l, u2r, dir, gas);
        auto w2l = entropy_variables<double, 2>(u2l, gas);
        auto w2r = entropy_variables<double, 2>(u2r, gas);
        double psi_l = u2l(1 + dir), psi_r = u2r(1 + dir);
        shuffle2 = std::max(shuffle2,
                            std::abs((w2r - w2l).dot(f2) - (psi_r - psi_l)));
        sym2 = std::max(sym2, (f2 - ranocha_flux_2d<double>(u2r, u2l, dir, gas))
                                  .cwiseAbs()
                                  .maxCoeff());
      }
    }
    v.check("chandrashekar-shuffle", shuffle, 1e-12);
    v.check("chandrashekar-consistency", cons, 1e-12);
    v.check("barth-scaling-XXt", barth, 1e-10);
    v.check("entropy-roundtrip", rt, 1e-12);
    v.check("ranocha-shuffle-2d", shuffle2, 1e-12);
    v.check("ranocha-symmetry-2d", sym2, 1e-14);
  }

  // ---- semidiscretization invariants ----
  {
    // skew-adjointness, linear convection, symmetric SATs
    ExperimentConfig c = cfg;
    c.pde = PdeId::LinearConvection;
    c.scheme = Scheme::Central;
    c.sat = SatKind::Symmetric;
    c.family = Family::CSBP;
    c.p = 3;
    c.n = 24;
    c.blocks = 2;
    c.eps = 0.0;
    auto sd = make_semidisc1d(c);
    Mat m = sd.assemble_linear_operator();
    Mat hm = sd.h_global().asDiagonal() * m;
    v.check("skew-adjoint-linconv", (hm + hm.transpose()).cwiseAbs().maxCoeff(),
            1e-11);
    // conservation for random states, every 1D scheme
    double consmax = 0.0;
    for (auto scheme : {Scheme::Central, Scheme::HadamardEntropyStable}) {
      ExperimentConfig ce = cfg;
      ce.pde = PdeId::Euler1D;
      ce.scheme = scheme;
      ce.sat = scheme == Scheme::Central ? SatKind::RoeMatrix
                                         : SatKind::EntropyDissipativeMatrix;
      ce.family = Family::CSBP;
      ce.p = 2;
      ce.n = 12;
      ce.blocks = 2;
      ce.eps = 0.5;
      ce.s = 3;
      ce.mode = CoeffMode::MatrixMatrixBlock;
      ce.vars = VarSet::Entropy;
      auto sde = make_semidisc1d(ce);
      for (int trial = 0; trial < 100; ++trial) {
        Vec u = random_euler_states(rng, sde.nodes(), 1);
        Vec r(sde.dofs());
        sde.rhs_double(0.0, u, r);
        Vec tot = Vec::Zero(3);
        Vec mass = Vec::Zero(3);  // l1 size of the summands sets the scale
        for (int i = 0; i < sde.nodes(); ++i) {
          tot += sde.h_global()(i) * r.segment<3>(i * 3);
          mass += sde.h_global()(i) * r.segment<3>(i * 3).cwiseAbs();
        }
        for (int c = 0; c < 3; ++c)
          consmax = std::max(consmax, std::abs(tot(c)) / std::max(1.0, mass(c)));
      }
    }
    v.check("euler1d-conservation", consmax, 1e-11);
    // free stream 2D with dissipation
    Semi2DConfig s2;
    s2.scheme = Scheme::HadamardEntropyStable;
    s2.sat = SatKind::EntropyDissipativeMatrix;
    s2.kx = 2;
    s2.ky = 2;
    s2.x0 = -1;
    s2.x1 = 1;
    s2.y0 = -1;
    s2.y1 = 1;
    s2.diss.eps = 0.01;
    s2.diss.s = 3;
    s2.diss.mode = CoeffMode::MatrixMatrixBlock;
    s2.diss.vars = VarSet::Entropy;
    auto dist2 = build_nodal_distribution(Family::CSBP, 2, 8);
    auto opx = build_sbp_operator(dist2, 1.0);
    SemiDisc2D sd2(opx, opx, s2);
    Vec uc = sd2.project([&](double, double) {
      Eigen::Vector4d q;
      q << 1.2, 0.3, -0.2, 2.5;
      return q;
    });
    Vec r2(sd2.dofs());
    sd2.rhs_double(0.0, uc, r2);
    v.check("free-stream-2d", r2.cwiseAbs().maxCoeff(), 1e-12);
  }

  // ---- SE structure: rank-1 and C-choice uniqueness ----
  for (auto fam : {Family::LGL, Family::LG}) {
    for (int p = 2; p <= 6; ++p) {
      auto dist = build_nodal_distribution(fam, p, p + 1);
      auto op = build_sbp_operator(dist, 1.0);
      DissipationSpec spec;
      spec.eps = 1.0;
      spec.s = p;
      spec.include_b = true;
      DissipationOperator d1(op, spec);
      spec.include_b = false;
      DissipationOperator d2(op, spec);
      Mat a1 = d1.dense_scalar_matrix(Vec::Ones(p + 1));
      Mat a2 = d2.dense_scalar_matrix(Vec::Ones(p + 1));
      Eigen::JacobiSVD<Mat> svd(a2);
      double sv_ratio = svd.singularValues()(1) / svd.singularValues()(0);
      v.check("se-rank1 " + to_string(fam) + " p=" + std::to_string(p), sv_ratio,
              1e-10);
      Mat n1 = a1 / a1.norm();
      Mat n2 = a2 / a2.norm();
      double agree = std::min((n1 - n2).cwiseAbs().maxCoeff(),
                              (n1 + n2).cwiseAbs().maxCoeff());
      v.check("se-uniqueness " + to_string(fam) + " p=" + std::to_string(p),
              agree, 1e-10);
    }
  }

  res.tables["invariants"] = v.table;
  res.exit_code = v.all_pass ? 0 : 3;
  return res;
}

// ----------------------------------------------------------------- dispatch

ExperimentResult run_command(const ExperimentConfig& cfg,
                             const std::string& out_dir) {
  if (cfg.command == "verify") return run_verify(cfg);
  if (cfg.command == "spectra") return run_spectra(cfg);
  if (cfg.command == "convergence") return run_convergence(cfg);
  if (cfg.command == "run1d") return run_run1d(cfg);
  if (cfg.command == "vortex") return run_vortex(cfg);
  if (cfg.command == "khi-demo") return run_khi_demo(cfg);
  if (cfg.command == "dump-operator") return run_dump_operator(cfg, out_dir);
  if (cfg.command == "dump-dissipation")
    return run_dump_dissipation(cfg, out_dir);
  throw ValidationError("command", "unknown command: " + cfg.command);
}

void emit_result(const ExperimentResult& result, const ExperimentConfig& cfg,
                 const std::string& out_dir) {
  if (out_dir.empty()) return;
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  nlohmann::json manifest;
  manifest["config"] = nlohmann::json::parse(cfg.echo_json);
  manifest["config_hash"] = cfg.hash;
  manifest["exit_code"] = result.exit_code;
  for (const auto& [name, table] : result.tables) {
    write_csv(out_dir + "/" + name + ".csv", table, cfg.hash);
    nlohmann::json jt;
    jt["columns"] = table.columns;
    jt["rows"] = table.rows;
    manifest["tables"][name] = jt;
  }
  std::ofstream mf(out_dir + "/manifest.json");
  mf << manifest.dump(2) << "\n";
}

}  // namespace sbpdiss
