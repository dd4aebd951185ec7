#include "sbpdiss/semidisc1d.hpp"

#include <cmath>

namespace sbpdiss {

PdeId pde_from_string(const std::string& s) {
  if (s == "linear-convection") return PdeId::LinearConvection;
  if (s == "burgers") return PdeId::Burgers;
  if (s == "euler1d") return PdeId::Euler1D;
  if (s == "euler2d") return PdeId::Euler2D;
  throw ValidationError("pde", "unknown pde: " + s);
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "central") return Scheme::Central;
  if (s == "split-form-burgers") return Scheme::SplitFormBurgers;
  if (s == "hadamard") return Scheme::HadamardEntropyStable;
  if (s == "upwind-fvs") return Scheme::UpwindFVS;
  throw ValidationError("scheme", "unknown scheme: " + s);
}

SatKind sat_from_string(const std::string& s) {
  if (s == "symmetric") return SatKind::Symmetric;
  if (s == "lax-friedrichs") return SatKind::LaxFriedrichs;
  if (s == "rusanov") return SatKind::Rusanov;
  if (s == "roe-matrix") return SatKind::RoeMatrix;
  if (s == "entropy-matrix") return SatKind::EntropyDissipativeMatrix;
  throw ValidationError("sat", "unknown sat kind: " + s);
}

std::string to_string(PdeId p) {
  switch (p) {
    case PdeId::LinearConvection: return "linear-convection";
    case PdeId::Burgers: return "burgers";
    case PdeId::Euler1D: return "euler1d";
    case PdeId::Euler2D: return "euler2d";
  }
  return "?";
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::Central: return "central";
    case Scheme::SplitFormBurgers: return "split-form-burgers";
    case Scheme::HadamardEntropyStable: return "hadamard";
    case Scheme::UpwindFVS: return "upwind-fvs";
  }
  return "?";
}

std::string to_string(SatKind s) {
  switch (s) {
    case SatKind::Symmetric: return "symmetric";
    case SatKind::LaxFriedrichs: return "lax-friedrichs";
    case SatKind::Rusanov: return "rusanov";
    case SatKind::RoeMatrix: return "roe-matrix";
    case SatKind::EntropyDissipativeMatrix: return "entropy-matrix";
  }
  return "?";
}

namespace {

int ncomp_of(PdeId pde) {
  switch (pde) {
    case PdeId::LinearConvection:
    case PdeId::Burgers: return 1;
    case PdeId::Euler1D: return 3;
    case PdeId::Euler2D: return 4;
  }
  return 1;
}

void check_scheme(PdeId pde, Scheme scheme) {
  bool ok = false;
  switch (pde) {
    case PdeId::LinearConvection:
      ok = scheme == Scheme::Central || scheme == Scheme::UpwindFVS;
      break;
    case PdeId::Burgers:
      ok = scheme == Scheme::SplitFormBurgers || scheme == Scheme::UpwindFVS;
      break;
    case PdeId::Euler1D:
      ok = scheme == Scheme::Central || scheme == Scheme::HadamardEntropyStable ||
           scheme == Scheme::UpwindFVS;
      break;
    case PdeId::Euler2D:
      ok = false;  // handled by SemiDisc2D
      break;
  }
  if (!ok)
    throw UnsupportedConfig("scheme " + to_string(scheme) +
                            " not available for pde " + to_string(pde));
}

}  // namespace

SemiDisc1D::SemiDisc1D(const SbpOperator& block_op, const Semi1DConfig& cfg)
    : cfg_(cfg), op_(block_op) {
  check_scheme(cfg.pde, cfg.scheme);
  if (cfg.scheme == Scheme::UpwindFVS)
    throw UnsupportedConfig("UpwindFVS requires the upwind-operator constructor");
  n_ = op_.size();
  n_blocks_ = cfg.n_blocks;
  ncomp_ = ncomp_of(cfg.pde);
  const double block_len = (cfg.x1 - cfg.x0) / n_blocks_;
  if (std::abs(op_.dx - block_len) > 1e-12 * std::abs(block_len))
    throw DimensionMismatch("block operator element_size must match domain/blocks");
  s2_ = op_.q - op_.q.transpose();
  x_.resize(n_blocks_ * n_);
  hg_.resize(n_blocks_ * n_);
  for (int k = 0; k < n_blocks_; ++k) {
    const double left = cfg.x0 + k * block_len;
    for (int i = 0; i < n_; ++i) {
      x_(k * n_ + i) = left + op_.dist.nodes(i) * op_.node_spacing;
      hg_(k * n_ + i) = op_.h(i);
    }
  }
  if (cfg.diss.enabled()) {
    DissipationSpec spec = cfg.diss;
    if (cfg.pde == PdeId::Burgers && spec.s % 2 == 1 &&
        spec.mode == CoeffMode::NodalScalar)
      spec.mode = CoeffMode::HalfNodeScalar;  // variable coefficient, odd s
    diss_.emplace(op_, spec);
    cfg_.diss = spec;
  }
}

SemiDisc1D::SemiDisc1D(const UpwindOperator& upwind_op, const Semi1DConfig& cfg)
    : cfg_(cfg), upwind_(upwind_op) {
  check_scheme(cfg.pde, cfg.scheme);
  if (cfg.scheme != Scheme::UpwindFVS)
    throw UnsupportedConfig("upwind-operator constructor requires UpwindFVS");
  n_ = 5;
  n_blocks_ = cfg.n_blocks;
  ncomp_ = ncomp_of(cfg.pde);
  const double block_len = (cfg.x1 - cfg.x0) / n_blocks_;
  // printed operators live on [0, 1]; rescale to the block length
  d_plus_ = upwind_->d_plus / block_len;
  d_minus_ = upwind_->d_minus / block_len;
  op_.dist = build_nodal_distribution(Family::CSBP, 1, 5);
  op_.dx = block_len;
  op_.node_spacing = block_len / 4.0;
  op_.h = upwind_->h * block_len;
  op_.d = upwind_->d_central / block_len;
  op_.e_left = Vec::Zero(5);
  op_.e_left(0) = 1.0;
  op_.e_right = Vec::Zero(5);
  op_.e_right(4) = 1.0;
  op_.e = op_.e_right * op_.e_right.transpose() -
          op_.e_left * op_.e_left.transpose();
  op_.q = op_.h.asDiagonal() * op_.d;
  s2_ = op_.q - op_.q.transpose();
  x_.resize(n_blocks_ * n_);
  hg_.resize(n_blocks_ * n_);
  for (int k = 0; k < n_blocks_; ++k) {
    const double left = cfg.x0 + k * block_len;
    for (int i = 0; i < n_; ++i) {
      x_(k * n_ + i) = left + i * op_.node_spacing;
      hg_(k * n_ + i) = op_.h(i);
    }
  }
  if (cfg.diss.enabled()) diss_.emplace(op_, cfg.diss);
}

template <class T>
void SemiDisc1D::rhs(double t, const VecT<T>& u, VecT<T>& out) const {
  if (u.size() != dofs()) throw DimensionMismatch("rhs: state size mismatch");
  out.resize(u.size());
  out.setZero();
  switch (cfg_.pde) {
    case PdeId::LinearConvection:
    case PdeId::Burgers:
      rhs_impl<T, 1>(t, u, out);
      break;
    case PdeId::Euler1D:
      rhs_impl<T, 3>(t, u, out);
      break;
    default:
      throw UnsupportedConfig("SemiDisc1D supports 1D PDEs only");
  }
}

template <class T, int NC>
void SemiDisc1D::rhs_impl(double /*t*/, const VecT<T>& u, VecT<T>& out) const {
  const int n = n_;
  const int stride = n * NC;
  const EulerParams& gas = cfg_.gas;
  const double a = cfg_.wave_speed;

  auto node_state = [&](int k, int i) -> SVec<T, NC> {
    return u.template segment<NC>(k * stride + i * NC);
  };
  auto flux_of = [&](const SVec<T, NC>& q) -> SVec<T, NC> {
    if constexpr (NC == 1) {
      if (cfg_.pde == PdeId::LinearConvection) return SVec<T, 1>(a * q(0));
      return SVec<T, 1>(q(0) * q(0) * 0.5);
    } else {
      return euler_flux<T, NC - 2>(q, 0, gas);
    }
  };
  auto two_point = [&](const SVec<T, NC>& ql, const SVec<T, NC>& qr) -> SVec<T, NC> {
    if constexpr (NC == 1) {
      return SVec<T, 1>(burgers_ec_flux(ql(0), qr(0)));
    } else {
      return chandrashekar_flux<T>(ql, qr, gas);
    }
  };
  auto wave_speed = [&](const SVec<T, NC>& q) -> T {
    if constexpr (NC == 1) {
      if (cfg_.pde == PdeId::LinearConvection) return T(std::abs(a));
      return smooth_abs(q(0));
    } else {
      return max_wave_speed<T, NC - 2>(q, 0, gas);
    }
  };

  // ---- volume terms ----
  for (int k = 0; k < n_blocks_; ++k) {
    switch (cfg_.scheme) {
      case Scheme::Central: {
        MatT<T> f(n, NC);
        for (int i = 0; i < n; ++i)
          f.row(i) = flux_of(node_state(k, i)).transpose();
        for (int c = 0; c < NC; ++c) {
          VecT<T> df = real_matvec(op_.d, VecT<T>(f.col(c)));
          for (int i = 0; i < n; ++i) out(k * stride + i * NC + c) -= df(i);
        }
        break;
      }
      case Scheme::SplitFormBurgers:
      case Scheme::HadamardEntropyStable: {
        for (int i = 0; i < n; ++i) {
          SVec<T, NC> acc = SVec<T, NC>::Zero();
          SVec<T, NC> ui = node_state(k, i);
          for (int j = 0; j < n; ++j) {
            const double sij = s2_(i, j);
            if (sij == 0.0) continue;
            acc += sij * two_point(ui, node_state(k, j));
          }
          for (int c = 0; c < NC; ++c)
            out(k * stride + i * NC + c) -= acc(c) / op_.h(i);
        }
        break;
      }
      case Scheme::UpwindFVS: {
        MatT<T> fp(n, NC), fm(n, NC);
        for (int i = 0; i < n; ++i) {
          SVec<T, NC> q = node_state(k, i);
          if constexpr (NC == 1) {
            T plus, minus;
            if (cfg_.pde == PdeId::LinearConvection) {
              T f = a * q(0);
              T fd = std::abs(a) * q(0);
              plus = 0.5 * (f + fd);
              minus = 0.5 * (f - fd);
            } else {
              burgers_flux_split(q(0), plus, minus);
            }
            fp(i, 0) = plus;
            fm(i, 0) = minus;
          } else {
            SVec<T, 3> plus, minus;
            steger_warming_split<T>(q, gas, plus, minus);
            fp.row(i) = plus.transpose();
            fm.row(i) = minus.transpose();
          }
        }
        for (int c = 0; c < NC; ++c) {
          VecT<T> t1 = real_matvec(d_plus_, VecT<T>(fm.col(c)));
          VecT<T> t2 = real_matvec(d_minus_, VecT<T>(fp.col(c)));
          for (int i = 0; i < n; ++i)
            out(k * stride + i * NC + c) -= t1(i) + t2(i);
        }
        break;
      }
    }
  }

  // ---- interface SATs (periodic chain) ----
  const bool hadamard = cfg_.scheme == Scheme::SplitFormBurgers ||
                        cfg_.scheme == Scheme::HadamardEntropyStable;
  for (int k = 0; k < n_blocks_; ++k) {
    const int kr = (k + 1) % n_blocks_;
    // traces
    SVec<T, NC> ul = SVec<T, NC>::Zero(), ur = SVec<T, NC>::Zero();
    SVec<T, NC> fl = SVec<T, NC>::Zero(), fr = SVec<T, NC>::Zero();
    for (int i = 0; i < n; ++i) {
      if (op_.e_right(i) != 0.0) {
        ul += op_.e_right(i) * node_state(k, i);
        fl += op_.e_right(i) * flux_of(node_state(k, i));
      }
      if (op_.e_left(i) != 0.0) {
        ur += op_.e_left(i) * node_state(kr, i);
        fr += op_.e_left(i) * flux_of(node_state(kr, i));
      }
    }
    SVec<T, NC> fstar;
    if (hadamard)
      fstar = two_point(ul, ur);
    else
      fstar = 0.5 * (fl + fr);
    switch (cfg_.sat) {
      case SatKind::Symmetric:
        break;
      case SatKind::LaxFriedrichs:
      case SatKind::Rusanov: {
        T lam = max_real(wave_speed(ul), wave_speed(ur));
        fstar -= 0.5 * lam * (ur - ul);
        break;
      }
      case SatKind::RoeMatrix: {
        if constexpr (NC == 1) {
          T lam = max_real(wave_speed(ul), wave_speed(ur));
          fstar -= 0.5 * lam * (ur - ul);
        } else {
          SVec<T, NC> um = roe_average<T, NC - 2>(ul, ur, gas);
          auto eig = euler_eig<T, NC - 2>(um, 0, gas, /*barth=*/false);
          SVec<T, NC> alpha = solve_small<T, NC>(eig.x, SVec<T, NC>(ur - ul));
          for (int j = 0; j < NC; ++j) alpha(j) *= smooth_abs(eig.lam(j));
          fstar -= 0.5 * (eig.x * alpha);
        }
        break;
      }
      case SatKind::EntropyDissipativeMatrix: {
        if constexpr (NC == 1) {
          T lam = max_real(wave_speed(ul), wave_speed(ur));
          fstar -= 0.5 * lam * (ur - ul);
        } else {
          SVec<T, NC> um = roe_average<T, NC - 2>(ul, ur, gas);
          auto eig = euler_eig<T, NC - 2>(um, 0, gas, /*barth=*/true);
          SVec<T, NC> dw = entropy_variables<T, NC - 2>(ur, gas) -
                           entropy_variables<T, NC - 2>(ul, gas);
          SVec<T, NC> tmp = eig.x.transpose() * dw;
          for (int j = 0; j < NC; ++j) tmp(j) *= smooth_abs(eig.lam(j));
          fstar -= 0.5 * (eig.x * tmp);
        }
        break;
      }
    }
    for (int i = 0; i < n; ++i) {
      if (op_.e_right(i) != 0.0) {
        SVec<T, NC> corr = hadamard ? SVec<T, NC>(op_.e_right(i) * fstar)
                                    : SVec<T, NC>(op_.e_right(i) * (fstar - fl));
        for (int c = 0; c < NC; ++c)
          out(k * stride + i * NC + c) -= corr(c) / op_.h(i);
      }
      if (op_.e_left(i) != 0.0) {
        SVec<T, NC> corr = hadamard ? SVec<T, NC>(op_.e_left(i) * fstar)
                                    : SVec<T, NC>(op_.e_left(i) * (fstar - fr));
        for (int c = 0; c < NC; ++c)
          out(kr * stride + i * NC + c) += corr(c) / op_.h(i);
      }
    }
  }

  // ---- volume dissipation ----
  if (diss_) {
    const DissipationSpec& spec = diss_->spec();
    const bool halfnode = spec.s % 2 == 1;
    for (int k = 0; k < n_blocks_; ++k) {
      VecT<T> z(stride);
      if (spec.vars == VarSet::Entropy) {
        if constexpr (NC == 1) {
          z = u.segment(k * stride, stride);  // scalar entropy vars coincide
        } else {
          for (int i = 0; i < n; ++i)
            z.template segment<NC>(i * NC) =
                entropy_variables<T, NC - 2>(node_state(k, i), gas);
        }
      } else {
        z = u.segment(k * stride, stride);
      }
      VecT<T> add = VecT<T>::Zero(stride);
      if constexpr (NC == 1) {
        VecT<T> coeff(n);
        if (cfg_.pde == PdeId::LinearConvection) {
          coeff.setConstant(T(std::abs(a)));
        } else {
          for (int i = 0; i < n; ++i) coeff(i) = smooth_abs(u(k * stride + i));
          if (spec.mode == CoeffMode::HalfNodeScalar) {
            VecT<T> avg = VecT<T>::Zero(n);
            for (int i = 1; i < n; ++i) avg(i) = 0.5 * (coeff(i - 1) + coeff(i));
            coeff = avg;
          }
        }
        diss_->apply_scalar(coeff, VecT<T>(z), add);
      } else {
        auto blocks = system_blocks_t<T, NC>(VecT<T>(u.segment(k * stride, stride)),
                                             0, spec.mode, gas, halfnode);
        diss_->template apply_system<T, NC>(blocks, z, add);
      }
      out.segment(k * stride, stride) += add;
    }
  }
}

Functionals SemiDisc1D::functionals(const Vec& u) const {
  Functionals f;
  f.conserved = Vec::Zero(ncomp_);
  for (int i = 0; i < nodes(); ++i) {
    const double w = hg_(i);
    for (int c = 0; c < ncomp_; ++c) {
      const double v = u(i * ncomp_ + c);
      f.energy += w * v * v;
      f.conserved(c) += w * v;
    }
    if (cfg_.pde == PdeId::Euler1D) {
      Eigen::Vector3d q = u.segment<3>(i * 3);
      f.entropy += w * entropy_density<double, 1>(q, cfg_.gas);
    }
  }
  if (cfg_.pde != PdeId::Euler1D) f.entropy = 0.5 * f.energy;
  return f;
}

bool SemiDisc1D::admissible_state(const Vec& u) const {
  if (!u.allFinite()) return false;
  if (cfg_.pde != PdeId::Euler1D) return true;
  for (int i = 0; i < nodes(); ++i)
    if (!admissible<double, 1>(u.segment<3>(i * 3), cfg_.gas)) return false;
  return true;
}

Mat SemiDisc1D::assemble_linear_operator() const {
  const int m = dofs();
  Mat mat(m, m);
  Vec e = Vec::Zero(m), r(m);
  for (int j = 0; j < m; ++j) {
    e(j) = 1.0;
    rhs<double>(0.0, e, r);
    mat.col(j) = r;
    e(j) = 0.0;
  }
  return mat;
}

template void SemiDisc1D::rhs<double>(double, const VecT<double>&,
                                      VecT<double>&) const;
template void SemiDisc1D::rhs<Cplx>(double, const VecT<Cplx>&, VecT<Cplx>&) const;

}  // namespace sbpdiss
