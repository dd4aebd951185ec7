#include "sbpdiss/semidisc2d.hpp"

#include <cmath>

namespace sbpdiss {

SemiDisc2D::SemiDisc2D(const SbpOperator& op_xi, const SbpOperator& op_eta,
                       const Semi2DConfig& cfg)
    : cfg_(cfg), opx_(op_xi), opy_(op_eta) {
  if (cfg.scheme != Scheme::Central && cfg.scheme != Scheme::HadamardEntropyStable)
    throw UnsupportedConfig("2D schemes: central or hadamard");
  nx_ = opx_.size();
  ny_ = opy_.size();
  const double lx = (cfg.x1 - cfg.x0) / cfg.kx;
  const double ly = (cfg.y1 - cfg.y0) / cfg.ky;
  if (std::abs(opx_.dx - lx) > 1e-12 * lx || std::abs(opy_.dx - ly) > 1e-12 * ly)
    throw DimensionMismatch("2D block operators must match domain/blocks");
  s2x_ = opx_.q - opx_.q.transpose();
  s2y_ = opy_.q - opy_.q.transpose();
  if (cfg.diss.enabled()) {
    dissx_.emplace(opx_, cfg.diss);
    dissy_.emplace(opy_, cfg.diss);
  }
}

double SemiDisc2D::node_x(int bx, int i) const {
  return cfg_.x0 + bx * opx_.dx + opx_.dist.nodes(i) * opx_.node_spacing;
}

double SemiDisc2D::node_y(int by, int j) const {
  return cfg_.y0 + by * opy_.dx + opy_.dist.nodes(j) * opy_.node_spacing;
}

Vec SemiDisc2D::project(
    const std::function<Eigen::Vector4d(double, double)>& u0) const {
  Vec u(dofs());
  for (int bx = 0; bx < cfg_.kx; ++bx)
    for (int by = 0; by < cfg_.ky; ++by) {
      const int b = bx * cfg_.ky + by;
      for (int i = 0; i < nx_; ++i)
        for (int j = 0; j < ny_; ++j)
          u.segment<4>(((b * nx_ + i) * ny_ + j) * 4) =
              u0(node_x(bx, i), node_y(by, j));
    }
  return u;
}

template <class T>
void SemiDisc2D::rhs(double /*t*/, const VecT<T>& u, VecT<T>& out) const {
  if (u.size() != dofs()) throw DimensionMismatch("rhs2d: state size mismatch");
  out.resize(u.size());
  out.setZero();
  direction_terms<T>(u, out, 0);
  direction_terms<T>(u, out, 1);
}

namespace {

// line gather/scatter: dir 0 lines run over i at fixed j, dir 1 over j at fixed i
template <class T>
void gather_line(const VecT<T>& u, int block, int nx, int ny, int dir, int fixed,
                 VecT<T>& line) {
  const int len = dir == 0 ? nx : ny;
  line.resize(len * 4);
  for (int s = 0; s < len; ++s) {
    const int i = dir == 0 ? s : fixed;
    const int j = dir == 0 ? fixed : s;
    line.template segment<4>(s * 4) =
        u.template segment<4>(((block * nx + i) * ny + j) * 4);
  }
}

template <class T>
void scatter_add_line(VecT<T>& out, int block, int nx, int ny, int dir,
                      int fixed, const VecT<T>& line) {
  const int len = dir == 0 ? nx : ny;
  for (int s = 0; s < len; ++s) {
    const int i = dir == 0 ? s : fixed;
    const int j = dir == 0 ? fixed : s;
    out.template segment<4>(((block * nx + i) * ny + j) * 4) +=
        line.template segment<4>(s * 4);
  }
}

}  // namespace

template <class T>
void SemiDisc2D::direction_terms(const VecT<T>& u, VecT<T>& out, int dir) const {
  const EulerParams& gas = cfg_.gas;
  const SbpOperator& op = dir == 0 ? opx_ : opy_;
  const Mat& s2 = dir == 0 ? s2x_ : s2y_;
  const auto& diss = dir == 0 ? dissx_ : dissy_;
  const int len = op.size();
  const int n_lines = dir == 0 ? ny_ : nx_;
  const int kmain = dir == 0 ? cfg_.kx : cfg_.ky;
  const int kperp = dir == 0 ? cfg_.ky : cfg_.kx;

  auto block_id = [&](int bm, int bp) {
    // bm: block index along dir, bp: perpendicular
    return dir == 0 ? bm * cfg_.ky + bp : bp * cfg_.ky + bm;
  };

  VecT<T> line, nline, add;
  for (int bm = 0; bm < kmain; ++bm) {
    for (int bp = 0; bp < kperp; ++bp) {
      const int b = block_id(bm, bp);
      for (int q = 0; q < n_lines; ++q) {
        gather_line(u, b, nx_, ny_, dir, q, line);
        add = VecT<T>::Zero(len * 4);

        if (cfg_.scheme == Scheme::Central) {
          MatT<T> f(len, 4);
          for (int s = 0; s < len; ++s)
            f.row(s) =
                euler_flux<T, 2>(line.template segment<4>(s * 4), dir, gas)
                    .transpose();
          for (int c = 0; c < 4; ++c) {
            VecT<T> df = real_matvec(op.d, VecT<T>(f.col(c)));
            for (int s = 0; s < len; ++s) add(s * 4 + c) -= df(s);
          }
        } else {
          for (int s = 0; s < len; ++s) {
            SVec<T, 4> us = line.template segment<4>(s * 4);
            SVec<T, 4> acc = SVec<T, 4>::Zero();
            for (int r = 0; r < len; ++r) {
              const double srr = s2(s, r);
              if (srr == 0.0) continue;
              acc += srr * ranocha_flux_2d<T>(us, line.template segment<4>(r * 4),
                                              dir, gas);
            }
            for (int c = 0; c < 4; ++c) add(s * 4 + c) -= acc(c) / op.h(s);
          }
        }

        if (diss) {
          const DissipationSpec& spec = diss->spec();
          VecT<T> z = line;
          if (spec.vars == VarSet::Entropy)
            for (int s = 0; s < len; ++s)
              z.template segment<4>(s * 4) =
                  entropy_variables<T, 2>(line.template segment<4>(s * 4), gas);
          auto blocks = system_blocks_t<T, 4>(line, dir, spec.mode, gas,
                                              spec.s % 2 == 1);
          diss->template apply_system<T, 4>(blocks, z, add);
        }
        scatter_add_line(out, b, nx_, ny_, dir, q, add);
      }
    }
  }

  // interfaces along dir, shared flux per perpendicular node
  const bool hadamard = cfg_.scheme == Scheme::HadamardEntropyStable;
  for (int bm = 0; bm < kmain; ++bm) {
    const int bmr = (bm + 1) % kmain;
    for (int bp = 0; bp < kperp; ++bp) {
      const int bl = block_id(bm, bp);
      const int br = block_id(bmr, bp);
      for (int q = 0; q < n_lines; ++q) {
        gather_line(u, bl, nx_, ny_, dir, q, line);
        gather_line(u, br, nx_, ny_, dir, q, nline);
        SVec<T, 4> ul = SVec<T, 4>::Zero(), ur = SVec<T, 4>::Zero();
        SVec<T, 4> fl = SVec<T, 4>::Zero(), fr = SVec<T, 4>::Zero();
        for (int s = 0; s < len; ++s) {
          if (op.e_right(s) != 0.0) {
            SVec<T, 4> us = line.template segment<4>(s * 4);
            ul += op.e_right(s) * us;
            fl += op.e_right(s) * euler_flux<T, 2>(us, dir, gas);
          }
          if (op.e_left(s) != 0.0) {
            SVec<T, 4> us = nline.template segment<4>(s * 4);
            ur += op.e_left(s) * us;
            fr += op.e_left(s) * euler_flux<T, 2>(us, dir, gas);
          }
        }
        SVec<T, 4> fstar =
            hadamard ? ranocha_flux_2d<T>(ul, ur, dir, gas) : SVec<T, 4>(0.5 * (fl + fr));
        switch (cfg_.sat) {
          case SatKind::Symmetric:
            break;
          case SatKind::LaxFriedrichs:
          case SatKind::Rusanov: {
            T lam = max_real(max_wave_speed<T, 2>(ul, dir, gas),
                             max_wave_speed<T, 2>(ur, dir, gas));
            fstar -= 0.5 * lam * (ur - ul);
            break;
          }
          case SatKind::RoeMatrix: {
            SVec<T, 4> um = roe_average<T, 2>(ul, ur, gas);
            auto eig = euler_eig<T, 2>(um, dir, gas, /*barth=*/false);
            SVec<T, 4> alpha = solve_small<T, 4>(eig.x, SVec<T, 4>(ur - ul));
            for (int j = 0; j < 4; ++j) alpha(j) *= smooth_abs(eig.lam(j));
            fstar -= 0.5 * (eig.x * alpha);
            break;
          }
          case SatKind::EntropyDissipativeMatrix: {
            SVec<T, 4> um = roe_average<T, 2>(ul, ur, gas);
            auto eig = euler_eig<T, 2>(um, dir, gas, /*barth=*/true);
            SVec<T, 4> dw = entropy_variables<T, 2>(ur, gas) -
                            entropy_variables<T, 2>(ul, gas);
            SVec<T, 4> tmp = eig.x.transpose() * dw;
            for (int j = 0; j < 4; ++j) tmp(j) *= smooth_abs(eig.lam(j));
            fstar -= 0.5 * (eig.x * tmp);
            break;
          }
        }
        add = VecT<T>::Zero(len * 4);
        VecT<T> addn = VecT<T>::Zero(len * 4);
        for (int s = 0; s < len; ++s) {
          if (op.e_right(s) != 0.0) {
            SVec<T, 4> corr = hadamard ? SVec<T, 4>(op.e_right(s) * fstar)
                                       : SVec<T, 4>(op.e_right(s) * (fstar - fl));
            for (int c = 0; c < 4; ++c) add(s * 4 + c) -= corr(c) / op.h(s);
          }
          if (op.e_left(s) != 0.0) {
            SVec<T, 4> corr = hadamard ? SVec<T, 4>(op.e_left(s) * fstar)
                                       : SVec<T, 4>(op.e_left(s) * (fstar - fr));
            for (int c = 0; c < 4; ++c) addn(s * 4 + c) += corr(c) / op.h(s);
          }
        }
        scatter_add_line(out, bl, nx_, ny_, dir, q, add);
        scatter_add_line(out, br, nx_, ny_, dir, q, addn);
      }
    }
  }
}

Functionals SemiDisc2D::functionals(const Vec& u) const {
  Functionals f;
  f.conserved = Vec::Zero(4);
  const double jw = cfg_.metric_jacobian;
  for (int b = 0; b < n_blocks(); ++b)
    for (int i = 0; i < nx_; ++i)
      for (int j = 0; j < ny_; ++j) {
        const double w = node_weight(i, j) * jw;
        Eigen::Vector4d q = u.segment<4>(((b * nx_ + i) * ny_ + j) * 4);
        f.energy += w * q.squaredNorm();
        f.conserved += w * q;
        f.entropy += w * entropy_density<double, 2>(q, cfg_.gas);
      }
  return f;
}

bool SemiDisc2D::admissible_state(const Vec& u) const {
  if (!u.allFinite()) return false;
  const int n = dofs() / 4;
  for (int i = 0; i < n; ++i)
    if (!admissible<double, 2>(u.segment<4>(i * 4), cfg_.gas)) return false;
  return true;
}

Vec apply_dissipation_2d(int direction, const SbpOperator& op_xi,
                         const SbpOperator& op_eta, const DissipationSpec& spec,
                         double metric_jacobian, const EulerParams& gas,
                         const Vec& q) {
  const int nx = op_xi.size();
  const int ny = op_eta.size();
  if (q.size() != nx * ny * 4)
    throw DimensionMismatch("apply_dissipation_2d: bad state size");
  const SbpOperator& op = direction == 0 ? op_xi : op_eta;
  DissipationOperator diss(op, spec);
  const int len = op.size();
  const int n_lines = direction == 0 ? ny : nx;
  Vec out = Vec::Zero(q.size());
  Vec line, z, add;
  for (int l = 0; l < n_lines; ++l) {
    gather_line<double>(q, 0, nx, ny, direction, l, line);
    z = line;
    if (spec.vars == VarSet::Entropy)
      for (int s = 0; s < len; ++s)
        z.segment<4>(s * 4) =
            entropy_variables<double, 2>(line.segment<4>(s * 4), gas);
    auto blocks =
        system_blocks_t<double, 4>(line, direction, spec.mode, gas, spec.s % 2 == 1);
    add = Vec::Zero(len * 4);
    diss.apply_system<double, 4>(blocks, z, add);
    add /= metric_jacobian;
    scatter_add_line<double>(out, 0, nx, ny, direction, l, add);
  }
  return out;
}

template void SemiDisc2D::rhs<double>(double, const VecT<double>&,
                                      VecT<double>&) const;
template void SemiDisc2D::rhs<Cplx>(double, const VecT<Cplx>&, VecT<Cplx>&) const;

}  // namespace sbpdiss
