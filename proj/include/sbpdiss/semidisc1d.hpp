#ifndef SBPDISS_SEMIDISC1D_HPP
#define SBPDISS_SEMIDISC1D_HPP

#include <optional>

#include "sbpdiss/dissipation.hpp"

namespace sbpdiss {

enum class PdeId { LinearConvection, Burgers, Euler1D, Euler2D };
enum class Scheme { Central, SplitFormBurgers, HadamardEntropyStable, UpwindFVS };
enum class SatKind { Symmetric, LaxFriedrichs, Rusanov, RoeMatrix, EntropyDissipativeMatrix };

PdeId pde_from_string(const std::string& s);
Scheme scheme_from_string(const std::string& s);
SatKind sat_from_string(const std::string& s);
std::string to_string(PdeId p);
std::string to_string(Scheme s);
std::string to_string(SatKind s);

struct Semi1DConfig {
  PdeId pde = PdeId::LinearConvection;
  Scheme scheme = Scheme::Central;
  SatKind sat = SatKind::Symmetric;
  DissipationSpec diss;
  double wave_speed = 1.0;
  EulerParams gas;
  int n_blocks = 1;
  double x0 = 0.0;
  double x1 = 1.0;
};

struct Functionals {
  double energy = 0.0;
  double entropy = 0.0;
  Vec conserved;
};

/// Periodic chain of identical 1D blocks: du/dt = R(u).
/// State layout: block-major, node-major, component-fastest.
class SemiDisc1D {
 public:
  SemiDisc1D(const SbpOperator& block_op, const Semi1DConfig& cfg);
  /// UpwindFVS variant built on a replicated upwind operator pair.
  SemiDisc1D(const UpwindOperator& upwind_op, const Semi1DConfig& cfg);

  int ncomp() const { return ncomp_; }
  int nodes() const { return n_blocks_ * n_; }
  int dofs() const { return nodes() * ncomp_; }
  const Vec& x() const { return x_; }
  const Vec& h_global() const { return hg_; }  // quadrature weight per node
  const Semi1DConfig& config() const { return cfg_; }
  const SbpOperator& block_op() const { return op_; }

  template <class T>
  void rhs(double t, const VecT<T>& u, VecT<T>& out) const;

  void rhs_double(double t, const Vec& u, Vec& out) const { rhs<double>(t, u, out); }

  Functionals functionals(const Vec& u) const;
  bool admissible_state(const Vec& u) const;

  /// Dense linear operator assembled column-by-column from R (R(0) must be 0).
  Mat assemble_linear_operator() const;

 private:
  template <class T, int NC>
  void rhs_impl(double t, const VecT<T>& u, VecT<T>& out) const;

  Semi1DConfig cfg_;
  SbpOperator op_;
  std::optional<UpwindOperator> upwind_;
  Mat d_plus_, d_minus_;    // scaled upwind pair (when present)
  Mat s2_;                  // Q - Q^T, Hadamard volume kernel
  std::optional<DissipationOperator> diss_;
  int n_ = 0;
  int n_blocks_ = 1;
  int ncomp_ = 1;
  Vec x_;
  Vec hg_;
};

}  // namespace sbpdiss

#endif  // SBPDISS_SEMIDISC1D_HPP
