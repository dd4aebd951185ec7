#ifndef SBPDISS_DEFS_HPP
#define SBPDISS_DEFS_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sbpdiss {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Cplx = std::complex<double>;

template <class T>
using VecT = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T>
using MatT = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnsupportedFamily : Error { using Error::Error; };
struct InsufficientNodes : Error { using Error::Error; };
struct DegreeUnsupported : Error { using Error::Error; };
struct SingularStencil : Error { using Error::Error; };
struct OrderTooHigh : Error { using Error::Error; };
struct NegativeCoefficient : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NonAdmissibleState : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct UnsupportedConfig : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error {
  std::string field;
  ValidationError(std::string f, const std::string& msg)
      : Error(msg), field(std::move(f)) {}
};

/// Product of a real matrix with a possibly complex vector. Splitting complex
/// vectors into two real products keeps Eigen's scalar types homogeneous.
inline Vec real_matvec(const Mat& a, const Vec& x) { return a * x; }
inline VecT<Cplx> real_matvec(const Mat& a, const VecT<Cplx>& x) {
  Vec re = a * x.real().eval();
  Vec im = a * x.imag().eval();
  VecT<Cplx> out(re.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

/// abs() extended to the complex plane as sign(Re(x))*x so that |u|*u-type
/// terms stay analytic under complex-step differentiation.
inline double smooth_abs(double x) { return x < 0.0 ? -x : x; }
inline Cplx smooth_abs(const Cplx& x) { return x.real() < 0.0 ? -x : x; }

/// max by real part, used for local wave-speed selection under complex step.
template <class T>
T max_real(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, double>) {
    return a >= b ? a : b;
  } else {
    return a.real() >= b.real() ? a : b;
  }
}

template <class T>
double real_part(const T& x) {
  if constexpr (std::is_same_v<T, double>) return x;
  else return x.real();
}

}  // namespace sbpdiss

#endif  // SBPDISS_DEFS_HPP
