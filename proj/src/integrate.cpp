#include "sbpdiss/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace sbpdiss {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// embedded 4th-order error weights (b - bhat)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

double error_norm(const Vec& err, const Vec& u0, const Vec& u1, double atol,
                  double rtol) {
  double acc = 0.0;
  const int n = static_cast<int>(err.size());
  for (int i = 0; i < n; ++i) {
    const double sc =
        atol + rtol * std::max(std::abs(u0(i)), std::abs(u1(i)));
    const double r = err(i) / sc;
    acc += r * r;
  }
  return std::sqrt(acc / n);
}

}  // namespace

Trajectory integrate(const RhsFn& rhs, const Vec& u0,
                     const IntegratorOptions& opt, const AdmissibleFn& admissible,
                     const std::vector<double>& output_times) {
  Trajectory traj;
  Vec u = u0;
  double t = 0.0;
  traj.times.push_back(t);
  traj.states.push_back(u);

  std::vector<double> marks = output_times;
  std::sort(marks.begin(), marks.end());
  size_t next_mark = 0;
  while (next_mark < marks.size() && marks[next_mark] <= 1e-14) ++next_mark;

  auto record_if_due = [&](double tnow, const Vec& unow) {
    while (next_mark < marks.size() && tnow >= marks[next_mark] - 1e-12) {
      traj.times.push_back(marks[next_mark]);
      traj.states.push_back(unow);
      ++next_mark;
    }
  };

  const int n = static_cast<int>(u.size());
  Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), utmp(n), unew(n), err(n);

  if (opt.method == TimeMethod::RK4) {
    double dt = opt.dt_init;
    if (dt <= 0.0) throw Error("RK4 requires dt_init > 0");
    while (t < opt.t_final - 1e-14) {
      double h = std::min(dt, opt.t_final - t);
      if (next_mark < marks.size()) h = std::min(h, marks[next_mark] - t);
      rhs(t, u, k1);
      utmp = u + 0.5 * h * k1;
      rhs(t + 0.5 * h, utmp, k2);
      utmp = u + 0.5 * h * k2;
      rhs(t + 0.5 * h, utmp, k3);
      utmp = u + h * k3;
      rhs(t + h, utmp, k4);
      u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += h;
      ++traj.steps_accepted;
      if (admissible && !admissible(u)) {
        traj.crash = {true, t, "non-admissible state"};
        break;
      }
      record_if_due(t, u);
    }
  } else {
    double h = opt.dt_init;
    if (h <= 0.0) {
      // starting-step estimate from the scaled norms of u0 and f(u0)
      rhs(0.0, u, k1);
      double d0 = 0.0, d1 = 0.0;
      for (int i = 0; i < n; ++i) {
        const double sc = opt.atol + opt.rtol * std::abs(u(i));
        d0 += (u(i) / sc) * (u(i) / sc);
        d1 += (k1(i) / sc) * (k1(i) / sc);
      }
      d0 = std::sqrt(d0 / n);
      d1 = std::sqrt(d1 / n);
      double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
      h0 = std::min(h0, opt.t_final);
      utmp = u + h0 * k1;
      rhs(h0, utmp, k2);
      double d2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const double sc = opt.atol + opt.rtol * std::abs(u(i));
        d2 += ((k2(i) - k1(i)) / sc) * ((k2(i) - k1(i)) / sc);
      }
      d2 = std::sqrt(d2 / n) / h0;
      const double dm = std::max(d1, d2);
      double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                              : std::pow(0.01 / dm, 1.0 / 5.0);
      h = std::min({100.0 * h0, h1, opt.t_final});
    }
    double err_prev = 1.0;
    bool have_k1 = false;
    while (t < opt.t_final - 1e-14) {
      double hcap = opt.t_final - t;
      if (next_mark < marks.size()) hcap = std::min(hcap, marks[next_mark] - t);
      bool capped = h >= hcap;
      double hs = std::min(h, hcap);
      if (!have_k1) {
        rhs(t, u, k1);
        have_k1 = true;
      }
      utmp = u + hs * a21 * k1;
      rhs(t + c2 * hs, utmp, k2);
      utmp = u + hs * (a31 * k1 + a32 * k2);
      rhs(t + c3 * hs, utmp, k3);
      utmp = u + hs * (a41 * k1 + a42 * k2 + a43 * k3);
      rhs(t + c4 * hs, utmp, k4);
      utmp = u + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      rhs(t + c5 * hs, utmp, k5);
      utmp = u + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      rhs(t + hs, utmp, k6);
      unew = u + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      rhs(t + hs, unew, k7);  // FSAL
      err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      double enorm = error_norm(err, u, unew, opt.atol, opt.rtol);
      if (!std::isfinite(enorm)) enorm = 1e10;

      if (enorm <= 1.0) {
        t += hs;
        u = unew;
        k1 = k7;
        ++traj.steps_accepted;
        if (admissible && !admissible(u)) {
          traj.crash = {true, t, "non-admissible state"};
          break;
        }
        record_if_due(t, u);
        // PI controller (safety 0.9, growth clamp [0.2, 5])
        double fac = 0.9 * std::pow(std::max(enorm, 1e-16), -0.7 / 5.0) *
                     std::pow(std::max(err_prev, 1e-16), 0.4 / 5.0);
        fac = std::clamp(fac, 0.2, 5.0);
        err_prev = std::max(enorm, 1e-16);
        if (!capped) h = hs * fac;
        else h = std::max(h, hs * fac);
      } else {
        ++traj.steps_rejected;
        have_k1 = true;  // k1 still valid at (t, u)
        double fac = std::clamp(0.9 * std::pow(enorm, -0.2), 0.2, 1.0);
        h = hs * fac;
        if (h < opt.dt_min) {
          traj.crash = {true, t, "time step below dt_min"};
          break;
        }
      }
    }
  }

  if (traj.times.back() != t) {
    traj.times.push_back(t);
    traj.states.push_back(u);
  }
  if (traj.crash.crashed) traj.crash.time = t;
  return traj;
}

}  // namespace sbpdiss
