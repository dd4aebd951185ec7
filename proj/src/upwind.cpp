#include "sbpdiss/sbp_operator.hpp"

namespace sbpdiss {

UpwindOperator build_upwind_pu2_block() {
  const int n = 5;
  UpwindOperator u;
  u.d_plus.resize(n, n);
  u.d_plus << -12.0, 20.0, -8.0, 0.0, 0.0,
              -0.8, -4.0, 6.4, -1.6, 0.0,
               0.0, 0.0, -6.0, 8.0, -2.0,
               0.0, 0.0, 0.0, -4.0, 4.0,
               0.0, 0.0, 0.0, -4.0, 4.0;
  u.h.resize(n);
  u.h << 1.0 / 16, 5.0 / 16, 4.0 / 16, 5.0 / 16, 1.0 / 16;
  u.d_minus.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      u.d_minus(i, j) = -u.d_plus(n - 1 - i, n - 1 - j);
  u.d_central = 0.5 * (u.d_plus + u.d_minus);
  u.s = -0.5 * u.h.asDiagonal() * (u.d_plus - u.d_minus);
  return u;
}

}  // namespace sbpdiss
