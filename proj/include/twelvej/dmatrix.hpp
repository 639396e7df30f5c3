#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "twelvej/errors.hpp"
#include "twelvej/spin.hpp"

namespace twelvej {

// Index pair of a small-d matrix element d^s_{nu mu}; nu and mu are stored as
// twice-values and must lie in {-s, -s+1, ..., s}.
struct DIndex {
  Spin s;
  int twice_nu = 0;
  int twice_mu = 0;

  DIndex(Spin s_, int tnu, int tmu) : s(s_), twice_nu(tnu), twice_mu(tmu) {
    if (std::abs(tnu) > s.twice || std::abs(tmu) > s.twice)
      throw ArgumentError("DIndex: |nu|, |mu| must not exceed s");
    if ((s.twice + tnu) % 2 != 0 || (s.twice + tmu) % 2 != 0)
      throw ArgumentError("DIndex: nu, mu must have the parity of s");
  }
};

// Wigner small-d rotation matrix element d^s_{nu mu}(theta) for the rotation
// convention d = <s nu| exp(-i theta Jy) |s mu>, evaluated by the explicit
// factorial sum with exact rational prefactors.
inline double little_d(const DIndex& idx, double theta) {
  const int ts = idx.s.twice, tnu = idx.twice_nu, tmu = idx.twice_mu;
  const long sp_nu = (ts + tnu) / 2, sm_nu = (ts - tnu) / 2;
  const long sp_mu = (ts + tmu) / 2, sm_mu = (ts - tmu) / 2;
  const long dnm = (tnu - tmu) / 2;  // nu - mu

  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  const double pref =
      std::sqrt(BigRat(factorial(sp_nu) * factorial(sm_nu) * factorial(sp_mu) * factorial(sm_mu))
                    .get_d());

  double sum = 0.0;
  const long kmin = std::max(0L, -dnm), kmax = std::min(sp_mu, sm_nu);
  for (long k = kmin; k <= kmax; ++k) {
    BigRat coef(1, factorial(sp_mu - k) * factorial(k) * factorial(sm_nu - k) *
                       factorial(dnm + k));
    coef.canonicalize();
    double term = coef.get_d() * std::pow(c, static_cast<double>(ts - 2 * k - dnm)) *
                  std::pow(s, static_cast<double>(dnm + 2 * k));
    sum += ((dnm + k) % 2 == 0) ? term : -term;
  }
  return pref * sum;
}

// Full (2s+1)x(2s+1) rotation matrix; rows indexed by nu and columns by mu,
// both ascending from -s to +s.
inline std::vector<std::vector<double>> d_matrix(Spin s, double theta) {
  const int dim = s.twice + 1;
  std::vector<std::vector<double>> m(dim, std::vector<double>(dim, 0.0));
  for (int r = 0; r < dim; ++r)
    for (int col = 0; col < dim; ++col)
      m[r][col] = little_d(DIndex(s, 2 * r - s.twice, 2 * col - s.twice), theta);
  return m;
}

}  // namespace twelvej
