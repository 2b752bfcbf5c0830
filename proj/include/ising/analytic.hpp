#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "ising/spectral.hpp"

namespace ising {

/// -1 / (pi (l + 1/2)): the correlator at the critical field lambda = 1.
double critical_gl(std::int64_t l);

/// Critical two-site spectrum (L = 1) at distance d, with l = d + 1:
/// nu_{1,2} = (2/pi) (sqrt((4l^2-1)^2 + 4l^2) +- 1) / (4l^2 - 1).
std::pair<double, double> l1_eigenvalues(std::int64_t d);

/// S(1, d) from the closed-form spectrum.
EntropyValue l1_entropy(std::int64_t d);

/// S(1, 0) written as the explicit sum of logarithms (independent of the
/// spectrum formula).
double l1_entropy_d0_closed_form();

/// 2 H((pi + 2) / (2 pi)), the d -> infinity limit of S(1, d), as logarithms.
double l1_entropy_limit_closed_form();

/// t^4 + p t^3 + q t^2 + r t + s = 0 with t = mu^2 = -nu^2 for the critical
/// L = 2 two-block matrix at distance d.
struct QuarticCoefficients {
  std::int64_t d = 0;
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
  double s = 0.0;
  double a_norm = 0.0;  ///< (1+2d)^2 (3+2d)^6 (5+2d)^6 (7+2d)^2
  double b_val = 0.0;   ///< d (4 + d)
};

QuarticCoefficients l2_quartic(std::int64_t d);

/// Roots t_k of the quartic (companion matrix, Newton-polished), ascending.
std::array<double, 4> l2_quartic_roots(const QuarticCoefficients& c);

/// nu_k = sqrt(-t_k), descending.
std::array<double, 4> l2_eigenvalues(std::int64_t d);

/// d -> infinity: (2/pi)(sqrt 13 + 1)/3 and (2/pi)(sqrt 13 - 1)/3, each twice.
std::pair<double, double> l2_asymptotic_eigenvalues();

/// Zero-field entropy: 1 bit for d = 0, 2 bits for d >= 1.
EntropyValue lambda0_entropy(std::int64_t L, std::int64_t d);

}  // namespace ising
