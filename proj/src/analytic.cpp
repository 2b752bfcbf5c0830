#include "ising/analytic.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "ising/errors.hpp"

namespace ising {

namespace {

using std::numbers::pi;

void require_distance(std::int64_t d) {
  if (d < 0) throw ValidationError("d must be >= 0");
}

double bit_term(double nu) { return shannon_bit(0.5 * (1.0 + nu)); }

double horner(std::initializer_list<double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = std::rbegin(coeffs); it != std::rend(coeffs); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

double critical_gl(std::int64_t l) { return -1.0 / (pi * (static_cast<double>(l) + 0.5)); }

std::pair<double, double> l1_eigenvalues(std::int64_t d) {
  require_distance(d);
  const double l = static_cast<double>(d) + 1.0;
  const double a = 4.0 * l * l - 1.0;
  const double root = std::sqrt(a * a + 4.0 * l * l);
  return {(2.0 / pi) * (root + 1.0) / a, (2.0 / pi) * (root - 1.0) / a};
}

EntropyValue l1_entropy(std::int64_t d) {
  const auto [nu1, nu2] = l1_eigenvalues(d);
  return {bit_term(nu1) + bit_term(nu2)};
}

double l1_entropy_d0_closed_form() {
  const double s13 = std::sqrt(13.0);
  const double pi2 = pi * pi;
  return -0.5 * std::log2(1.0 / 16.0 + (16.0 - 7.0 * pi2) / (9.0 * pi2 * pi2)) -
         s13 / (3.0 * pi) * std::log2(1.0 + 8.0 * s13 * pi / (16.0 - 4.0 * s13 * pi + 3.0 * pi2)) -
         1.0 / (3.0 * pi) * std::log2(1.0 + 8.0 * pi / (3.0 * pi2 - 4.0 * pi - 16.0));
}

double l1_entropy_limit_closed_form() {
  return (2.0 / pi) * std::log2((pi - 2.0) / (pi + 2.0)) +
         std::log2(4.0 * pi * pi / (pi * pi - 4.0));
}

QuarticCoefficients l2_quartic(std::int64_t d) {
  require_distance(d);
  const double x = static_cast<double>(d);
  const double b = x * (4.0 + x);
  const double a = std::pow(1 + 2 * x, 2) * std::pow(3 + 2 * x, 6) * std::pow(5 + 2 * x, 6) *
                   std::pow(7 + 2 * x, 2);
  const double pi2 = pi * pi;

  QuarticCoefficients c;
  c.d = d;
  c.a_norm = a;
  c.b_val = b;
  c.p = std::ldexp(1.0, 6) * std::pow(3 + 2 * x, 4) * std::pow(5 + 2 * x, 4) / (pi2 * a) *
        horner({5303.0, 24314.0 / 3, 41528.0 / 9, 10144.0 / 9, 896.0 / 9}, b);
  c.q = std::ldexp(1.0, 12) * std::pow(3 + 2 * x, 2) * std::pow(5 + 2 * x, 2) / (pi2 * pi2 * a) *
        horner({203297.0, 391466.0, 2841841.0 / 9, 3652160.0 / 27, 2617216.0 / 81,
                329984.0 / 81, 17152.0 / 81},
               b);
  c.r = std::ldexp(1.0, 22) * std::pow(2 + x, 4) / (pi2 * pi2 * pi2 * a) *
        horner({12271.0, 68116.0 / 3, 158795.0 / 9, 198074.0 / 27, 139000.0 / 81, 17312.0 / 81,
                896.0 / 81},
               b);
  c.s = std::ldexp(1.0, 32) / (81.0 * pi2 * pi2 * pi2 * pi2 * a) * std::pow(1 + x, 4) *
        std::pow(2 + x, 8) * std::pow(3 + x, 4);
  return c;
}

std::array<double, 4> l2_quartic_roots(const QuarticCoefficients& c) {
  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  companion(0, 0) = -c.p;
  companion(0, 1) = -c.q;
  companion(0, 2) = -c.r;
  companion(0, 3) = -c.s;
  companion(1, 0) = companion(2, 1) = companion(3, 2) = 1.0;
  const Eigen::EigenSolver<Eigen::Matrix4d> solver(companion, false);
  std::array<double, 4> roots{};
  for (int k = 0; k < 4; ++k) roots[static_cast<std::size_t>(k)] = solver.eigenvalues()(k).real();

  auto poly = [&c](double t) { return (((t + c.p) * t + c.q) * t + c.r) * t + c.s; };
  auto dpoly = [&c](double t) { return ((4.0 * t + 3.0 * c.p) * t + 2.0 * c.q) * t + c.r; };
  for (auto& t : roots) {
    // Newton only where it does not drift towards a neighbouring root.
    for (int it = 0; it < 3; ++it) {
      const double slope = dpoly(t);
      if (slope == 0.0) break;
      const double step = poly(t) / slope;
      if (!std::isfinite(step) || std::abs(step) > 1e-6 * std::max(1.0, std::abs(t))) break;
      t -= step;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::array<double, 4> l2_eigenvalues(std::int64_t d) {
  const auto roots = l2_quartic_roots(l2_quartic(d));
  std::array<double, 4> nus{};
  for (std::size_t k = 0; k < 4; ++k) nus[k] = std::sqrt(std::max(0.0, -roots[k]));
  std::sort(nus.begin(), nus.end(), std::greater<>());
  return nus;
}

std::pair<double, double> l2_asymptotic_eigenvalues() {
  const double s13 = std::sqrt(13.0);
  return {(2.0 / pi) * (s13 + 1.0) / 3.0, (2.0 / pi) * (s13 - 1.0) / 3.0};
}

EntropyValue lambda0_entropy(std::int64_t L, std::int64_t d) {
  if (L < 1) throw ValidationError("L must be >= 1");
  require_distance(d);
  return {d == 0 ? 1.0 : 2.0};
}

}  // namespace ising
