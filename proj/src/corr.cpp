#include "ising/corr.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <span>
#include <sstream>

#include "ising/analytic.hpp"
#include "ising/errors.hpp"

namespace ising {

namespace {

// Changes are measured relative to max(|g|, floor); |g_l| decays to zero away
// from criticality and the integrand has unit modulus.
constexpr double kChangeFloor = 1e-2;

// Nodes at (k + 1/2) 2pi / n: phi = 0, where the integrand turns into a jump
// as lambda -> 1, is never sampled.
struct TrapezoidGrid {
  std::int64_t n;
  std::vector<double> cos_table;
  std::vector<double> sin_table;
  std::vector<double> re_weight;  // (cos phi - lambda) / r
  std::vector<double> im_weight;  // sin phi / r

  TrapezoidGrid(double lambda, std::int64_t points) : n(points) {
    const auto size = static_cast<std::size_t>(points);
    cos_table.resize(size);
    sin_table.resize(size);
    re_weight.resize(size);
    im_weight.resize(size);
    for (std::int64_t k = 0; k < points; ++k) {
      const double step = 2.0 * std::numbers::pi / static_cast<double>(points);
      const double phi = step * static_cast<double>(k);
      const double mid = step * (static_cast<double>(k) + 0.5);
      const auto i = static_cast<std::size_t>(k);
      cos_table[i] = std::cos(phi);
      sin_table[i] = std::sin(phi);
      const double c = std::cos(mid);
      const double s = std::sin(mid);
      const double re = c - lambda;
      const double r = std::hypot(re, s);
      re_weight[i] = re / r;
      im_weight[i] = s / r;
    }
  }

  // Returns (Re, Im) of the N-point trapezoid estimate of g_l.
  std::pair<double, double> estimate(std::int64_t l) const {
    const std::int64_t shift = ((l % n) + n) % n;
    double re = 0.0;
    double im = 0.0;
    std::int64_t phase = 0;
    for (std::int64_t k = 0; k < n; ++k) {
      const auto i = static_cast<std::size_t>(k);
      const auto p = static_cast<std::size_t>(phase);
      const double c = cos_table[p];
      const double s = sin_table[p];
      re += c * re_weight[i] - s * im_weight[i];
      im += s * re_weight[i] + c * im_weight[i];
      phase += shift;
      if (phase >= n) phase -= n;
    }
    // e^{i l (k + 1/2) step} = e^{i l k step} e^{i pi l / n}
    const double theta = std::numbers::pi * static_cast<double>(((l % (2 * n)) + 2 * n) % (2 * n)) /
                          static_cast<double>(n);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const double scale = 1.0 / static_cast<double>(n);
    return {(re * ct - im * st) * scale, (re * st + im * ct) * scale};
  }
};

std::int64_t starting_points(const CorrelationKernel& kernel, std::int64_t max_abs_l) {
  // Resolve e^{i phi l} with a few points per period before testing convergence.
  const auto wanted = std::bit_ceil(static_cast<std::uint64_t>(4 * (max_abs_l + 1)));
  return std::max<std::int64_t>(kernel.quad_points, static_cast<std::int64_t>(wanted));
}

// Joint trapezoid estimate of g_l for every l in `ls`, doubling until the
// largest scaled change drops below rel_tol.
std::vector<double> trapezoid(const CorrelationKernel& kernel, std::span<const std::int64_t> ls,
                              std::int64_t max_abs_l, QuadratureReport* report) {
  std::int64_t points = starting_points(kernel, max_abs_l);
  if (points > CorrelationKernel::kMaxPoints) {
    std::ostringstream msg;
    msg << "quadrature for |l| = " << max_abs_l << " needs more than "
        << CorrelationKernel::kMaxPoints << " points";
    throw NonConvergence(msg.str());
  }

  auto run = [&](std::int64_t n, double& max_imag) {
    const TrapezoidGrid grid(kernel.lambda, n);
    std::vector<double> out(ls.size());
    max_imag = 0.0;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const auto [re, im] = grid.estimate(ls[i]);
      out[i] = re;
      max_imag = std::max(max_imag, std::abs(im));
    }
    return out;
  };

  double max_imag = 0.0;
  std::vector<double> previous = run(points, max_imag);
  double change = 0.0;
  while (points * 2 <= CorrelationKernel::kMaxPoints) {
    points *= 2;
    std::vector<double> current = run(points, max_imag);
    change = 0.0;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const double denom = std::max(std::abs(current[i]), kChangeFloor);
      change = std::max(change, std::abs(current[i] - previous[i]) / denom);
    }
    if (change < kernel.rel_tol) {
      if (report != nullptr) {
        *report = QuadratureReport{points, change, max_imag, false};
      }
      return current;
    }
    previous = std::move(current);
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "trapezoid rule did not converge at lambda = " << kernel.lambda << " (change " << change
      << " after " << points << " points); use the critical closed form near lambda = 1";
  throw NonConvergence(msg.str());
}

}  // namespace

void CorrelationKernel::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("lambda must be finite and >= 0");
  }
  if (quad_points < kMinPoints || quad_points > kMaxPoints ||
      !std::has_single_bit(static_cast<std::uint64_t>(quad_points))) {
    throw ValidationError("quad_points must be a power of two in [4, 2^20]");
  }
  if (!(rel_tol > 0.0)) {
    throw ValidationError("rel_tol must be > 0");
  }
}

GlTable::GlTable(double lambda, std::int64_t l_max, std::vector<double> values,
                 QuadratureReport report)
    : lambda_(lambda), l_max_(l_max), values_(std::move(values)), report_(report) {
  if (l_max_ < 0 || values_.size() != static_cast<std::size_t>(2 * l_max_ + 1)) {
    throw ValidationError("GlTable: value count does not match l_max");
  }
}

double GlTable::at(std::int64_t l) const {
  if (!covers(l)) {
    std::ostringstream msg;
    msg << "g_" << l << " requested from a table with l_max = " << l_max_;
    throw IndexOutOfTable(msg.str());
  }
  return (*this)[l];
}

double compute_gl_quadrature(const CorrelationKernel& kernel, std::int64_t l,
                             QuadratureReport* report) {
  kernel.validate();
  const std::int64_t ls[] = {l};
  return trapezoid(kernel, ls, std::abs(l), report).front();
}

double compute_gl(const CorrelationKernel& kernel, std::int64_t l) {
  kernel.validate();
  if (std::abs(l) > 1'000'000) {
    throw ValidationError("|l| must be <= 10^6");
  }
  if (kernel.lambda == 1.0) return critical_gl(l);
  if (kernel.lambda == 0.0) return l == -1 ? 1.0 : 0.0;
  return compute_gl_quadrature(kernel, l);
}

GlTable build_gl_table(const CorrelationKernel& kernel, std::int64_t l_max) {
  kernel.validate();
  if (l_max < 1) {
    throw ValidationError("l_max must be >= 1");
  }
  const auto count = static_cast<std::size_t>(2 * l_max + 1);
  std::vector<double> values(count, 0.0);
  QuadratureReport report;
  if (kernel.lambda == 1.0 || kernel.lambda == 0.0) {
    report.closed_form = true;
    for (std::int64_t l = -l_max; l <= l_max; ++l) {
      values[static_cast<std::size_t>(l + l_max)] =
          kernel.lambda == 1.0 ? critical_gl(l) : (l == -1 ? 1.0 : 0.0);
    }
    return GlTable(kernel.lambda, l_max, std::move(values), report);
  }
  std::vector<std::int64_t> ls(count);
  for (std::int64_t l = -l_max; l <= l_max; ++l) ls[static_cast<std::size_t>(l + l_max)] = l;
  values = trapezoid(kernel, ls, l_max, &report);
  return GlTable(kernel.lambda, l_max, std::move(values), report);
}

}  // namespace ising
