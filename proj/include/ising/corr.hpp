#pragma once

#include <cstdint>
#include <vector>

namespace ising {

/// Field strength and quadrature policy for the infinite-chain correlator
///
///   g_l = (1/2pi) Int_0^{2pi} dphi e^{i phi l} (cos phi - lambda + i sin phi)
///                                         / sqrt((cos phi - lambda)^2 + sin^2 phi).
///
/// The coupling J is fixed to 1. `quad_points` is the starting grid size for
/// the trapezoid rule; the grid is doubled until successive estimates agree.
struct CorrelationKernel {
  double lambda = 1.0;
  std::int64_t quad_points = 256;
  double rel_tol = 1e-13;

  static constexpr std::int64_t kMinPoints = 4;
  static constexpr std::int64_t kMaxPoints = std::int64_t{1} << 20;

  /// Throws ValidationError when an invariant is violated.
  void validate() const;
};

/// Diagnostics of the last quadrature run (for tests and logging).
struct QuadratureReport {
  std::int64_t points = 0;      ///< grid size of the accepted estimate
  double last_change = 0.0;     ///< scaled change on the final doubling
  double max_imag = 0.0;        ///< largest |Im| discarded
  bool closed_form = false;     ///< lambda in {0, 1}: no quadrature ran
};

/// Immutable table of g_l for l in [-l_max, l_max].
class GlTable {
 public:
  GlTable(double lambda, std::int64_t l_max, std::vector<double> values,
          QuadratureReport report = {});

  double lambda() const { return lambda_; }
  std::int64_t l_max() const { return l_max_; }

  /// g_l; throws IndexOutOfTable when |l| > l_max.
  double at(std::int64_t l) const;
  double operator[](std::int64_t l) const { return values_[static_cast<std::size_t>(l + l_max_)]; }

  bool covers(std::int64_t l) const { return l >= -l_max_ && l <= l_max_; }
  const QuadratureReport& report() const { return report_; }

 private:
  double lambda_;
  std::int64_t l_max_;
  std::vector<double> values_;
  QuadratureReport report_;
};

/// Single correlator. Routes lambda = 1 and lambda = 0 to the closed forms.
/// Throws NonConvergence when the point cap is reached.
double compute_gl(const CorrelationKernel& kernel, std::int64_t l);

/// Same as compute_gl but always runs the trapezoid rule, even at lambda in
/// {0, 1}. Used to check continuity across the critical point.
double compute_gl_quadrature(const CorrelationKernel& kernel, std::int64_t l,
                             QuadratureReport* report = nullptr);

/// Batch evaluation on one shared grid; convergence is required jointly.
GlTable build_gl_table(const CorrelationKernel& kernel, std::int64_t l_max);

}  // namespace ising
