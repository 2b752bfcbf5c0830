#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ising/analytic.hpp"
#include "ising/corr.hpp"
#include "ising/errors.hpp"

using namespace ising;

namespace {

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n.
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) {
    for (int i = 1; i <= n; ++i) {
      double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x.push_back(z);
      w.push_back(2.0 / ((1.0 - z * z) * dp * dp));
    }
  }
};

// Real part of the correlator integrand, integrated panel by panel.
double gl_oracle(double lambda, int l) {
  static const GaussLegendre rule(24);
  const int panels = 256;
  const double h = 2.0 * std::numbers::pi / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (std::size_t k = 0; k < rule.x.size(); ++k) {
      const double phi = mid + 0.5 * h * rule.x[k];
      const double re = std::cos(phi) - lambda;
      const double r = std::hypot(re, std::sin(phi));
      const double f = (std::cos(phi * (l + 1)) - lambda * std::cos(phi * l)) / r;
      sum += 0.5 * h * rule.w[k] * f;
    }
  }
  return sum / (2.0 * std::numbers::pi);
}

CorrelationKernel kernel_at(double lambda) {
  CorrelationKernel k;
  k.lambda = lambda;
  return k;
}

}  // namespace

TEST_CASE("frozen values at lambda = 0.5") {
  const auto k = kernel_at(0.5);
  CHECK(compute_gl(k, 3) == doctest::Approx(-0.002691065263288612655722).epsilon(1e-11));
  CHECK(std::abs(compute_gl(k, 0) - -0.25865790461134166970) < 1e-13);
  CHECK(std::abs(compute_gl(k, -1) - 0.93421545766769411614) < 1e-13);
  CHECK(std::abs(compute_gl(k, 1) - -0.03347205359255752089) < 1e-13);
  CHECK(std::abs(compute_gl(k, -2) - 0.22518585101878414881) < 1e-13);
}

TEST_CASE("trapezoid agrees with panel Gauss-Legendre") {
  for (double lambda : {0.3, 0.7, 1.3, 2.0, 5.0}) {
    const auto table = build_gl_table(kernel_at(lambda), 8);
    for (int l = -8; l <= 8; ++l) {
      CAPTURE(lambda);
      CAPTURE(l);
      CHECK(std::abs(table[l] - gl_oracle(lambda, l)) < 1e-12);
    }
  }
}

TEST_CASE("closed forms") {
  const auto crit = build_gl_table(kernel_at(1.0), 50);
  CHECK(crit.report().closed_form);
  for (int l = -50; l <= 50; ++l) {
    CHECK(crit[l] == -1.0 / (std::numbers::pi * (l + 0.5)));
  }
  CHECK(compute_gl(kernel_at(1.0), 0) == doctest::Approx(-2.0 / std::numbers::pi).epsilon(1e-15));
  CHECK(critical_gl(-1) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-15));

  const auto zero = build_gl_table(kernel_at(0.0), 10);
  for (int l = -10; l <= 10; ++l) CHECK(zero[l] == (l == -1 ? 1.0 : 0.0));
  CHECK(compute_gl(kernel_at(0.0), -1) == 1.0);
  CHECK(compute_gl(kernel_at(0.0), 4) == 0.0);
}

TEST_CASE("quadrature reproduces lambda = 0 away from the closed-form route") {
  CorrelationKernel k = kernel_at(0.0);
  for (int l = -4; l <= 4; ++l) {
    CHECK(std::abs(compute_gl_quadrature(k, l) - (l == -1 ? 1.0 : 0.0)) < 1e-14);
  }
}

TEST_CASE("continuity across the critical point") {
  CorrelationKernel k;
  k.rel_tol = 1e-5;
  for (double lambda : {1.0 - 1e-8, 1.0 + 1e-8}) {
    k.lambda = lambda;
    for (int l = -10; l <= 10; ++l) {
      CAPTURE(lambda);
      CAPTURE(l);
      CHECK(std::abs(compute_gl_quadrature(k, l) - critical_gl(l)) < 1e-4);
    }
  }
}

TEST_CASE("imaginary part vanishes") {
  QuadratureReport report;
  compute_gl_quadrature(kernel_at(0.8), 7, &report);
  CHECK(report.max_imag < 1e-12);
  CHECK(report.points >= 256);
  CHECK_FALSE(report.closed_form);
  const auto table = build_gl_table(kernel_at(1.6), 40);
  CHECK(table.report().max_imag < 1e-12);
  CHECK(table.report().last_change < 1e-13);
}

TEST_CASE("batch and single evaluation agree") {
  for (double lambda : {0.4, 1.2}) {
    const auto k = kernel_at(lambda);
    const auto table = build_gl_table(k, 30);
    for (int l : {-30, -7, -1, 0, 1, 13, 30}) {
      CHECK(std::abs(table.at(l) - compute_gl(k, l)) < 1e-12);
    }
  }
}

TEST_CASE("decay away from criticality") {
  const auto table = build_gl_table(kernel_at(0.5), 40);
  CHECK(std::abs(table[40]) < 1e-10);
  CHECK(std::abs(table[-40]) < 1e-10);
  CHECK(std::abs(table[20]) < std::abs(table[10]));
}

TEST_CASE("validation and table bounds") {
  CorrelationKernel k;
  k.lambda = -0.1;
  CHECK_THROWS_AS(compute_gl(k, 0), ValidationError);
  k.lambda = std::nan("");
  CHECK_THROWS_AS(compute_gl(k, 0), ValidationError);
  k = CorrelationKernel{};
  k.quad_points = 2;
  CHECK_THROWS_AS(build_gl_table(k, 3), ValidationError);
  k.quad_points = 100;
  CHECK_THROWS_AS(build_gl_table(k, 3), ValidationError);
  k = CorrelationKernel{};
  k.rel_tol = 0.0;
  CHECK_THROWS_AS(compute_gl(k, 0), ValidationError);
  CHECK_THROWS_AS(compute_gl(CorrelationKernel{}, 1'000'001), ValidationError);
  CHECK_THROWS_AS(build_gl_table(CorrelationKernel{}, 0), ValidationError);

  const auto table = build_gl_table(kernel_at(0.5), 5);
  CHECK(table.covers(-5));
  CHECK_FALSE(table.covers(6));
  CHECK_THROWS_AS(table.at(6), IndexOutOfTable);
  CHECK_THROWS_AS(table.at(-6), IndexOutOfTable);
  CHECK_THROWS_AS(GlTable(0.5, 2, std::vector<double>(3)), ValidationError);
}

TEST_CASE("unreachable tolerance reports non-convergence") {
  CorrelationKernel k = kernel_at(0.7);
  k.rel_tol = 1e-300;
  CHECK_THROWS_AS(compute_gl(k, 1), NonConvergence);
  k.lambda = 1.0;
  k.rel_tol = 1e-13;
  CHECK_THROWS_AS(compute_gl_quadrature(k, 0), NonConvergence);
}
