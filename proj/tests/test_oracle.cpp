#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ising/errors.hpp"
#include "ising/oracle.hpp"

using namespace ising;

namespace {

FiniteChainSpec chain(std::int64_t n, double lambda) {
  FiniteChainSpec s;
  s.n_sites = n;
  s.lambda = lambda;
  return s;
}

GroundState manual_state(std::int64_t n, std::vector<double> amps) {
  GroundState g;
  g.n_sites = n;
  g.amplitudes = std::move(amps);
  return g;
}

}  // namespace

TEST_CASE("chain and mask validation") {
  CHECK_THROWS_AS(ed_ground_state(chain(2, 1.0)), ValidationError);
  CHECK_THROWS_AS(ed_ground_state(chain(15, 1.0)), ValidationError);
  CHECK_THROWS_AS(ed_ground_state(chain(5, -1.0)), ValidationError);
  CHECK_THROWS_AS(ff_finite_correlations(chain(2001, 1.0)), ValidationError);
  CHECK_THROWS_AS(SubsystemMask({}, 5), ValidationError);
  CHECK_THROWS_AS(SubsystemMask({0, 1, 2}, 3), ValidationError);
  CHECK_THROWS_AS(SubsystemMask({1, 1}, 5), ValidationError);
  CHECK_THROWS_AS(SubsystemMask({5}, 5), ValidationError);
  CHECK_THROWS_AS(SubsystemMask({-1}, 5), ValidationError);
  CHECK_THROWS_AS(SubsystemMask::centered_two_block(5, 2, 2), ValidationError);
}

TEST_CASE("mask shapes") {
  const auto m = SubsystemMask::centered_two_block(12, 2, 1);
  CHECK(m.sites() == std::vector<std::int64_t>{3, 4, 6, 7});
  REQUIRE(m.two_block_shape());
  CHECK(m.two_block_shape()->L == 2);
  CHECK(m.two_block_shape()->d == 1);
  const auto single = SubsystemMask::centered_block(12, 2);
  CHECK(single.sites() == std::vector<std::int64_t>{5, 6});
  CHECK(single.two_block_shape()->L == 1);
  CHECK(single.two_block_shape()->d == 0);
  CHECK_FALSE(SubsystemMask({0, 2, 3}, 6).two_block_shape());
  CHECK_FALSE(SubsystemMask::centered_block(12, 3).two_block_shape());
  CHECK(SubsystemMask({1, 4}, 6).complement().sites() == std::vector<std::int64_t>{0, 2, 3, 5});
  CHECK(SubsystemMask({3, 1}, 6).sites() == std::vector<std::int64_t>{1, 3});
}

TEST_CASE("reference states") {
  // |000>: product state
  std::vector<double> prod(8, 0.0);
  prod[0] = 1.0;
  const auto p = manual_state(3, prod);
  CHECK(reduced_entropy(p, SubsystemMask({1}, 3)).bits == doctest::Approx(0.0));
  CHECK(reduced_entropy(p, SubsystemMask({0, 2}, 3)).bits == doctest::Approx(0.0));
  // Bell pair on sites 0 and 1, site 2 up.
  std::vector<double> bell(8, 0.0);
  bell[0b000] = std::numbers::sqrt2 / 2;
  bell[0b011] = std::numbers::sqrt2 / 2;
  const auto b = manual_state(3, bell);
  CHECK(reduced_entropy(b, SubsystemMask({0}, 3)).bits == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(reduced_entropy(b, SubsystemMask({2}, 3)).bits == doctest::Approx(0.0));
  CHECK(reduced_entropy(b, SubsystemMask({0, 2}, 3)).bits == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(reduced_entropy(b, SubsystemMask({0}, 4)), ValidationError);
}

TEST_CASE("strong field polarizes the chain") {
  const auto g = ed_ground_state(chain(3, 1000.0));
  CHECK(std::abs(g.energy / 1000.0 + 3.0) < 1e-3);
  CHECK(g.amplitudes[0] * g.amplitudes[0] > 0.999);
  CHECK_FALSE(g.parity_degenerate);

  const auto m = ff_finite_correlations(chain(6, 1e6));
  for (int i = 0; i < 6; ++i) {
    CHECK(std::abs(m(2 * i, 2 * i + 1) + 1.0) < 1e-5);
    CHECK(std::abs(m(2 * i + 1, 2 * i) - 1.0) < 1e-5);
  }
  CHECK(ff_masked_entropy(m, SubsystemMask({1, 2, 3}, 6)).bits < 1e-6);
}

TEST_CASE("zero field: even-parity cat state") {
  const auto g = ed_ground_state(chain(3, 0.0));
  CHECK(g.parity_degenerate);
  CHECK(g.energy == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(reduced_entropy(g, SubsystemMask({1}, 3)).bits == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(ff_finite_correlations(chain(6, 0.0)), DegenerateGroundState);

  const auto g11 = ed_ground_state(chain(11, 0.0));
  const auto mask = SubsystemMask::centered_two_block(11, 2, 1);
  CHECK(std::abs(fermionic_reduced_entropy(g11, mask).bits - 2.0) < 1e-10);
  CHECK(std::abs(reduced_entropy(g11, mask).bits - 1.0) < 1e-10);
}

TEST_CASE("ED and free-fermion energies agree") {
  for (double lambda : {0.3, 1.0, 1.7}) {
    for (std::int64_t n = 3; n <= 10; ++n) {
      CAPTURE(n);
      CAPTURE(lambda);
      const auto g = ed_ground_state(chain(n, lambda));
      CHECK(std::abs(g.energy - ff_ground_energy(chain(n, lambda))) < 1e-10);
      double norm = 0.0;
      for (double a : g.amplitudes) norm += a * a;
      CHECK(std::abs(norm - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("contiguous blocks: ED and free fermions agree") {
  for (double lambda : {0.3, 1.0, 1.7}) {
    for (std::int64_t n : {5, 8, 9}) {
      const auto g = ed_ground_state(chain(n, lambda));
      const auto m = ff_finite_correlations(chain(n, lambda));
      for (std::int64_t L = 1; L <= 3; ++L) {
        const auto mask = SubsystemMask::centered_block(n, L);
        CHECK(std::abs(reduced_entropy(g, mask).bits - ff_masked_entropy(m, mask).bits) < 1e-8);
        CHECK(reduced_entropy(g, mask).bits == fermionic_reduced_entropy(g, mask).bits);
      }
    }
  }
}

TEST_CASE("split blocks: fermionic partial trace matches free fermions") {
  for (double lambda : {0.3, 1.0, 1.7}) {
    const auto g = ed_ground_state(chain(9, lambda));
    const auto m = ff_finite_correlations(chain(9, lambda));
    for (std::int64_t L = 1; L <= 2; ++L) {
      for (std::int64_t d = 1; d <= 2; ++d) {
        const auto mask = SubsystemMask::centered_two_block(9, L, d);
        CHECK(std::abs(fermionic_reduced_entropy(g, mask).bits - ff_masked_entropy(m, mask).bits) < 1e-8);
      }
    }
  }
}

TEST_CASE("entropy of a mask equals that of its complement") {
  const auto g = ed_ground_state(chain(8, 0.8));
  for (const auto& sites : {std::vector<std::int64_t>{0}, {2, 3}, {1, 4, 6}, {0, 1, 2, 7}}) {
    const SubsystemMask mask(sites, 8);
    CHECK(std::abs(reduced_entropy(g, mask).bits - reduced_entropy(g, mask.complement()).bits) < 1e-10);
    CHECK(std::abs(fermionic_reduced_entropy(g, mask).bits -
                   fermionic_reduced_entropy(g, mask.complement()).bits) < 1e-10);
  }
}

TEST_CASE("finite chain approaches the infinite chain") {
  CorrelationKernel critical;
  const double s_inf = entropy_single_block(critical, 2).bits;
  double last = 0.0;
  for (std::int64_t n : {6, 8, 10, 12}) {
    const auto m = ff_finite_correlations(chain(n, 1.0));
    const double s = ff_masked_entropy(m, SubsystemMask::centered_block(n, 2)).bits;
    CHECK(s > last);
    last = s;
  }
  CHECK(last < s_inf);
  CHECK(s_inf - last < 5e-2);
  const auto g12 = ed_ground_state(chain(12, 1.0));
  CHECK(std::abs(reduced_entropy(g12, SubsystemMask::centered_block(12, 2)).bits - last) < 1e-8);

  const auto big = ff_finite_correlations(chain(1000, 1.0));
  const auto table = build_gl_table(critical, 5);
  for (std::int64_t l = -5; l <= 5; ++l) {
    const Eigen::Index i = 500 + l;
    CHECK(std::abs(big(2 * i, 2 * 500 + 1) - table[l]) < 1e-3);
  }
}
