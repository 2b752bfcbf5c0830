#include "ising/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "ising/errors.hpp"

namespace ising {

namespace {

using Index = std::uint64_t;

Index bits_of(const std::vector<std::int64_t>& sites) {
  Index out = 0;
  for (const auto s : sites) out |= Index{1} << s;
  return out;
}

// Gathers the bits of `x` selected by `mask` into the low bits (software pext).
Index gather_bits(Index x, Index mask) {
  Index out = 0;
  int k = 0;
  while (mask != 0) {
    const int b = std::countr_zero(mask);
    out |= ((x >> b) & 1U) << k;
    ++k;
    mask &= mask - 1;
  }
  return out;
}

struct SectorSolution {
  std::vector<Index> basis;
  Eigen::VectorXd values;
  Eigen::VectorXd ground;
};

SectorSolution solve_sector(const FiniteChainSpec& spec, int parity) {
  const auto n = static_cast<int>(spec.n_sites);
  SectorSolution out;
  const Index dim = Index{1} << n;
  for (Index x = 0; x < dim; ++x) {
    if (std::popcount(x) % 2 == parity) out.basis.push_back(x);
  }
  std::vector<std::int64_t> position(dim, -1);
  for (std::size_t i = 0; i < out.basis.size(); ++i) {
    position[out.basis[i]] = static_cast<std::int64_t>(i);
  }
  const auto m = static_cast<Eigen::Index>(out.basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Index x = out.basis[static_cast<std::size_t>(i)];
    // -J lambda sum sz: sz = +1 for bit 0.
    const int down = std::popcount(x);
    h(i, i) = -spec.coupling_j * spec.lambda * static_cast<double>(n - 2 * down);
    for (int k = 0; k + 1 < n; ++k) {
      const Index y = x ^ (Index{3} << k);
      h(position[y], i) += -spec.coupling_j;
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> levels(h, Eigen::EigenvaluesOnly);
  out.values = levels.eigenvalues().head(std::min<Eigen::Index>(2, m));
  if (m == 1) {
    out.ground = Eigen::VectorXd::Ones(1);
    return out;
  }
  // Ground vector by inverse iteration just below the lowest level.
  const double e0 = out.values(0);
  const double gap = out.values(1) - e0;
  const double scale = std::max(1.0, std::abs(e0));
  if (gap < kDegeneracyThreshold) return out;
  const double shift = e0 - 1e-3 * gap;
  Eigen::MatrixXd shifted = h;
  shifted.diagonal().array() -= shift;
  const Eigen::LLT<Eigen::MatrixXd> factor(shifted);
  if (factor.info() != Eigen::Success) throw NumericError("shifted Hamiltonian is not positive definite");
  Eigen::VectorXd v = Eigen::VectorXd::Ones(m).normalized();
  for (int iter = 0; iter < 60; ++iter) {
    v = factor.solve(v).normalized();
    if ((h * v - e0 * v).norm() < 1e-11 * scale) break;
  }
  out.ground = v;
  return out;
}

double von_neumann_bits(const Eigen::MatrixXd& rho) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rho, Eigen::EigenvaluesOnly);
  double bits = 0.0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double p = solver.eigenvalues()(k);
    if (p > 1e-12) bits -= p * std::log2(p);
  }
  return bits;
}

EntropyValue partial_trace_entropy(const GroundState& state, const SubsystemMask& mask,
                                   bool fermionic) {
  if (mask.n_sites() != state.n_sites) throw ValidationError("mask and state sizes differ");
  const Index kept = bits_of(mask.sites());
  const Index traced = bits_of(mask.complement().sites());
  const auto rows = Eigen::Index{1} << std::popcount(kept);
  const auto cols = Eigen::Index{1} << std::popcount(traced);
  Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(rows, cols);
  for (Index x = 0; x < state.amplitudes.size(); ++x) {
    double amp = state.amplitudes[x];
    if (fermionic) {
      // Move every occupied kept mode in front of the occupied traced modes
      // to its left.
      int swaps = 0;
      for (Index occ = x & kept; occ != 0; occ &= occ - 1) {
        const int j = std::countr_zero(occ);
        swaps += std::popcount(x & traced & ((Index{1} << j) - 1));
      }
      if (swaps % 2 != 0) amp = -amp;
    }
    psi(static_cast<Eigen::Index>(gather_bits(x, kept)),
        static_cast<Eigen::Index>(gather_bits(x, traced))) = amp;
  }
  const Eigen::MatrixXd rho = psi * psi.transpose();
  return {von_neumann_bits(rho)};
}

// B couples x-type Majoranas (rows) to y-type ones (columns):
// H = (i/2) sum_{jk} B_jk x_j y_k.
Eigen::MatrixXd coupling_block(const FiniteChainSpec& spec) {
  const auto n = static_cast<Eigen::Index>(spec.n_sites);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    b(k, k) = 2.0 * spec.coupling_j * spec.lambda;
    if (k + 1 < n) b(k + 1, k) = -2.0 * spec.coupling_j;
  }
  return b;
}

}  // namespace

void FiniteChainSpec::validate(std::int64_t max_sites) const {
  if (n_sites < 3 || n_sites > max_sites) {
    std::ostringstream msg;
    msg << "n_sites must be in [3, " << max_sites << "] (got " << n_sites << ")";
    throw ValidationError(msg.str());
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be >= 0");
  if (!(coupling_j > 0.0)) throw ValidationError("coupling J must be > 0");
}

SubsystemMask::SubsystemMask(std::vector<std::int64_t> sites, std::int64_t n_sites)
    : sites_(std::move(sites)), n_sites_(n_sites) {
  std::sort(sites_.begin(), sites_.end());
  if (sites_.empty()) throw ValidationError("mask is empty");
  if (std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end()) {
    throw ValidationError("mask has duplicate sites");
  }
  if (sites_.front() < 0 || sites_.back() >= n_sites_) {
    throw ValidationError("mask site outside the chain");
  }
  if (static_cast<std::int64_t>(sites_.size()) == n_sites_) {
    throw ValidationError("mask complement is empty");
  }
}

SubsystemMask SubsystemMask::two_block(std::int64_t n_sites, std::int64_t first, std::int64_t L,
                                       std::int64_t d) {
  if (L < 1 || d < 0) throw ValidationError("need L >= 1 and d >= 0");
  std::vector<std::int64_t> sites;
  for (std::int64_t k = 0; k < L; ++k) {
    sites.push_back(first + k);
    sites.push_back(first + L + d + k);
  }
  return SubsystemMask(std::move(sites), n_sites);
}

SubsystemMask SubsystemMask::centered_two_block(std::int64_t n_sites, std::int64_t L,
                                                std::int64_t d) {
  const std::int64_t span = 2 * L + d;
  return two_block(n_sites, (n_sites - span) / 2, L, d);
}

SubsystemMask SubsystemMask::centered_block(std::int64_t n_sites, std::int64_t L) {
  if (L < 1) throw ValidationError("need L >= 1");
  std::vector<std::int64_t> sites;
  const std::int64_t first = (n_sites - L) / 2;
  for (std::int64_t k = 0; k < L; ++k) sites.push_back(first + k);
  return SubsystemMask(std::move(sites), n_sites);
}

std::optional<SubsystemMask::TwoBlockShape> SubsystemMask::two_block_shape() const {
  std::vector<std::pair<std::int64_t, std::int64_t>> runs;  // (start, length)
  for (const auto s : sites_) {
    if (!runs.empty() && runs.back().first + runs.back().second == s) {
      ++runs.back().second;
    } else {
      runs.emplace_back(s, 1);
    }
  }
  if (runs.size() == 1 && runs[0].second % 2 == 0) return TwoBlockShape{runs[0].second / 2, 0};
  if (runs.size() == 2 && runs[0].second == runs[1].second) {
    return TwoBlockShape{runs[0].second, runs[1].first - runs[0].first - runs[0].second};
  }
  return std::nullopt;
}

SubsystemMask SubsystemMask::complement() const {
  std::vector<std::int64_t> rest;
  for (std::int64_t s = 0; s < n_sites_; ++s) {
    if (!std::binary_search(sites_.begin(), sites_.end(), s)) rest.push_back(s);
  }
  return SubsystemMask(std::move(rest), n_sites_);
}

GroundState ed_ground_state(const FiniteChainSpec& spec) {
  spec.validate(FiniteChainSpec::kMaxEdSites);
  const SectorSolution even = solve_sector(spec, 0);
  const SectorSolution odd = solve_sector(spec, 1);

  std::vector<double> levels;
  for (const auto* sector : {&even, &odd}) {
    for (Eigen::Index k = 0; k < std::min<Eigen::Index>(2, sector->values.size()); ++k) {
      levels.push_back(sector->values(k));
    }
  }
  std::sort(levels.begin(), levels.end());

  GroundState out;
  out.n_sites = spec.n_sites;
  out.gap = levels[1] - levels[0];
  out.parity_degenerate = out.gap < kDegeneracyThreshold;
  const SectorSolution& chosen =
      (out.parity_degenerate || even.values(0) <= odd.values(0)) ? even : odd;
  if (chosen.values.size() > 1 && chosen.values(1) - chosen.values(0) < kDegeneracyThreshold) {
    throw DegenerateGroundState("ground state is degenerate within a parity sector");
  }
  out.energy = chosen.values(0);
  out.amplitudes.assign(std::size_t{1} << spec.n_sites, 0.0);
  for (std::size_t i = 0; i < chosen.basis.size(); ++i) {
    out.amplitudes[chosen.basis[i]] = chosen.ground(static_cast<Eigen::Index>(i));
  }
  return out;
}

EntropyValue reduced_entropy(const GroundState& state, const SubsystemMask& mask) {
  return partial_trace_entropy(state, mask, false);
}

EntropyValue fermionic_reduced_entropy(const GroundState& state, const SubsystemMask& mask) {
  return partial_trace_entropy(state, mask, true);
}

SkewCorrMatrix ff_finite_correlations(const FiniteChainSpec& spec) {
  spec.validate(FiniteChainSpec::kMaxFreeFermionSites);
  const Eigen::MatrixXd b = coupling_block(spec);
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto n = b.rows();
  if (svd.singularValues()(n - 1) < kDegeneracyThreshold) {
    std::ostringstream msg;
    msg << "zero mode (single-particle energy " << svd.singularValues()(n - 1)
        << ") at lambda = " << spec.lambda;
    throw DegenerateGroundState(msg.str());
  }
  // Ground-state <x_j y_k> = i (U V^T)_jk. Listing y before x within each
  // site maps this onto the infinite-chain layout: block entry (0,1) of
  // block (i, j) is -(U V^T)_ji.
  const Eigen::MatrixXd w = svd.matrixU() * svd.matrixV().transpose();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = -w(j, i);
      m(2 * i, 2 * j + 1) = v;
      m(2 * j + 1, 2 * i) = -v;
    }
  }
  return SkewCorrMatrix::from_dense(std::move(m), {MatrixKind::finite_chain, spec.n_sites, 0});
}

double ff_ground_energy(const FiniteChainSpec& spec) {
  spec.validate(FiniteChainSpec::kMaxFreeFermionSites);
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(coupling_block(spec));
  return -0.5 * svd.singularValues().sum();
}

EntropyValue ff_masked_entropy(const SkewCorrMatrix& gamma, const SubsystemMask& mask) {
  if (mask.n_sites() != gamma.modes()) throw ValidationError("mask and matrix sizes differ");
  return entropy_from_spectrum(nu_spectrum(select_sites(gamma, mask.sites())));
}

}  // namespace ising
