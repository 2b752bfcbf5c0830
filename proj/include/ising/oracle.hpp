#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ising/blockmatrix.hpp"
#include "ising/spectral.hpp"

namespace ising {

/// Open transverse-field Ising chain H = -J sum_i (lambda sz_i + sx_i sx_{i+1}).
struct FiniteChainSpec {
  std::int64_t n_sites = 0;
  double lambda = 1.0;
  double coupling_j = 1.0;

  static constexpr std::int64_t kMaxEdSites = 14;
  static constexpr std::int64_t kMaxFreeFermionSites = 2000;

  /// Throws ValidationError unless 3 <= n_sites <= max_sites, lambda >= 0.
  void validate(std::int64_t max_sites) const;
};

/// Sorted set of distinct sites of a finite chain; neither it nor its
/// complement may be empty.
class SubsystemMask {
 public:
  SubsystemMask(std::vector<std::int64_t> sites, std::int64_t n_sites);

  /// Sites [first, first + L) and [first + L + d, first + 2L + d).
  static SubsystemMask two_block(std::int64_t n_sites, std::int64_t first, std::int64_t L,
                                 std::int64_t d);
  /// Two blocks placed as close to the chain centre as possible.
  static SubsystemMask centered_two_block(std::int64_t n_sites, std::int64_t L, std::int64_t d);
  static SubsystemMask centered_block(std::int64_t n_sites, std::int64_t L);

  struct TwoBlockShape {
    std::int64_t L;
    std::int64_t d;
  };
  /// Two equal runs of length L separated by d >= 1 sites, or one run of even
  /// length 2L (d = 0); nullopt otherwise.
  std::optional<TwoBlockShape> two_block_shape() const;

  const std::vector<std::int64_t>& sites() const { return sites_; }
  std::int64_t n_sites() const { return n_sites_; }
  SubsystemMask complement() const;

 private:
  std::vector<std::int64_t> sites_;
  std::int64_t n_sites_;
};

/// Ground state in the sigma^z product basis. Basis index bit k is 1 when
/// spin k points down (sz = -1).
struct GroundState {
  std::int64_t n_sites = 0;
  std::vector<double> amplitudes;
  double energy = 0.0;
  double gap = 0.0;              ///< lowest excitation energy over both parity sectors
  bool parity_degenerate = false;  ///< gap < 1e-10; the even-parity state is returned
};

inline constexpr double kDegeneracyThreshold = 1e-10;

/// Dense diagonalization in each parity sector. Throws DegenerateGroundState
/// if the returned sector is itself degenerate.
GroundState ed_ground_state(const FiniteChainSpec& spec);

/// von Neumann entropy of the spin reduced density matrix Tr_{not mask}|psi><psi|.
EntropyValue reduced_entropy(const GroundState& state, const SubsystemMask& mask);

/// Entropy of the fermionic reduced state of the Jordan-Wigner modes in the
/// mask: the amplitudes are reordered (with fermionic signs) so the masked
/// modes come first before the partial trace. Equals reduced_entropy for any
/// contiguous mask.
EntropyValue fermionic_reduced_entropy(const GroundState& state, const SubsystemMask& mask);

/// Majorana correlation matrix of the ground state of the finite open chain,
/// in the same layout as the infinite-chain matrices: entry (2i, 2j+1) plays
/// the role of g_{i-j}. Throws DegenerateGroundState on a (near) zero mode.
SkewCorrMatrix ff_finite_correlations(const FiniteChainSpec& spec);

/// -1/2 sum of single-particle energies.
double ff_ground_energy(const FiniteChainSpec& spec);

/// Entropy of the masked sites from a correlation matrix.
EntropyValue ff_masked_entropy(const SkewCorrMatrix& gamma, const SubsystemMask& mask);

}  // namespace ising
