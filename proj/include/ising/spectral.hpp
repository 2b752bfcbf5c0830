#pragma once

#include <cstdint>
#include <vector>

#include "ising/blockmatrix.hpp"
#include "ising/corr.hpp"

namespace ising {

/// nu_1 >= ... >= nu_n for a 2n x 2n skew matrix with eigenvalues +-i nu_k.
struct EntropySpectrum {
  std::vector<double> nus;
  double pairing_gap = 0.0;  ///< largest mismatch inside a singular-value pair
  double max_excess = 0.0;   ///< largest pre-clamp value above 1 (0 if none)
};

/// Entropy in bits.
struct EntropyValue {
  double bits = 0.0;
};

enum class SpectralRoute {
  automatic,  ///< chiral when the odd/odd and even/even entries vanish, full otherwise
  full,       ///< singular values of the whole matrix, paired
  chiral,     ///< singular values of the odd-even coupling block
};

inline constexpr double kPairingTolerance = 1e-8;
inline constexpr double kClampWindow = 1e-9;

/// The nu-spectrum. The chiral route exploits the structure every
/// ground-state correlation matrix here has (<a_{2i} a_{2j}> = 0 for i != j):
/// M(2i, 2j) = M(2i+1, 2j+1) = 0, so nu are the singular values of the
/// n x n block C_ij = M(2i, 2j+1). The full route pairs the 2n singular values
/// of M and reports the largest mismatch.
///
/// Throws PairingFailure when the pairing gap exceeds 1e-8 max(1, nu_1) or a
/// singular value exceeds 1 + 1e-9.
EntropySpectrum nu_spectrum(const SkewCorrMatrix& m, SpectralRoute route = SpectralRoute::automatic);

/// -x log2 x - (1 - x) log2 (1 - x); throws DomainError outside [0, 1].
double shannon_bit(double x);

EntropyValue entropy_from_spectrum(const EntropySpectrum& s);

/// S_L of L contiguous spins.
EntropyValue entropy_single_block(const CorrelationKernel& kernel, std::int64_t L);

/// S(L, d) of two blocks of L spins separated by d spins.
EntropyValue entropy_two_blocks(const CorrelationKernel& kernel, std::int64_t L, std::int64_t d);

/// Spectrum of Gamma_{L,d} (convenience for eigenvalue scans).
EntropySpectrum two_block_spectrum(const CorrelationKernel& kernel, std::int64_t L, std::int64_t d);

/// Same as above with a prebuilt table (l_max >= 2L + d - 1).
EntropySpectrum two_block_spectrum(const GlTable& table, std::int64_t L, std::int64_t d);

}  // namespace ising
