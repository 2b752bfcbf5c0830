#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>

#include "ising/corr.hpp"

namespace ising {

/// 2x2 Majorana block Pi_l = [[0, g_l], [-g_{-l}, 0]].
struct MajoranaBlock {
  std::int64_t l = 0;
  Eigen::Matrix2d entries = Eigen::Matrix2d::Zero();
};

enum class MatrixKind { single_block, two_block, padded, finite_chain, generic };

struct MatrixOrigin {
  MatrixKind kind = MatrixKind::generic;
  std::int64_t block_size = 0;  // L (single/two block), 2L+d (padded), n (finite chain)
  std::int64_t distance = 0;    // d, two-block only

  std::string describe() const;
};

/// Real antisymmetric 2n x 2n correlation matrix. Antisymmetry is exact:
/// builders write each off-diagonal entry and its negated mirror together,
/// and from_dense() rejects anything else.
class SkewCorrMatrix {
 public:
  /// Throws NotAntisymmetric unless m + m^T == 0 bit-exactly and the
  /// dimension is even and positive.
  static SkewCorrMatrix from_dense(Eigen::MatrixXd m, MatrixOrigin origin = {});

  Eigen::Index size() const { return m_.rows(); }
  Eigen::Index modes() const { return m_.rows() / 2; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  const Eigen::MatrixXd& dense() const { return m_; }
  const MatrixOrigin& origin() const { return origin_; }

  bool operator==(const SkewCorrMatrix& other) const { return m_ == other.m_; }

 private:
  SkewCorrMatrix(Eigen::MatrixXd m, MatrixOrigin origin) : m_(std::move(m)), origin_(origin) {}

  friend SkewCorrMatrix assemble_from_sites(const GlTable&, std::span<const std::int64_t>,
                                            MatrixOrigin);
  friend SkewCorrMatrix select_sites(const SkewCorrMatrix&, std::span<const std::int64_t>,
                                     MatrixOrigin);

  Eigen::MatrixXd m_;
  MatrixOrigin origin_;
};

/// Throws IndexOutOfTable if |l| > l_max.
MajoranaBlock build_pi(const GlTable& table, std::int64_t l);

/// Block matrix with (a, b) block Pi_{sites[a] - sites[b]}: the correlation
/// matrix of an arbitrary set of sites of the infinite chain.
SkewCorrMatrix assemble_from_sites(const GlTable& table, std::span<const std::int64_t> sites,
                                   MatrixOrigin origin = {});

/// 2L x 2M block-Toeplitz matrix with (i, j) block Pi_{x + i - j}.
Eigen::MatrixXd build_toeplitz_rect(const GlTable& table, std::int64_t x, std::int64_t rows,
                                    std::int64_t cols);

/// Gamma_L: the single block of L contiguous spins.
SkewCorrMatrix build_gamma_single(const GlTable& table, std::int64_t L);

/// Gamma_{2L+d}: the contiguous matrix spanning both blocks and the gap.
SkewCorrMatrix build_gamma_padded(const GlTable& table, std::int64_t L, std::int64_t d);

/// Gamma_{L,d} assembled directly as [[A_0, A_{-L-d}], [A_{L+d}, A_0]].
SkewCorrMatrix build_gamma_two_blocks(const GlTable& table, std::int64_t L, std::int64_t d);

/// Gamma_{L,d} obtained by deleting block indices L .. L+d-1 from Gamma_{2L+d}.
SkewCorrMatrix build_gamma_two_blocks_by_deletion(const GlTable& table, std::int64_t L,
                                                  std::int64_t d);

/// Keeps the 2x2 diagonal blocks listed in `sites` (and their couplings).
/// Site indices must be distinct and in range.
SkewCorrMatrix select_sites(const SkewCorrMatrix& m, std::span<const std::int64_t> sites,
                            MatrixOrigin origin = {});

/// Removes the `count` consecutive sites starting at `first` (rows and columns).
SkewCorrMatrix delete_sites(const SkewCorrMatrix& m, std::int64_t first, std::int64_t count,
                            MatrixOrigin origin = {});

}  // namespace ising
