#include "ising/blockmatrix.hpp"

#include <numeric>
#include <sstream>
#include <vector>

#include "ising/errors.hpp"

namespace ising {

namespace {

void require_positive(std::int64_t value, const char* what) {
  if (value < 1) {
    std::ostringstream msg;
    msg << what << " must be >= 1 (got " << value << ")";
    throw ValidationError(msg.str());
  }
}

void require_offset(const GlTable& table, std::int64_t max_offset) {
  if (!table.covers(max_offset) || !table.covers(-max_offset)) {
    std::ostringstream msg;
    msg << "offsets up to " << max_offset << " needed but table has l_max = " << table.l_max();
    throw IndexOutOfTable(msg.str());
  }
}

std::vector<std::int64_t> iota_sites(std::int64_t first, std::int64_t count) {
  std::vector<std::int64_t> sites(static_cast<std::size_t>(count));
  std::iota(sites.begin(), sites.end(), first);
  return sites;
}

}  // namespace

std::string MatrixOrigin::describe() const {
  std::ostringstream out;
  switch (kind) {
    case MatrixKind::single_block: out << "single_block(L=" << block_size << ")"; break;
    case MatrixKind::two_block:
      out << "two_block(L=" << block_size << ", d=" << distance << ")";
      break;
    case MatrixKind::padded: out << "padded(" << block_size << ")"; break;
    case MatrixKind::finite_chain: out << "finite_chain(n=" << block_size << ")"; break;
    case MatrixKind::generic: out << "generic"; break;
  }
  return out.str();
}

SkewCorrMatrix SkewCorrMatrix::from_dense(Eigen::MatrixXd m, MatrixOrigin origin) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw NotAntisymmetric("correlation matrix must be square with even positive size");
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      if (m(i, j) != -m(j, i)) {
        std::ostringstream msg;
        msg << "matrix is not antisymmetric at (" << i << ", " << j << ")";
        throw NotAntisymmetric(msg.str());
      }
    }
  }
  return SkewCorrMatrix(std::move(m), origin);
}

MajoranaBlock build_pi(const GlTable& table, std::int64_t l) {
  MajoranaBlock block;
  block.l = l;
  block.entries(0, 1) = table.at(l);
  block.entries(1, 0) = -table.at(-l);
  return block;
}

SkewCorrMatrix assemble_from_sites(const GlTable& table, std::span<const std::int64_t> sites,
                                   MatrixOrigin origin) {
  if (sites.empty()) throw ValidationError("site list is empty");
  const auto n = static_cast<Eigen::Index>(sites.size());
  for (std::size_t a = 0; a < sites.size(); ++a) {
    for (std::size_t b = 0; b < sites.size(); ++b) {
      if (a != b && sites[a] == sites[b]) throw ValidationError("duplicate site in list");
      if (!table.covers(sites[a] - sites[b])) {
        std::ostringstream msg;
        msg << "offset " << sites[a] - sites[b] << " outside table l_max = " << table.l_max();
        throw IndexOutOfTable(msg.str());
      }
    }
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  // (a, b) block is Pi_{s_a - s_b}; entry (0,1) of block (a, b) is g_{s_a - s_b}
  // and its mirror (1,0) of block (b, a) is -g_{s_a - s_b}.
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const double g = table[sites[static_cast<std::size_t>(a)] - sites[static_cast<std::size_t>(b)]];
      m(2 * a, 2 * b + 1) = g;
      m(2 * b + 1, 2 * a) = -g;
    }
  }
  return SkewCorrMatrix(std::move(m), origin);
}

Eigen::MatrixXd build_toeplitz_rect(const GlTable& table, std::int64_t x, std::int64_t rows,
                                    std::int64_t cols) {
  require_positive(rows, "row block count");
  require_positive(cols, "column block count");
  require_offset(table, std::max(std::abs(x + rows - 1), std::abs(x - cols + 1)));
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * rows, 2 * cols);
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::int64_t j = 0; j < cols; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = build_pi(table, x + i - j).entries;
    }
  }
  return out;
}

SkewCorrMatrix build_gamma_single(const GlTable& table, std::int64_t L) {
  require_positive(L, "L");
  require_offset(table, L - 1);
  const auto sites = iota_sites(0, L);
  return assemble_from_sites(table, sites, {MatrixKind::single_block, L, 0});
}

SkewCorrMatrix build_gamma_padded(const GlTable& table, std::int64_t L, std::int64_t d) {
  require_positive(L, "L");
  if (d < 0) throw ValidationError("d must be >= 0");
  require_offset(table, 2 * L + d - 1);
  const auto sites = iota_sites(0, 2 * L + d);
  return assemble_from_sites(table, sites, {MatrixKind::padded, 2 * L + d, 0});
}

SkewCorrMatrix build_gamma_two_blocks(const GlTable& table, std::int64_t L, std::int64_t d) {
  require_positive(L, "L");
  if (d < 0) throw ValidationError("d must be >= 0");
  require_offset(table, 2 * L + d - 1);
  const Eigen::Index h = 2 * L;
  Eigen::MatrixXd m(2 * h, 2 * h);
  m.topLeftCorner(h, h) = build_toeplitz_rect(table, 0, L, L);
  m.topRightCorner(h, h) = build_toeplitz_rect(table, -(L + d), L, L);
  m.bottomLeftCorner(h, h) = build_toeplitz_rect(table, L + d, L, L);
  m.bottomRightCorner(h, h) = m.topLeftCorner(h, h);
  return SkewCorrMatrix::from_dense(std::move(m), {MatrixKind::two_block, L, d});
}

SkewCorrMatrix build_gamma_two_blocks_by_deletion(const GlTable& table, std::int64_t L,
                                                  std::int64_t d) {
  const SkewCorrMatrix padded = build_gamma_padded(table, L, d);
  return delete_sites(padded, L, d, {MatrixKind::two_block, L, d});
}

SkewCorrMatrix select_sites(const SkewCorrMatrix& m, std::span<const std::int64_t> sites,
                            MatrixOrigin origin) {
  if (sites.empty()) throw ValidationError("site list is empty");
  const auto n = static_cast<Eigen::Index>(sites.size());
  std::vector<bool> seen(static_cast<std::size_t>(m.modes()), false);
  std::vector<Eigen::Index> idx;
  idx.reserve(static_cast<std::size_t>(2 * n));
  for (const auto s : sites) {
    if (s < 0 || s >= m.modes()) throw ValidationError("site index out of range");
    if (seen[static_cast<std::size_t>(s)]) throw ValidationError("duplicate site in list");
    seen[static_cast<std::size_t>(s)] = true;
    idx.push_back(2 * s);
    idx.push_back(2 * s + 1);
  }
  Eigen::MatrixXd out(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    for (Eigen::Index j = 0; j < 2 * n; ++j) {
      out(i, j) = m(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
  }
  return SkewCorrMatrix(std::move(out), origin);
}

SkewCorrMatrix delete_sites(const SkewCorrMatrix& m, std::int64_t first, std::int64_t count,
                            MatrixOrigin origin) {
  if (first < 0 || count < 0 || first + count > m.modes()) {
    throw ValidationError("deleted site range outside the matrix");
  }
  if (count == m.modes()) throw ValidationError("cannot delete every site");
  std::vector<std::int64_t> kept;
  for (std::int64_t s = 0; s < m.modes(); ++s) {
    if (s < first || s >= first + count) kept.push_back(s);
  }
  return select_sites(m, kept, origin);
}

}  // namespace ising
