#include "ising/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "ising/errors.hpp"

namespace ising {

namespace {

bool has_chiral_structure(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows() / 2;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (m(2 * i, 2 * j) != 0.0 || m(2 * i + 1, 2 * j + 1) != 0.0) return false;
    }
  }
  return true;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
  if (m.rows() <= 16) {
    return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  }
  return Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues();
}

double finalize(std::vector<double>& nus, const MatrixOrigin& origin) {
  std::sort(nus.begin(), nus.end(), std::greater<>());
  double excess = 0.0;
  for (auto& nu : nus) {
    if (nu > 1.0) {
      excess = std::max(excess, nu - 1.0);
      if (nu - 1.0 > kClampWindow) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "singular value " << nu << " exceeds 1 in " << origin.describe();
        throw PairingFailure(msg.str());
      }
      nu = 1.0;
    }
    if (nu < 0.0) nu = 0.0;
  }
  return excess;
}

}  // namespace

EntropySpectrum nu_spectrum(const SkewCorrMatrix& m, SpectralRoute route) {
  const Eigen::MatrixXd& dense = m.dense();
  const Eigen::Index n = m.modes();
  if (route == SpectralRoute::automatic) {
    route = has_chiral_structure(dense) ? SpectralRoute::chiral : SpectralRoute::full;
  } else if (route == SpectralRoute::chiral && !has_chiral_structure(dense)) {
    throw ValidationError("chiral route requested for a matrix without odd/even structure");
  }

  EntropySpectrum out;
  if (route == SpectralRoute::chiral) {
    Eigen::MatrixXd c(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) c(i, j) = dense(2 * i, 2 * j + 1);
    }
    const Eigen::VectorXd sv = singular_values(c);
    out.nus.assign(sv.data(), sv.data() + sv.size());
    out.pairing_gap = 0.0;
  } else {
    const Eigen::VectorXd sv = singular_values(dense);  // descending, 2n values
    out.nus.resize(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
      const double a = sv(2 * k);
      const double b = sv(2 * k + 1);
      out.pairing_gap = std::max(out.pairing_gap, std::abs(a - b));
      out.nus[static_cast<std::size_t>(k)] = 0.5 * (a + b);
    }
  }
  out.max_excess = finalize(out.nus, m.origin());
  const double limit = kPairingTolerance * std::max(1.0, out.nus.empty() ? 0.0 : out.nus.front());
  if (out.pairing_gap > limit) {
    std::ostringstream msg;
    msg << "singular values of " << m.origin().describe() << " do not pair (gap "
        << out.pairing_gap << ")";
    throw PairingFailure(msg.str());
  }
  return out;
}

double shannon_bit(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << "shannon_bit argument " << x << " outside [0, 1]";
    throw DomainError(msg.str());
  }
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

EntropyValue entropy_from_spectrum(const EntropySpectrum& s) {
  double bits = 0.0;
  for (const double nu : s.nus) {
    if (!(nu >= 0.0 && nu <= 1.0)) throw DomainError("spectrum value outside [0, 1]");
    // H((1+nu)/2) evaluated through (1-nu)/2 keeps the small tail exact near nu = 1.
    const double lo = 0.5 * (1.0 - nu);
    const double hi = 0.5 * (1.0 + nu);
    double h = 0.0;
    if (lo > 0.0) h -= lo * std::log2(lo);
    if (hi > 0.0) h -= hi * std::log2(hi);
    bits += h;
  }
  return {bits};
}

EntropySpectrum two_block_spectrum(const GlTable& table, std::int64_t L, std::int64_t d) {
  return nu_spectrum(build_gamma_two_blocks(table, L, d));
}

EntropySpectrum two_block_spectrum(const CorrelationKernel& kernel, std::int64_t L,
                                   std::int64_t d) {
  if (L < 1 || d < 0) throw ValidationError("need L >= 1 and d >= 0");
  const GlTable table = build_gl_table(kernel, std::max<std::int64_t>(1, 2 * L + d - 1));
  return two_block_spectrum(table, L, d);
}

EntropyValue entropy_two_blocks(const CorrelationKernel& kernel, std::int64_t L, std::int64_t d) {
  return entropy_from_spectrum(two_block_spectrum(kernel, L, d));
}

EntropyValue entropy_single_block(const CorrelationKernel& kernel, std::int64_t L) {
  if (L < 1) throw ValidationError("need L >= 1");
  const GlTable table = build_gl_table(kernel, std::max<std::int64_t>(1, L - 1));
  return entropy_from_spectrum(nu_spectrum(build_gamma_single(table, L)));
}

}  // namespace ising
