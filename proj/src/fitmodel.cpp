#include "ising/fitmodel.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

#include "ising/errors.hpp"
#include "ising/parallel.hpp"

namespace ising {

namespace {

constexpr double kSixth = 1.0 / 6.0;

double log2d(double x) { return std::log2(x); }

}  // namespace

FitResult fit_k(std::span<const EntropySample> samples,
                std::pair<std::int64_t, std::int64_t> range) {
  const auto [l_min, l_max] = range;
  if (l_min < 1 || l_max < 4 * l_min) {
    std::ostringstream msg;
    msg << "fit range [" << l_min << ", " << l_max << "] must satisfy 1 <= L_min, L_max >= 4 L_min";
    throw InsufficientData(msg.str());
  }
  std::map<std::int64_t, double> by_l;
  for (const auto& s : samples) {
    if (s.L >= l_min && s.L <= l_max) by_l[s.L] = s.bits;
  }
  if (static_cast<std::int64_t>(by_l.size()) != l_max - l_min + 1) {
    std::ostringstream msg;
    msg << "samples cover " << by_l.size() << " of " << l_max - l_min + 1
        << " block sizes in the fit range";
    throw InsufficientData(msg.str());
  }

  const auto rows = static_cast<Eigen::Index>(by_l.size());
  Eigen::MatrixXd fixed(rows, 2);
  Eigen::MatrixXd free(rows, 3);
  Eigen::VectorXd y_fixed(rows);
  Eigen::VectorXd y(rows);
  Eigen::Index i = 0;
  for (const auto& [L, bits] : by_l) {
    const double x = static_cast<double>(L);
    const double lg = log2d(2.0 * x);
    fixed(i, 0) = 1.0;
    fixed(i, 1) = 1.0 / x;
    free(i, 0) = 1.0;
    free(i, 1) = 1.0 / x;
    free(i, 2) = lg;
    y_fixed(i) = bits - kSixth * lg;
    y(i) = bits;
    ++i;
  }
  const Eigen::Vector2d c = fixed.colPivHouseholderQr().solve(y_fixed);
  const Eigen::Vector3d c_free = free.colPivHouseholderQr().solve(y);

  FitResult out;
  out.k_const = c(0);
  out.correction = c(1);
  out.alpha = std::exp2(-6.0 * out.k_const);
  out.beta = 12.0 * out.k_const;
  out.slope_fitted = c_free(2);
  out.residual_max = (fixed * c - y_fixed).cwiseAbs().maxCoeff();
  out.fit_range = range;
  return out;
}

FitResult fit_k_critical(std::pair<std::int64_t, std::int64_t> range, unsigned threads) {
  const auto [l_min, l_max] = range;
  if (l_min < 1 || l_max < l_min) throw InsufficientData("empty fit range");
  const CorrelationKernel kernel{1.0};
  // One table serves every block: Gamma_{L,0} = Gamma_{2L} needs offsets < 2 L_max.
  const GlTable table = build_gl_table(kernel, 2 * l_max);
  std::vector<EntropySample> samples(static_cast<std::size_t>(l_max - l_min + 1));
  parallel_for(samples.size(), threads, [&](std::size_t k) {
    const std::int64_t L = l_min + static_cast<std::int64_t>(k);
    samples[k] = {L, entropy_from_spectrum(two_block_spectrum(table, L, 0)).bits};
  });
  return fit_k(samples, range);
}

EntropyValue model_entropy(const ModelParams& params, double k_const, std::int64_t L,
                           std::int64_t d) {
  const double a = params.alpha;
  if (!(a > 0.0 && a < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (d < 0) throw DomainError("d must be >= 0");
  const double x = static_cast<double>(L);
  if (x <= a) throw DomainError("model requires L > alpha");
  const double y = static_cast<double>(d);
  const double beta = 12.0 * k_const;
  return {ModelParams::kSlope * (2.0 * log2d(x - a) - 2.0 * log2d(x + y) +
                                 log2d(2.0 * x + y - a) + log2d(y + a) + beta)};
}

double k_of_l(double k_const, double alpha, std::int64_t L) {
  const double x = static_cast<double>(L);
  return k_const + kSixth * std::log2(1.0 - alpha / (2.0 * x)) +
         (1.0 / 3.0) * std::log2(1.0 - alpha / x);
}

double k_of_l_expansion(double k_const, double alpha, std::int64_t L) {
  const double u = alpha / static_cast<double>(L);
  return k_const -
         (5.0 / 12.0 * u + 3.0 / 16.0 * u * u + 17.0 / 144.0 * u * u * u) / std::numbers::ln2;
}

double cc_asymptote(std::int64_t L, std::int64_t d, double k_const) {
  if (L < 1 || d < 1) throw DomainError("cc_asymptote requires L >= 1 and d >= 1");
  const double x = static_cast<double>(L);
  const double y = static_cast<double>(d);
  return kSixth * (2.0 * log2d(x) - 2.0 * log2d(x + y) + log2d(2.0 * x + y) + log2d(y)) +
         2.0 * k_const;
}

double delta_s(double alpha, std::int64_t L) {
  if (L < 1) throw DomainError("L must be >= 1");
  const double x = static_cast<double>(L);
  return kSixth * (-2.0 * log2d((x + 1.0) / x) + log2d((2.0 * x + 1.0 - alpha) / (2.0 * x - alpha)) +
                   log2d((1.0 + alpha) / alpha));
}

double delta_s_limit(double alpha) { return kSixth * log2d((1.0 + alpha) / alpha); }

}  // namespace ising
