#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "ising/spectral.hpp"

namespace ising {

struct EntropySample {
  std::int64_t L = 0;
  double bits = 0.0;  ///< S(L, 0) = S_{2L}
};

/// Logarithmic fit of the critical single-block constant.
struct FitResult {
  double k_const = 0.0;       ///< K (bits)
  double alpha = 0.0;         ///< 2^{-6K}
  double beta = 0.0;          ///< 12 K
  double correction = 0.0;    ///< fitted c_1 of the c_1 / L nuisance term
  double slope_fitted = 0.0;  ///< free-slope diagnostic; close to 1/6
  double residual_max = 0.0;  ///< max |data - fit| of the fixed-slope fit
  std::pair<std::int64_t, std::int64_t> fit_range{0, 0};
};

/// Least squares S(L, 0) = (1/6) log2(2L) + K + c_1 / L over samples with
/// L in [l_min, l_max]. Throws InsufficientData when l_max < 4 l_min or a
/// value of L in the range is missing.
FitResult fit_k(std::span<const EntropySample> samples, std::pair<std::int64_t, std::int64_t> range);

/// Computes S(L, 0) at lambda = 1 for L in [l_min, l_max] (in parallel when
/// `threads` > 1) and fits.
FitResult fit_k_critical(std::pair<std::int64_t, std::int64_t> range, unsigned threads = 1);

struct ModelParams {
  double alpha = 0.0;
  static constexpr double kSlope = 1.0 / 6.0;

  static ModelParams from_fit(const FitResult& fit) { return {fit.alpha}; }
};

/// (1/6)[2 log2(L-a) - 2 log2(L+d) + log2(2L+d-a) + log2(d+a) + beta] with
/// beta = 12 K. Since a = 2^{-6K}, beta equals -2 log2 a.
/// Throws DomainError when L <= alpha.
EntropyValue model_entropy(const ModelParams& params, double k_const, std::int64_t L,
                           std::int64_t d);

/// K(L) = K + (1/6) log2(1 - a/2L) + (1/3) log2(1 - a/L).
double k_of_l(double k_const, double alpha, std::int64_t L);

/// Three-term large-L expansion of k_of_l; natural-log coefficients
/// 5/12, 3/16, 17/144 divided by ln 2.
double k_of_l_expansion(double k_const, double alpha, std::int64_t L);

/// (1/6)[2 log2 L - 2 log2(L+d) + log2(2L+d) + log2 d] + 2K. Requires d >= 1.
double cc_asymptote(std::int64_t L, std::int64_t d, double k_const);

/// Model S(L, 1) - S(L, 0).
double delta_s(double alpha, std::int64_t L);

/// L -> infinity limit of delta_s: (1/6) log2((1 + a) / a).
double delta_s_limit(double alpha);

}  // namespace ising
