#pragma once

#include <cstdint>

#include "risgeo/types.hpp"

namespace risgeo {

/// Gamma moment match of one Rayleigh-product channel eta = alpha beta:
///   k = pi^2 / (16 - pi^2),  delta = 2 pi / ((16 - pi^2) sigma),  sigma = sigma1 sigma2.
/// delta is a rate parameter: Gamma(k, rate delta) has mean sigma pi / 2 and
/// variance sigma^2 (16 - pi^2) / 4, matching the product's first two moments.
MomentMatch moment_match(const FadingParams& fading, int n_eff = 1);

/// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s),
/// series expansion for x < s + 1 and continued fraction otherwise.
/// Absolute error <= 1e-12 for s <= 500. Throws std::domain_error for
/// s <= 0 or x < 0.
double reg_lower_incomplete_gamma(double s, double x);

/// Inverse of P(s, .) by bisection: the x with P(s, x) = p.
double inverse_reg_lower_incomplete_gamma(double s, double p);

/// Closed-form outage probability
///   P_out = P(k n_eff, delta sqrt(rho_th / rho_bar)).
/// Throws std::domain_error for n_eff < 1, mean_snr <= 0, or rho_th < 0.
double outage_probability(const MomentMatch& mm, int n_eff, double mean_snr,
                          double rho_th);

OutageCurve outage_curve(const MomentMatch& mm, int n_eff, double mean_snr,
                         const std::vector<double>& thresholds);

/// Monte-Carlo fading oracle: empirical frequency of A^2 rho_bar <= rho_th
/// with A the sum of n_eff independent Rayleigh(sigma1) x Rayleigh(sigma2)
/// products. Deterministic for a fixed seed; samples are drawn in fixed-size
/// shards whose streams depend only on (seed, shard index).
double monte_carlo_outage(int n_eff, const FadingParams& fading, double mean_snr,
                          double rho_th, std::uint64_t samples, std::uint64_t seed);

/// Same sampling pass evaluated against a whole threshold grid at once.
OutageCurve monte_carlo_outage_curve(int n_eff, const FadingParams& fading,
                                     double mean_snr,
                                     const std::vector<double>& thresholds,
                                     std::uint64_t samples, std::uint64_t seed);

/// Sample moments of the fading draws, pinning the Rayleigh scale convention
/// (E[alpha^2] = 2 sigma1^2) and the product mean E[alpha beta] = sigma pi/2.
struct FadingSampleStats {
    double mean_product = 0.0;
    double mean_alpha_sq = 0.0;
};
FadingSampleStats sample_fading_stats(const FadingParams& fading,
                                      std::uint64_t samples, std::uint64_t seed);

}  // namespace risgeo
