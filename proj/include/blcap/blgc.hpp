#ifndef BLCAP_BLGC_HPP
#define BLCAP_BLGC_HPP

#include <optional>

#include "blcap/metrics.hpp"

namespace blcap {

/// Peak-to-average power ratio constraint; +inf means average-power only.
struct PaprConstraint {
  double r = 1.0;
  static PaprConstraint infinite();
  bool is_infinite() const;
};

enum class BlgcRegime { TruncGaussian, Uniform };

/// Pre-SNR factor of the achievable-rate lower bound, with the maxentropic
/// internals: the truncation parameter lambda, the symbol variance ratio,
/// and the input differential entropy (nats, average power normalized to 1).
struct BlgcBound {
  double eta = 0.0;
  BlgcRegime regime = BlgcRegime::Uniform;
  std::optional<double> lambda;           // present in the truncated regime
  std::optional<double> sigma_sq_over_P;  // present in the truncated regime
  double entropy_nats = 0.0;
  double lambda_residual = 0.0;  // relative residual of the lambda equation
};

/// Unique lambda > 0 with r/(2 S^2) = lambda^2 + 2 lambda^3 /
/// (sqrt(pi) erf(lambda) e^{lambda^2} - 2 lambda). Requires r/S^2 > 3;
/// bracketing bisection against the monotone right-hand side (monotonicity
/// is checked once at startup rather than assumed).
double solve_lambda(double r, double S);

/// Pre-SNR factor for the PAPR-constrained bandlimited Gaussian channel.
/// Truncated-Gaussian branch for r/S^2 > 3, uniform branch otherwise;
/// r = +inf returns eta = G (the fixed-pulse limit).
BlgcBound eta_blgc(PaprConstraint papr, const PulseMetrics& metrics);

/// W log2(1 + eta snr) bits/second.
double blgc_lower_rate(double bandwidth_hz, double snr, const BlgcBound& b);

/// Peak-power-only specialization: 2 G / (pi e S^2).
double pp_blgc_eta(const PulseMetrics& metrics);

}  // namespace blcap

#endif  // BLCAP_BLGC_HPP
