#ifndef BLCAP_BLOIC_HPP
#define BLCAP_BLOIC_HPP

#include <optional>

#include "blcap/metrics.hpp"

namespace blcap {

enum class BloicRegime { ExpFamily, Uniform };

/// Pre-OSNR factor of the optical-intensity lower bound. `degenerate` is
/// set when the exponential-family mean equation has no solution (possible
/// for pulses with S > 1 once r >= 2S/(S-1)); the bound then carries no
/// information and eta is reported as 0.
struct BloicBound {
  double eta = 0.0;
  BloicRegime regime = BloicRegime::Uniform;
  std::optional<double> mu;  // present in the exponential-family regime
  double S = 0.0;
  double G = 0.0;
  double mu_residual = 0.0;
  bool degenerate = false;
};

/// Unique mu with (2S - rS + r)/(2r) = 1/mu - 1/(e^mu - 1). Requires r > 2;
/// throws DegenerateBoundError when the left side leaves the range (0, 1).
double solve_mu(double r, double S);

/// Pre-OSNR factor per the exponential-family/uniform branch split at
/// r = 2. Metrics must be area-normalized.
BloicBound eta_bloic(double r, const PulseMetrics& metrics);

/// W log2(1 + eta osnr^2) bits/second.
double bloic_lower_rate(double bandwidth_hz, double osnr, const BloicBound& b);

}  // namespace blcap

#endif  // BLCAP_BLOIC_HPP
