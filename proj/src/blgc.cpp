#include "blcap/blgc.hpp"

#include <cmath>
#include <limits>
#include <mutex>

#include "blcap/errors.hpp"
#include "blcap/numerics.hpp"

namespace blcap {

using num::kE;
using num::kPi;

PaprConstraint PaprConstraint::infinite() {
  return {std::numeric_limits<double>::infinity()};
}

bool PaprConstraint::is_infinite() const { return std::isinf(r); }

namespace {

// Right-hand side of the lambda equation; exact value 3/2 in the limit
// lambda -> 0. Beyond lambda^2 ~ 700 the deficit term is far below double
// range and the curve is lambda^2 to machine precision.
double lambda_rhs(double lambda) {
  const double l2 = lambda * lambda;
  if (l2 > 700.0) return l2;
  const double d = num::erf_exp_deficit(lambda);
  return l2 + 2.0 * l2 * lambda / d;
}

void check_lambda_rhs_monotone() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    double prev = lambda_rhs(1e-3);
    for (int i = 1; i <= 400; ++i) {
      const double l = 1e-3 * std::pow(30.0 / 1e-3, i / 400.0);
      const double v = lambda_rhs(l);
      if (v < prev)
        throw Error("lambda equation right-hand side is not monotone");
      prev = v;
    }
  });
}

}  // namespace

double solve_lambda(double r, double S) {
  const double u = r / (S * S);
  if (!(u > 3.0))
    throw RegimeError("lambda solve requires r/S^2 > 3 (uniform regime)");
  check_lambda_rhs_monotone();
  const double target = 0.5 * u;
  const double hi = std::max(10.0, std::sqrt(target) + 5.0);
  return num::bisect_to_ulp(lambda_rhs, 1e-8, hi, target);
}

BlgcBound eta_blgc(PaprConstraint papr, const PulseMetrics& metrics) {
  if (metrics.diverged)
    throw DivergedPulseError("peak functional diverges for this pulse");
  if (metrics.normalization != Normalization::Energy)
    throw NormalizationMismatchError(
        "Gaussian-channel bound needs energy-normalized metrics");
  const double S = metrics.S;
  const double G = metrics.G;

  BlgcBound bound;
  if (papr.is_infinite()) {
    // Average-power-only limit: the bound saturates at G for a fixed pulse.
    bound.eta = G;
    bound.regime = BlgcRegime::TruncGaussian;
    bound.entropy_nats = 0.5 * std::log(2.0 * kPi * kE);
    return bound;
  }
  const double r = papr.r;
  if (!(r > 0.0)) throw ConfigError("papr constraint must be positive");

  if (r / (S * S) > 3.0) {
    const double lambda = solve_lambda(r, S);
    const double l2 = lambda * lambda;
    bound.regime = BlgcRegime::TruncGaussian;
    bound.lambda = lambda;
    bound.lambda_residual =
        std::abs(lambda_rhs(lambda) - 0.5 * r / (S * S)) /
        std::max(1.0, 0.5 * r / (S * S));
    const double sigma_sq = r / (2.0 * l2 * S * S);
    bound.sigma_sq_over_P = sigma_sq;
    const double log_erf = std::log(std::erf(lambda));
    const double log_eta = std::log(G) + std::log(r) -
                           std::log(2.0 * kE * l2 * S * S) + 2.0 * log_erf +
                           2.0 * l2 * S * S / r;
    bound.eta = std::exp(log_eta);
    bound.entropy_nats = 0.5 * (std::log(2.0 * kPi) + std::log(sigma_sq) +
                                2.0 * log_erf + 1.0 / sigma_sq);
  } else {
    bound.regime = BlgcRegime::Uniform;
    bound.eta = 2.0 * G * r / (kPi * kE * S * S);
    bound.entropy_nats = std::log(2.0 * std::sqrt(r) / S);
  }
  return bound;
}

double blgc_lower_rate(double bandwidth_hz, double snr, const BlgcBound& b) {
  if (!(snr > 0.0)) throw ConfigError("snr must be positive");
  return bandwidth_hz * std::log2(1.0 + b.eta * snr);
}

double pp_blgc_eta(const PulseMetrics& metrics) {
  if (metrics.diverged)
    throw DivergedPulseError("peak functional diverges for this pulse");
  return 2.0 * metrics.G / (kPi * kE * metrics.S * metrics.S);
}

}  // namespace blcap
