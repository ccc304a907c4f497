#include "blcap/bloic.hpp"

#include <cmath>
#include <mutex>

#include "blcap/errors.hpp"
#include "blcap/numerics.hpp"

namespace blcap {

using num::kE;
using num::kPi;

namespace {

void check_mean_monotone() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    double prev = num::exp_family_mean(-60.0);
    for (int i = 1; i <= 480; ++i) {
      const double mu = -60.0 + i * 0.25;
      const double v = num::exp_family_mean(mu == 0.0 ? 1e-9 : mu);
      if (v > prev)
        throw Error("exponential-family mean is not monotone");
      prev = v;
    }
  });
}

double mu_lhs(double r, double S) { return (2.0 * S - r * S + r) / (2.0 * r); }

}  // namespace

double solve_mu(double r, double S) {
  if (!(r > 2.0)) throw RegimeError("mu solve requires r > 2");
  const double lhs = mu_lhs(r, S);
  if (!(lhs > 0.0) || !(lhs < 1.0))
    throw DegenerateBoundError(
        "exponential-family mean equation has no solution");
  check_mean_monotone();
  // The mean is 1/2 at mu = 0 and decreasing, so the sign of mu follows
  // from which side of 1/2 the left side lies on.
  double lo, hi;
  if (lhs < 0.5) {
    lo = 1e-12;
    hi = 8.0;
    while (num::exp_family_mean(hi) > lhs) {
      hi *= 2.0;
      if (hi > 1e12) break;
    }
  } else if (lhs > 0.5) {
    hi = -1e-12;
    lo = -8.0;
    while (num::exp_family_mean(lo) < lhs) {
      lo *= 2.0;
      if (lo < -1e12) break;
    }
  } else {
    return 0.0;
  }
  // exp_family_mean decreases, so negate to hand bisect a rising function.
  return num::bisect_to_ulp(
      [](double mu) { return -num::exp_family_mean(mu); }, lo, hi, -lhs);
}

BloicBound eta_bloic(double r, const PulseMetrics& metrics) {
  if (metrics.diverged)
    throw DivergedPulseError("peak functional diverges for this pulse");
  if (metrics.normalization != Normalization::Area)
    throw NormalizationMismatchError(
        "optical-intensity bound needs area-normalized metrics");
  if (!(r > 0.0)) throw ConfigError("papr constraint must be positive");

  const double S = metrics.S;
  const double G = metrics.G;
  BloicBound bound;
  bound.S = S;
  bound.G = G;
  const double base = G * r * r / (2.0 * kPi * kE * S * S);
  if (r <= 2.0) {
    bound.regime = BloicRegime::Uniform;
    bound.eta = base;
    return bound;
  }
  bound.regime = BloicRegime::ExpFamily;
  const double lhs = mu_lhs(r, S);
  if (!(lhs > 0.0)) {
    // Required symbol mean falls outside the admissible interval: the
    // construction breaks down and the bound carries no information.
    bound.degenerate = true;
    bound.eta = 0.0;
    return bound;
  }
  const double mu = solve_mu(r, S);
  bound.mu = mu;
  bound.mu_residual = std::abs(num::exp_family_mean(mu) - lhs);
  // ((e^mu - 1)/(mu e^mu))^2 = ((1 - e^-mu)/mu)^2, evaluated in logs so
  // large mu (reached already at moderate r for S near 1) cannot overflow.
  const double log_eta = std::log(base) +
                         2.0 * num::log_one_minus_exp_over(mu) +
                         (2.0 * lhs) * mu;
  bound.eta = std::exp(log_eta);
  return bound;
}

double bloic_lower_rate(double bandwidth_hz, double osnr,
                        const BloicBound& b) {
  if (!(osnr > 0.0)) throw ConfigError("osnr must be positive");
  return bandwidth_hz * std::log2(1.0 + b.eta * osnr * osnr);
}

}  // namespace blcap
