#ifndef BLCAP_NUMERICS_HPP
#define BLCAP_NUMERICS_HPP

#include <functional>
#include <utility>
#include <vector>

namespace blcap::num {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kE = 2.718281828459045235360287471352662498;

/// sin(pi x)/(pi x) with the removable singularity at x = 0 resolved.
double sinc(double x);

/// Adaptive Gauss-Kronrod 7/15 quadrature of f over [a, b] to absolute
/// tolerance tol. err_out, when given, receives the accumulated estimate.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, double* err_out = nullptr);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

/// Composite fixed-order Gauss-Legendre over [a, b] with equal panels.
double integrate_composite(const std::function<double(double)>& f, double a,
                           double b, int panels, const GaussRule& rule);

/// Bisection on monotone f until the bracket collapses to adjacent doubles.
/// f(lo) - target and f(hi) - target must have opposite signs (or be zero).
double bisect_to_ulp(const std::function<double(double)>& f, double lo,
                     double hi, double target);

/// Golden-section maximization of f on [a, b]; returns (argmax, max).
std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double a, double b, double tol);

/// sqrt(pi) erf(l) exp(l^2) - 2 l. The direct expression cancels
/// catastrophically near zero; for small l an all-positive series is used.
double erf_exp_deficit(double lambda);

/// 1/mu - 1/(e^mu - 1): mean of the exponential family on the unit
/// interval. Strictly decreasing from 1 (mu -> -inf) to 0 (mu -> +inf),
/// value 1/2 at mu = 0 (series branch avoids cancellation there).
double exp_family_mean(double mu);

/// log((1 - e^{-mu}) / mu) for mu != 0; limit 0 as mu -> 0.
double log_one_minus_exp_over(double mu);

/// Least-squares power-law fit |g|(t) ~ c * t^-p over [lo, hi] using
/// block-averaged samples (averaging washes out the sidelobe oscillation).
struct TailFit {
  double c = 0.0;
  double p = 2.0;
  double rms_log_residual = 0.0;
};
TailFit fit_power_tail(const std::function<double(double)>& abs_g, double lo,
                       double hi);

/// Same fit restricted to integer abscissae. Shifted-pulse sums sample the
/// sidelobe oscillation at integer lags, which aliases differently from the
/// continuous envelope; a tail model for such sums must be fitted on the
/// same measure.
TailFit fit_power_tail_integers(const std::function<double(double)>& abs_g,
                                double lo, double hi);

/// Sum_{i > n} c i^-p via midpoint Euler-Maclaurin.
double power_tail_sum(const TailFit& fit, double n);

}  // namespace blcap::num

#endif  // BLCAP_NUMERICS_HPP
