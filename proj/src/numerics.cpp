#include "blcap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blcap::num {

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = kPi * x;
  return std::sin(px) / px;
}

namespace {

// Gauss-Kronrod 7/15 pair on [-1, 1] (QUADPACK abscissae).
constexpr double kKronrodX[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkResult {
  double value;
  double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kKronrodX[i]);
    fv[14 - i] = f(c + h * kKronrodX[i]);
  }
  fv[7] = f(c);
  double kron = 0.0;
  for (int i = 0; i < 7; ++i) kron += kKronrodW[i] * (fv[i] + fv[14 - i]);
  kron += kKronrodW[7] * fv[7];
  // Gauss points are the odd Kronrod abscissae.
  double gauss = kGaussW[3] * fv[7];
  for (int i = 0; i < 3; ++i)
    gauss += kGaussW[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  const double diff = std::abs(kron - gauss) * h;
  const double err = std::min(diff, 200.0 * diff * std::sqrt(diff + 1e-300));
  return {kron * h, err};
}

void integrate_rec(const std::function<double(double)>& f, double a, double b,
                   double tol, int depth, double* sum, double* errsum) {
  const GkResult r = gk15(f, a, b);
  if (r.error <= tol || depth >= 48 || b - a < 1e-15 * (std::abs(a) + 1.0)) {
    *sum += r.value;
    *errsum += r.error;
    return;
  }
  const double m = 0.5 * (a + b);
  integrate_rec(f, a, m, 0.5 * tol, depth + 1, sum, errsum);
  integrate_rec(f, m, b, 0.5 * tol, depth + 1, sum, errsum);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, double* err_out) {
  double sum = 0.0, err = 0.0;
  if (a != b) integrate_rec(f, a, b, tol, 0, &sum, &err);
  if (err_out) *err_out = err;
  return sum;
}

GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration from the Chebyshev-based initial guess.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return rule;
}

double integrate_composite(const std::function<double(double)>& f, double a,
                           double b, int panels, const GaussRule& rule) {
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double c = lo + 0.5 * h;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * f(c + 0.5 * h * rule.nodes[i]);
    sum += 0.5 * h * s;
  }
  return sum;
}

double bisect_to_ulp(const std::function<double(double)>& f, double lo,
                     double hi, double target) {
  double flo = f(lo) - target;
  double fhi = f(hi) - target;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("bisect_to_ulp: endpoints do not bracket");
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) return mid;
    const double fm = f(mid) - target;
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
}

std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double a, double b, double tol) {
  const double invphi = 0.6180339887498948482;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  if (fm >= f1 && fm >= f2) return {xm, fm};
  return f1 >= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

double erf_exp_deficit(double lambda) {
  const double l2 = lambda * lambda;
  if (lambda < 0.7) {
    // 2 sum_{n>=1} (2 l^2)^n l / (2n+1)!!, all terms positive.
    double term = 4.0 * l2 * lambda / 3.0;
    double sum = term;
    for (int n = 1; n < 64; ++n) {
      term *= 2.0 * l2 / (2.0 * n + 3.0);
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return sum;
  }
  const double sqrt_pi = std::sqrt(kPi);
  return sqrt_pi * std::erf(lambda) * std::exp(l2) - 2.0 * lambda;
}

double exp_family_mean(double mu) {
  if (std::abs(mu) < 0.05) {
    const double m2 = mu * mu;
    return 0.5 - mu / 12.0 + mu * m2 / 720.0 - mu * m2 * m2 / 30240.0;
  }
  if (mu > 708.0) return 1.0 / mu;  // 1/(e^mu - 1) underflows
  return 1.0 / mu - 1.0 / std::expm1(mu);
}

double log_one_minus_exp_over(double mu) {
  if (mu == 0.0) return 0.0;
  if (mu > 0.0) {
    // log(1 - e^{-mu}) - log(mu)
    const double l1 = mu > 37.0 ? -std::exp(-mu) : std::log1p(-std::exp(-mu));
    return l1 - std::log(mu);
  }
  // (1 - e^{-mu})/mu = expm1(-mu)/(-mu), both factors positive.
  const double m = -mu;
  const double le = m > 700.0 ? m : std::log(std::expm1(m));
  return le - std::log(m);
}

namespace {

TailFit fit_from_points(const std::vector<double>& xs,
                        const std::vector<double>& ys) {
  TailFit fit;
  const int used = static_cast<int>(xs.size());
  if (used < 4) {
    fit.c = 0.0;
    fit.p = 2.0;
    return fit;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < used; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = used * sxx - sx * sx;
  const double slope = (used * sxy - sx * sy) / denom;
  const double icept = (sy - slope * sx) / used;
  fit.p = std::clamp(-slope, 1.05, 4.5);
  fit.c = std::exp(icept);
  double rss = 0.0;
  for (int i = 0; i < used; ++i) {
    const double r = ys[i] - (icept + slope * xs[i]);
    rss += r * r;
  }
  fit.rms_log_residual = std::sqrt(rss / used);
  return fit;
}

}  // namespace

TailFit fit_power_tail(const std::function<double(double)>& abs_g, double lo,
                       double hi) {
  constexpr int kBlocks = 40;
  constexpr int kPerBlock = 24;
  const double ratio = std::pow(hi / lo, 1.0 / kBlocks);
  std::vector<double> xs, ys;
  for (int b = 0; b < kBlocks; ++b) {
    const double a = lo * std::pow(ratio, b);
    const double w = a * (ratio - 1.0);
    double mean = 0.0;
    for (int j = 0; j < kPerBlock; ++j)
      mean += abs_g(a + w * (j + 0.5) / kPerBlock);
    mean /= kPerBlock;
    if (!(mean > 0.0)) continue;
    xs.push_back(std::log(a + 0.5 * w));
    ys.push_back(std::log(mean));
  }
  return fit_from_points(xs, ys);
}

TailFit fit_power_tail_integers(const std::function<double(double)>& abs_g,
                                double lo, double hi) {
  constexpr int kBlocks = 32;
  const double ratio = std::pow(hi / lo, 1.0 / kBlocks);
  std::vector<double> xs, ys;
  for (int b = 0; b < kBlocks; ++b) {
    const long a = std::lround(lo * std::pow(ratio, b));
    const long e = std::max(a + 1, std::lround(lo * std::pow(ratio, b + 1)));
    double mean = 0.0;
    long count = 0;
    for (long i = a; i < e; ++i, ++count) mean += abs_g(static_cast<double>(i));
    mean /= static_cast<double>(count);
    if (!(mean > 0.0)) continue;
    xs.push_back(std::log(0.5 * static_cast<double>(a + e - 1)));
    ys.push_back(std::log(mean));
  }
  return fit_from_points(xs, ys);
}

double power_tail_sum(const TailFit& fit, double n) {
  if (fit.c <= 0.0) return 0.0;
  return fit.c * std::pow(n + 0.5, 1.0 - fit.p) / (fit.p - 1.0);
}

}  // namespace blcap::num
