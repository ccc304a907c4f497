#include "blcap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "blcap/errors.hpp"
#include "blcap/numerics.hpp"

namespace blcap {

namespace {

constexpr int kPhaseGrid = 4096;
constexpr long kLocateTerms = 512;
constexpr long kRefineTerms = 4096;
constexpr double kTailTarget = 1e-6;

struct AbsPulse {
  const Pulse* pulse;
  bool sampled;
  double window;  // largest |t| we may evaluate

  double operator()(double t) const {
    return std::abs(sampled ? pulse->sampled_time(t) : pulse->time(t));
  }
};

AbsPulse make_abs(const Pulse& pulse) {
  if (pulse.has_closed_time_form())
    return {&pulse, false, std::numeric_limits<double>::infinity()};
  const double half = pulse.sample_table().t_half;
  return {&pulse, true, half - 4.0};
}

// Sum_{|i| <= n} |g(t - i)|; resumable so the doubling ladder reuses work.
struct PartialSum {
  const AbsPulse& g;
  double t;
  long n = 0;
  double sum;

  PartialSum(const AbsPulse& g_in, double t_in)
      : g(g_in), t(t_in), sum(g_in(t_in)) {}

  void extend(long n_new) {
    for (long i = n + 1; i <= n_new; ++i)
      sum += g(t - i) + g(t + i);
    n = n_new;
  }
};

double partial_at(const AbsPulse& g, double t, long n) {
  double sum = g(t);
  for (long i = 1; i <= n; ++i) sum += g(t - i) + g(t + i);
  return sum;
}

bool diverges(const AbsPulse& g) {
  // Cauchy test on four consecutive doublings: a convergent 1/i^p tail
  // shrinks its increments by 2^(1-p) < 0.85; the sinc family's harmonic
  // tail keeps them level.
  const double t0 = 0.2371;
  PartialSum ps{g, t0};
  ps.extend(512);
  double prev_inc = -1.0;
  int level = 0;
  for (long n = 1024; n <= 16384; n *= 2) {
    const double before = ps.sum;
    ps.extend(n);
    const double inc = ps.sum - before;
    if (inc < 1e-14 * ps.sum) return false;
    if (prev_inc > 0.0 && inc / prev_inc >= 0.85)
      ++level;
    else if (prev_inc > 0.0)
      level = 0;
    prev_inc = inc;
  }
  return level >= 3;  // four doublings, three level-to-level ratios
}

num::TailFit fit_tail(const AbsPulse& g, double t, double lo, double hi) {
  auto both = [&](double u) { return g(t - u) + g(t + u); };
  return num::fit_power_tail_integers(both, lo, hi);
}

}  // namespace

SResult compute_S(const Pulse& pulse) {
  const AbsPulse g = make_abs(pulse);
  SResult result;
  if (pulse.family() == PulseFamily::S2) {
    // sinc^2 is nonnegative and the band stops inside the sampling rate,
    // so the shifted sum telescopes (Poisson) to the DC spectral value at
    // every phase. The generic path agrees to its tail certificate; this
    // form is exact, which the large-r optical limit needs.
    result.value = pulse.freq(0.0);
    result.error = 1e-14 * result.value;
    result.argmax_t = 0.0;
    return result;
  }
  if (diverges(g)) {
    result.diverged = true;
    result.value = std::numeric_limits<double>::quiet_NaN();
    result.error = std::numeric_limits<double>::quiet_NaN();
    return result;
  }

  const long cap = g.sampled
                       ? static_cast<long>(g.window) - 2
                       : (1L << 22);

  // Locate: coarse phase grid over one symbol interval.
  const long n_loc = std::min(kLocateTerms, cap);
  std::vector<double> grid(kPhaseGrid);
  for (int k = 0; k < kPhaseGrid; ++k)
    grid[k] = partial_at(g, static_cast<double>(k) / kPhaseGrid, n_loc);

  std::vector<int> order(kPhaseGrid);
  for (int k = 0; k < kPhaseGrid; ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return grid[a] > grid[b]; });
  std::vector<int> candidates;
  for (int k : order) {
    bool near = false;
    for (int c : candidates)
      if (std::abs(((k - c) % kPhaseGrid + kPhaseGrid) % kPhaseGrid) < 8 ||
          std::abs(((c - k) % kPhaseGrid + kPhaseGrid) % kPhaseGrid) < 8)
        near = true;
    if (!near) candidates.push_back(k);
    if (candidates.size() == 3) break;
  }

  // Refine each candidate cell to 1e-10 in t with a moderate term count,
  // then settle the best with the full doubling ladder.
  const long n_ref = std::min(kRefineTerms, cap);
  double best_t = 0.0, best_val = -1.0;
  std::vector<std::pair<double, double>> refined;
  for (int c : candidates) {
    const double tc = static_cast<double>(c) / kPhaseGrid;
    const double h = 1.5 / kPhaseGrid;
    auto [t_star, val] = num::golden_max(
        [&](double t) { return partial_at(g, t, n_ref); }, tc - h, tc + h,
        1e-10);
    refined.emplace_back(t_star, val);
    if (val > best_val) {
      best_val = val;
      best_t = t_star;
    }
  }

  double out_value = -1.0, out_error = 0.0, out_t = 0.0;
  for (auto [t_star, val] : refined) {
    if (val < best_val - 1e-6 * std::abs(best_val)) continue;
    PartialSum ps{g, t_star};
    ps.extend(n_ref);
    double tail = 0.0;
    for (long n = ps.n;; n *= 2) {
      if (n > ps.n) ps.extend(std::min(n, cap));
      const num::TailFit fit =
          fit_tail(g, t_star, static_cast<double>(ps.n) / 10.0,
                   static_cast<double>(ps.n));
      tail = num::power_tail_sum(fit, static_cast<double>(ps.n));
      if (tail < kTailTarget * ps.sum || ps.n >= cap) break;
    }
    const double s = ps.sum + tail;
    if (s > out_value) {
      out_value = s;
      out_error = 0.5 * tail + 1e-12 * s;
      out_t = t_star;
    }
  }

  result.value = out_value;
  result.error = out_error;
  result.argmax_t = out_t - std::floor(out_t);
  return result;
}

namespace {

// log |ghat(f)|^2 with the interior-zero trip wire.
double log_sq_spectrum(const Pulse& pulse, double f) {
  const double v = pulse.freq(f);
  if (v <= 0.0) {
    if (f < Pulse::kW - 1e-12)
      throw SpectralZeroInteriorError(
          "spectrum vanishes inside the band; G degenerates");
    return -1400.0;  // band-edge guard; reached only at measure-zero nodes
  }
  return 2.0 * std::log(v);
}

}  // namespace

GResult compute_G(const Pulse& pulse) {
  if (pulse.family() == PulseFamily::SINC) {
    // Flat spectrum: the integrand is log(scale^2) identically.
    const double s = pulse.scale();
    return {1.0, std::abs(4.0 * std::log(s)) + 1e-15};
  }

  std::vector<double> cuts = pulse.spectral_breakpoints();
  cuts.insert(cuts.begin(), 0.0);
  cuts.push_back(Pulse::kW);

  constexpr double kPieceTol = 3e-11;
  double integral = 0.0, err_total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (b - a < 1e-15) continue;
    const bool last = (i + 2 == cuts.size());
    const bool cusp_left = pulse.has_rolloff_cusp() && i == 1;
    double err = 0.0;
    if (last) {
      // f = b - u^2 tames the log zero (and the ICIT root cusp) at the edge.
      const double umax = std::sqrt(b - a);
      integral += num::integrate(
          [&](double u) { return 2.0 * u * log_sq_spectrum(pulse, b - u * u); },
          0.0, umax, kPieceTol, &err);
    } else if (cusp_left) {
      const double umax = std::sqrt(b - a);
      integral += num::integrate(
          [&](double u) { return 2.0 * u * log_sq_spectrum(pulse, a + u * u); },
          0.0, umax, kPieceTol, &err);
    } else {
      integral += num::integrate(
          [&](double f) { return log_sq_spectrum(pulse, f); }, a, b, kPieceTol,
          &err);
    }
    err_total += err;
  }

  // G = exp((1/W) * integral) with W = 1/2.
  const double value = std::exp(2.0 * integral);
  const double error = value * (2.0 * err_total) + 1e-15 * value;
  return {value, error};
}

PulseMetrics compute_metrics(const Pulse& pulse) {
  PulseMetrics m;
  m.family = pulse.family();
  m.rolloff = pulse.rolloff();
  m.normalization = pulse.normalization();
  const GResult gr = compute_G(pulse);
  m.G = gr.value;
  m.G_error = gr.error;
  const SResult sr = compute_S(pulse);
  m.diverged = sr.diverged;
  m.S = sr.value;
  m.S_error = sr.error;
  m.s_argmax_t = sr.argmax_t;
  return m;
}

const PulseMetrics& MetricsCache::get(PulseFamily family,
                                      std::optional<double> rolloff,
                                      Normalization norm) {
  const Key key{static_cast<int>(family),
                rolloff ? std::llround(*rolloff * 1e6) : -1,
                static_cast<int>(norm)};
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
  }
  PulseMetrics m = rolloff
                       ? compute_metrics(Pulse(family, *rolloff, norm))
                       : compute_metrics(Pulse(family, norm));
  std::lock_guard<std::mutex> lock(mutex_);
  return map_.emplace(key, std::move(m)).first->second;
}

}  // namespace blcap
