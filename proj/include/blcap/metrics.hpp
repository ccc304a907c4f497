#ifndef BLCAP_METRICS_HPP
#define BLCAP_METRICS_HPP

#include <map>
#include <mutex>
#include <optional>
#include <tuple>

#include "blcap/pulses.hpp"

namespace blcap {

/// Peak-superposition value S and spectral log-integral G of a normalized
/// pulse, with certified numerical error bounds. `diverged` marks pulses
/// whose shifted-sample sums have non-summable tails (the brick-wall sinc);
/// G is still meaningful then.
struct PulseMetrics {
  double S = 0.0;
  double G = 0.0;
  double S_error = 0.0;
  double G_error = 0.0;
  bool diverged = false;
  Normalization normalization = Normalization::Energy;
  PulseFamily family = PulseFamily::S2;
  std::optional<double> rolloff;
  double s_argmax_t = 0.0;  // phase in [0, T_s) attaining the peak sum
};

struct SResult {
  bool diverged = false;
  double value = 0.0;
  double error = 0.0;
  double argmax_t = 0.0;
};

struct GResult {
  double value = 0.0;
  double error = 0.0;
};

/// Max over one symbol interval of the absolute shifted-pulse sum: partial
/// sums over |i| <= N plus a fitted power-law tail estimate; N grows until
/// the tail estimate is negligible (or the sample window is exhausted for
/// the synthesized family). Divergence is detected by a Cauchy test on four
/// consecutive doublings of N.
SResult compute_S(const Pulse& pulse);

/// exp of the band-averaged log squared spectrum. Integrable log
/// singularities at spectral zeros are handled by a square-root
/// substitution; the propagated error bound is returned alongside.
GResult compute_G(const Pulse& pulse);

/// Both functionals packaged with the pulse identity.
PulseMetrics compute_metrics(const Pulse& pulse);

/// Thread-safe memo of metrics per (family, roll-off, normalization).
class MetricsCache {
 public:
  const PulseMetrics& get(PulseFamily family, std::optional<double> rolloff,
                          Normalization norm);

 private:
  using Key = std::tuple<int, long long, int>;
  std::map<Key, PulseMetrics> map_;
  std::mutex mutex_;
};

}  // namespace blcap

#endif  // BLCAP_METRICS_HPP
