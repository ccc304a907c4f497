#ifndef BLCAP_OPTIMIZE_HPP
#define BLCAP_OPTIMIZE_HPP

#include <optional>
#include <vector>

#include "blcap/blgc.hpp"
#include "blcap/bloic.hpp"
#include "blcap/metrics.hpp"

namespace blcap {

enum class Channel { Blgc, Bloic };

const char* channel_name(Channel channel);
std::optional<Channel> channel_from_name(std::string_view name);

/// Normalization the channel's bound formulas expect.
Normalization channel_normalization(Channel channel);

/// Pre-SNR (pre-OSNR) factor of the channel's lower bound for the pulse
/// behind `metrics`; 0 when the bound degenerates.
double eta_for(Channel channel, const PulseMetrics& metrics, double r);

/// Families the optical-intensity sweeps admit.
bool family_admitted(Channel channel, PulseFamily family);

/// Roll-off grid {step, 2 step, ..., 1}; step must divide (0, 1] exactly.
std::vector<double> beta_grid(double step);

struct BetaOptResult {
  double beta = 0.0;
  double eta = 0.0;
};

/// Exhaustive roll-off grid search maximizing eta at fixed r; ties break
/// toward the smaller roll-off. Metrics are memoized per (family, beta).
BetaOptResult optimize_beta(PulseFamily family, Channel channel, double r,
                            double step, MetricsCache& cache);

/// One point of the monotone optimized envelope: the best bound over all
/// candidate pulses and over every constraint level up to r.
struct EnvelopePoint {
  double r = 0.0;
  double eta_opt = 0.0;
  PulseFamily family = PulseFamily::S2;
  std::optional<double> beta;
  double achieved_at_r = 0.0;
};

/// max over pulses of max_{r' <= r} eta(r') along an ascending r grid. The
/// inner maximization scans the grid points plus a golden-section refined
/// interior peak per candidate pulse (the optical bounds can peak between
/// grid points).
std::vector<EnvelopePoint> envelope(Channel channel,
                                    const std::vector<PulseFamily>& families,
                                    const std::vector<double>& r_grid,
                                    double beta_step, MetricsCache& cache);

}  // namespace blcap

#endif  // BLCAP_OPTIMIZE_HPP
