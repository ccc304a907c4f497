#include "blcap/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "blcap/errors.hpp"
#include "blcap/numerics.hpp"

namespace blcap {

const char* channel_name(Channel channel) {
  return channel == Channel::Blgc ? "blgc" : "bloic";
}

std::optional<Channel> channel_from_name(std::string_view name) {
  if (name == "blgc") return Channel::Blgc;
  if (name == "bloic") return Channel::Bloic;
  return std::nullopt;
}

Normalization channel_normalization(Channel channel) {
  return channel == Channel::Blgc ? Normalization::Energy
                                  : Normalization::Area;
}

double eta_for(Channel channel, const PulseMetrics& metrics, double r) {
  if (channel == Channel::Blgc) return eta_blgc(PaprConstraint{r}, metrics).eta;
  return eta_bloic(r, metrics).eta;
}

bool family_admitted(Channel channel, PulseFamily family) {
  if (channel == Channel::Blgc) return true;
  // Optical sweeps mirror the evaluated set; the raised-cosine and
  // parametric-linear pulses stay on the Gaussian side.
  return family == PulseFamily::S2 || family == PulseFamily::SC ||
         family == PulseFamily::BTN || family == PulseFamily::ICIT;
}

std::vector<double> beta_grid(double step) {
  const double count = 1.0 / step;
  const long n = std::lround(count);
  if (!(step > 0.0) || std::abs(count - static_cast<double>(n)) > 1e-9)
    throw ConfigError("roll-off step must divide (0, 1] exactly");
  std::vector<double> grid(n);
  for (long j = 1; j <= n; ++j) {
    double b = static_cast<double>(j) * step;
    if (std::abs(b - 1.0) < 1e-12) b = 1.0;
    grid[j - 1] = b;
  }
  return grid;
}

BetaOptResult optimize_beta(PulseFamily family, Channel channel, double r,
                            double step, MetricsCache& cache) {
  if (!family_is_parametric(family))
    throw NonParametricFamilyError("family has no roll-off to optimize");
  const Normalization norm = channel_normalization(channel);
  BetaOptResult best{0.0, -1.0};
  for (double b : beta_grid(step)) {
    const PulseMetrics& m = cache.get(family, b, norm);
    const double eta = eta_for(channel, m, r);
    if (eta > best.eta) best = {b, eta};  // strict: ties keep the smaller b
  }
  return best;
}

namespace {

struct Candidate {
  PulseFamily family;
  std::optional<double> beta;
};

// Best eta at or below r_hi for one pulse: grid evaluations plus a
// golden-section pass around the best coarse cell of a log-spaced scan.
struct InnerMax {
  double eta = 0.0;
  double at_r = 0.0;
};

InnerMax interior_peak(Channel channel, const PulseMetrics& m, double r_lo,
                       double r_hi) {
  const double llo = std::log(r_lo), lhi = std::log(r_hi);
  constexpr int kCoarse = 64;
  int best = 0;
  double best_eta = -1.0;
  for (int i = 0; i < kCoarse; ++i) {
    const double r = std::exp(llo + (lhi - llo) * i / (kCoarse - 1));
    const double eta = eta_for(channel, m, r);
    if (eta > best_eta) {
      best_eta = eta;
      best = i;
    }
  }
  const double la = llo + (lhi - llo) * std::max(0, best - 1) / (kCoarse - 1);
  const double lb =
      llo + (lhi - llo) * std::min(kCoarse - 1, best + 1) / (kCoarse - 1);
  auto [lr, eta] = num::golden_max(
      [&](double l) { return eta_for(channel, m, std::exp(l)); }, la, lb,
      1e-10);
  if (eta >= best_eta) return {eta, std::exp(lr)};
  return {best_eta, std::exp(llo + (lhi - llo) * best / (kCoarse - 1))};
}

}  // namespace

std::vector<EnvelopePoint> envelope(Channel channel,
                                    const std::vector<PulseFamily>& families,
                                    const std::vector<double>& r_grid,
                                    double beta_step, MetricsCache& cache) {
  if (families.empty()) throw ConfigError("families list is empty");
  if (r_grid.empty()) throw ConfigError("r grid is empty");
  for (std::size_t i = 1; i < r_grid.size(); ++i)
    if (!(r_grid[i] >= r_grid[i - 1]))
      throw ConfigError("r grid must be sorted ascending");
  for (PulseFamily f : families)
    if (!family_admitted(channel, f))
      throw ConfigError("family not admitted for this channel");

  std::vector<Candidate> candidates;
  for (PulseFamily f : families) {
    if (family_is_parametric(f))
      for (double b : beta_grid(beta_step)) candidates.push_back({f, b});
    else
      candidates.push_back({f, std::nullopt});
  }

  const Normalization norm = channel_normalization(channel);
  const double r_hi = r_grid.back();
  const double r_lo = std::min(0.5, r_grid.front());

  // Candidate-level records: (r', eta') pairs covering the grid and the
  // refined interior peak, so the running max over r' <= r is exact on
  // the evaluated set.
  struct Record {
    double r, eta;
    const Candidate* cand;
  };
  std::vector<Record> records;
  for (const Candidate& cand : candidates) {
    const PulseMetrics& m = cache.get(cand.family, cand.beta, norm);
    if (m.diverged) continue;
    for (double r : r_grid)
      records.push_back({r, eta_for(channel, m, r), &cand});
    const InnerMax peak = interior_peak(channel, m, r_lo, r_hi);
    records.push_back({peak.at_r, peak.eta, &cand});
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const Record& a, const Record& b) { return a.r < b.r; });

  std::vector<EnvelopePoint> out;
  out.reserve(r_grid.size());
  std::size_t idx = 0;
  EnvelopePoint running;
  running.eta_opt = -1.0;
  for (double r : r_grid) {
    while (idx < records.size() && records[idx].r <= r) {
      const Record& rec = records[idx];
      if (rec.eta > running.eta_opt) {
        running.eta_opt = rec.eta;
        running.family = rec.cand->family;
        running.beta = rec.cand->beta;
        running.achieved_at_r = rec.r;
      }
      ++idx;
    }
    EnvelopePoint pt = running;
    pt.r = r;
    out.push_back(pt);
  }
  return out;
}

}  // namespace blcap
