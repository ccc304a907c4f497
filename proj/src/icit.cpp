#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <mutex>
#include <vector>

#include "blcap/errors.hpp"
#include "blcap/pulses.hpp"
#include "icit_synth.hpp"

namespace blcap {

namespace {

std::mutex g_fftw_mutex;  // FFTW planning is not thread-safe

// Lagrange weights for 8 equidistant nodes 0..7 evaluated at x in [3, 4].
void lagrange8_weights(double x, double w[8]) {
  static const double denom[8] = {-5040.0, 720.0,  -240.0, 144.0,
                                  -144.0,  240.0,  -720.0, 5040.0};
  double diff[8];
  for (int j = 0; j < 8; ++j) {
    diff[j] = x - j;
    if (diff[j] == 0.0) {
      for (int m = 0; m < 8; ++m) w[m] = (m == j) ? 1.0 : 0.0;
      return;
    }
  }
  double prod = 1.0;
  for (int j = 0; j < 8; ++j) prod *= diff[j];
  for (int j = 0; j < 8; ++j) w[j] = prod / (diff[j] * denom[j]);
}

// Full inverse synthesis: returns M = span*oversample time samples with
// index n holding g(n dt) for n < M/2 and g((n - M) dt) above (FFT wrap).
std::vector<double> synth(double beta, double scale, double span,
                          int oversample) {
  const std::size_t M =
      static_cast<std::size_t>(std::llround(span)) * oversample;
  const double df = 1.0 / span;
  const std::size_t nin = M / 2 + 1;
  fftw_complex* in = fftw_alloc_complex(nin);
  double* out = fftw_alloc_real(M);
  if (!in || !out) {
    if (in) fftw_free(in);
    if (out) fftw_free(out);
    throw Error("fftw allocation failed");
  }
  const std::size_t kband =
      std::min(nin - 1, static_cast<std::size_t>(Pulse::kW / df) + 1);
  for (std::size_t k = 0; k < nin; ++k) {
    in[k][0] = k <= kband ? scale * icit_spectrum(k * df, beta) : 0.0;
    in[k][1] = 0.0;
  }
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    plan = fftw_plan_dft_c2r_1d(static_cast<int>(M), in, out, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    fftw_destroy_plan(plan);
  }
  std::vector<double> g(M);
  for (std::size_t n = 0; n < M; ++n) g[n] = df * out[n];
  fftw_free(in);
  fftw_free(out);
  return g;
}

// Interpolate the wrapped synthesis output at time t (|t| well inside the
// span).
double interp_wrapped(const std::vector<double>& g, int oversample, double t) {
  const double dt = 1.0 / oversample;
  const std::ptrdiff_t M = static_cast<std::ptrdiff_t>(g.size());
  const double u = t / dt;
  const std::ptrdiff_t i0 = static_cast<std::ptrdiff_t>(std::floor(u));
  double w[8];
  lagrange8_weights(u - i0 + 3.0, w);
  double sum = 0.0;
  for (int j = 0; j < 8; ++j) {
    std::ptrdiff_t idx = (i0 - 3 + j) % M;
    if (idx < 0) idx += M;
    sum += w[j] * g[idx];
  }
  return sum;
}

}  // namespace

double icit_spectrum(double f, double beta) {
  f = std::abs(f);
  if (f > Pulse::kW) return 0.0;
  const double x1 = 0.5 * (1.0 - beta) / (1.0 + beta);
  if (f <= x1) return 1.0;
  const double k = std::tan(1.0) * (1.0 + beta) / beta;
  static const double gamma = std::acos(std::atan(0.5 * std::tan(1.0)));
  const double x2 = 0.5 / (1.0 + beta);
  if (f <= x2) {
    const double a = std::min(1.0, std::atan(k * (Pulse::kW - f)));
    return 1.0 - std::acos(a) / (2.0 * gamma);
  }
  const double a = std::min(1.0, std::atan(k * (f - x1)));
  return std::acos(a) / (2.0 * gamma);
}

std::shared_ptr<const Pulse::SampleTable> icit_build_table(double beta,
                                                           double scale) {
  constexpr double kSpan = 131072.0;  // 2^17 spectral samples over the band
  constexpr int kOversample = 32;
  constexpr double kHalf = 32768.0;
  const std::vector<double> full = synth(beta, scale, kSpan, kOversample);
  const std::ptrdiff_t M = static_cast<std::ptrdiff_t>(full.size());
  const std::ptrdiff_t nh = static_cast<std::ptrdiff_t>(kHalf) * kOversample;
  auto table = std::make_shared<Pulse::SampleTable>();
  table->dt = 1.0 / kOversample;
  table->t_half = kHalf;
  table->g.resize(2 * nh + 1);
  double peak = 0.0;
  for (std::ptrdiff_t j = 0; j <= 2 * nh; ++j) {
    std::ptrdiff_t n = j - nh;
    if (n < 0) n += M;
    table->g[j] = full[n];
    peak = std::max(peak, std::abs(full[n]));
  }
  table->peak = peak;
  return table;
}

double icit_interpolate(const Pulse::SampleTable& table, double t) {
  const double u = (t + table.t_half) / table.dt;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(table.g.size());
  const std::ptrdiff_t i0 = static_cast<std::ptrdiff_t>(std::floor(u));
  if (i0 < 3 || i0 + 5 >= n) return 0.0;
  double w[8];
  lagrange8_weights(u - i0 + 3.0, w);
  double sum = 0.0;
  const double* base = table.g.data() + (i0 - 3);
  for (int j = 0; j < 8; ++j) sum += w[j] * base[j];
  return sum;
}

SampledPulse icit_time_samples(const Pulse& pulse, double t_max, double dt) {
  if (pulse.family() != PulseFamily::ICIT)
    throw UnsupportedFamilyError("time sampling applies to icit only");
  if (!(dt > 0.0) || dt > 0.25 * Pulse::kTs + 1e-12)
    throw ConfigError("sample spacing must be at most Ts/4");
  if (!(t_max >= 64.0 * Pulse::kTs))
    throw ConfigError("sample window must cover at least 64 Ts");
  const double beta = *pulse.rolloff();
  const double scale = pulse.scale();
  double span = 65536.0;
  while (span < 8.0 * t_max) span *= 2.0;
  const int os = 32;
  const std::vector<double> coarse = synth(beta, scale, span, os);
  const std::vector<double> fine = synth(beta, scale, 2.0 * span, os);

  SampledPulse result;
  const std::size_t half = static_cast<std::size_t>(std::llround(t_max / dt));
  result.t_max = half * dt;
  result.dt = dt;
  result.samples.resize(2 * half + 1);
  double err = 0.0, peak = 0.0;
  for (std::size_t k = 0; k < result.samples.size(); ++k) {
    const double t = (static_cast<double>(k) - static_cast<double>(half)) * dt;
    const double a = interp_wrapped(coarse, os, t);
    const double b = interp_wrapped(fine, os, t);
    result.samples[k] = a;
    err = std::max(err, std::abs(a - b));
    peak = std::max(peak, std::abs(a));
  }
  result.error_estimate = err;
  result.peak = peak;
  if (err > 1e-6 * peak)
    throw ResolutionTooCoarseError(
        "sampled synthesis failed its doubling self-check");
  return result;
}

}  // namespace blcap
