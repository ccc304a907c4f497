#ifndef BLCAP_PULSES_HPP
#define BLCAP_PULSES_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace blcap {

enum class PulseFamily { S2, SC, RC, PL, BTN, ICIT, SINC };
enum class Normalization { Energy, Area };

const char* family_name(PulseFamily family);
std::optional<PulseFamily> family_from_name(std::string_view name);
bool family_is_parametric(PulseFamily family);

const char* normalization_name(Normalization norm);
std::optional<Normalization> normalization_from_name(std::string_view name);

/// Channel-level symbols: one-sided bandwidth W (Hz) and noise spectral
/// density N0. Pulse shapes are fixed to the canonical W = 1/2 internally
/// (T_s = 1, 2W = 1); rates are scaled by the caller's W when reported.
struct ChannelParams {
  double bandwidth_hz = 1.0;
  double noise_density = 1.0;
};

/// A shaping pulse with roll-off and normalization, evaluated in time and
/// frequency at the canonical bandwidth W = 1/2. Construction computes the
/// normalization scale numerically (energy mode: integral of g^2 equals 1;
/// area mode: integral of g equals 1); the object is immutable afterwards
/// and safe to share between threads. The ICIT family is defined spectrally
/// only; its time samples come from inverse Fourier synthesis.
class Pulse {
 public:
  /// Non-parametric families (S2, SC, SINC).
  Pulse(PulseFamily family, Normalization norm);
  /// Parametric families (RC, PL, BTN, ICIT); rolloff in [0.01, 1].
  Pulse(PulseFamily family, double rolloff, Normalization norm);

  PulseFamily family() const { return family_; }
  Normalization normalization() const { return norm_; }
  std::optional<double> rolloff() const { return rolloff_; }

  /// Normalization scale applied on top of the textbook closed form.
  double scale() const { return scale_; }

  bool has_closed_time_form() const { return family_ != PulseFamily::ICIT; }

  /// g(t). Removable singularities are resolved to their limits.
  /// Throws UnsupportedFamilyError for ICIT.
  double time(double t) const;

  /// Spectral amplitude: even in f, identically zero for |f| > 1/2.
  double freq(double f) const;

  /// Interior breakpoints of the piecewise spectrum on (0, W).
  std::vector<double> spectral_breakpoints() const;

  /// True when the spectrum has a square-root cusp at the breakpoint
  /// entering the roll-off (ICIT); integrators grade their mesh there.
  bool has_rolloff_cusp() const { return family_ == PulseFamily::ICIT; }

  /// Synthesized uniform samples for the spectral-only family, spacing
  /// dt = T_s/64, covering |t| <= t_half(). Includes the normalization.
  struct SampleTable {
    double dt = 0.0;
    double t_half = 0.0;
    std::vector<double> g;  // index j holds g((j - nh) dt), nh = t_half/dt
    double peak = 0.0;
  };
  const SampleTable& sample_table() const;

  /// g(t) from the sample table by local interpolation (ICIT only,
  /// |t| < t_half; used by the metrics layer).
  double sampled_time(double t) const;

  static constexpr double kW = 0.5;   // canonical one-sided bandwidth
  static constexpr double kTs = 1.0;  // Nyquist interval 1/(2W)

 private:
  void init();
  double time_base(double t) const;  // pre-scale closed form
  double freq_base(double f) const;  // pre-scale spectrum

  PulseFamily family_;
  Normalization norm_;
  std::optional<double> rolloff_;
  double scale_ = 1.0;
  std::shared_ptr<const SampleTable> table_;  // ICIT only

  friend struct PulseTestAccess;
};

/// Uniform time samples of the spectral-only pulse over [-t_max, t_max]
/// with an aliasing/truncation certificate from a doubled synthesis.
struct SampledPulse {
  double t_max = 0.0;
  double dt = 0.0;
  std::vector<double> samples;   // 2*round(t_max/dt) + 1 values
  double error_estimate = 0.0;   // max change under grid doubling
  double peak = 0.0;
};
SampledPulse icit_time_samples(const Pulse& pulse, double t_max, double dt);

}  // namespace blcap

#endif  // BLCAP_PULSES_HPP
