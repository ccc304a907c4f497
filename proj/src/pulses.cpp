#include "blcap/pulses.hpp"

#include <cmath>

#include "blcap/errors.hpp"
#include "blcap/numerics.hpp"
#include "icit_synth.hpp"

namespace blcap {

using num::kPi;

const char* family_name(PulseFamily family) {
  switch (family) {
    case PulseFamily::S2: return "s2";
    case PulseFamily::SC: return "sc";
    case PulseFamily::RC: return "rc";
    case PulseFamily::PL: return "pl";
    case PulseFamily::BTN: return "btn";
    case PulseFamily::ICIT: return "icit";
    case PulseFamily::SINC: return "sinc";
  }
  return "?";
}

std::optional<PulseFamily> family_from_name(std::string_view name) {
  for (PulseFamily f : {PulseFamily::S2, PulseFamily::SC, PulseFamily::RC,
                        PulseFamily::PL, PulseFamily::BTN, PulseFamily::ICIT,
                        PulseFamily::SINC})
    if (name == family_name(f)) return f;
  return std::nullopt;
}

bool family_is_parametric(PulseFamily family) {
  return family == PulseFamily::RC || family == PulseFamily::PL ||
         family == PulseFamily::BTN || family == PulseFamily::ICIT;
}

const char* normalization_name(Normalization norm) {
  return norm == Normalization::Energy ? "energy" : "area";
}

std::optional<Normalization> normalization_from_name(std::string_view name) {
  if (name == "energy") return Normalization::Energy;
  if (name == "area") return Normalization::Area;
  return std::nullopt;
}

namespace {

// cos(pi u / 2) / (1 - u^2), limit pi/4 at |u| = 1. Shared by the RC
// denominator zero and the SC half-integer points.
double cos_over_one_minus_sq(double u) {
  const double au = std::abs(u);
  const double eps = au - 1.0;
  if (std::abs(eps) < 1e-6) {
    // sin(pi eps/2) / (eps (2 + eps)) expanded to O(eps^2)
    const double s = 0.5 * kPi * (1.0 - (kPi * eps) * (kPi * eps) / 24.0);
    return s / (2.0 + eps);
  }
  return std::cos(0.5 * kPi * u) / (1.0 - u * u);
}

// Roll-off shapes H(nu) of the unit-interval Nyquist designs; flat value 1
// for |nu| <= (1-beta)/2, zero beyond (1+beta)/2.
double rc_shape(double nu, double beta) {
  nu = std::abs(nu);
  const double lo = 0.5 * (1.0 - beta);
  const double hi = 0.5 * (1.0 + beta);
  if (nu <= lo) return 1.0;
  if (nu >= hi) return 0.0;
  // Half-angle form of (1 + cos)/2: keeps full precision at the edge,
  // where the raw cosine saturates to -1.
  const double c = std::cos(0.5 * kPi * (nu - lo) / beta);
  return c * c;
}

double pl_shape(double nu, double beta) {
  nu = std::abs(nu);
  const double lo = 0.5 * (1.0 - beta);
  const double hi = 0.5 * (1.0 + beta);
  if (nu <= lo) return 1.0;
  if (nu >= hi) return 0.0;
  return (hi - nu) / beta;
}

double btn_shape(double nu, double beta) {
  nu = std::abs(nu);
  const double lo = 0.5 * (1.0 - beta);
  const double hi = 0.5 * (1.0 + beta);
  if (nu <= lo) return 1.0;
  if (nu >= hi) return 0.0;
  if (nu <= 0.5) return std::exp2((1.0 - 2.0 * nu) / beta - 1.0);
  // 1 - 2^e with e <= 0, via expm1 so the edge zero stays resolved.
  const double e = (2.0 * nu - 1.0) / beta - 1.0;
  return -std::expm1(e * std::log(2.0));
}

}  // namespace

Pulse::Pulse(PulseFamily family, Normalization norm)
    : family_(family), norm_(norm) {
  if (family_is_parametric(family))
    throw InvalidPulseError("pulse family requires a roll-off parameter");
  init();
}

Pulse::Pulse(PulseFamily family, double rolloff, Normalization norm)
    : family_(family), norm_(norm), rolloff_(rolloff) {
  if (!family_is_parametric(family))
    throw InvalidPulseError("pulse family does not take a roll-off");
  if (!(rolloff >= 0.01 && rolloff <= 1.0))
    throw InvalidPulseError("roll-off must lie in [0.01, 1]");
  init();
}

void Pulse::init() {
  if (norm_ == Normalization::Area) {
    const double dc = freq_base(0.0);
    if (std::abs(dc) < 1e-14) throw ZeroAreaError("pulse has zero area");
    scale_ = 1.0 / dc;  // integral of g equals ghat(0), target 1/(2W) = 1
  } else {
    // Parseval: energy = 2 * int_0^W ghat^2. Piece splits keep the
    // quadrature honest at spectral kinks.
    std::vector<double> cuts = spectral_breakpoints();
    cuts.insert(cuts.begin(), 0.0);
    cuts.push_back(kW);
    double energy = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i + 1] - cuts[i] < 1e-15) continue;
      energy += 2.0 * num::integrate(
                          [this](double f) {
                            const double v = freq_base(f);
                            return v * v;
                          },
                          cuts[i], cuts[i + 1], 1e-13);
    }
    scale_ = 1.0 / std::sqrt(energy);
  }
  if (family_ == PulseFamily::ICIT)
    table_ = icit_build_table(*rolloff_, scale_);
}

double Pulse::time_base(double t) const {
  switch (family_) {
    case PulseFamily::S2: {
      const double s = num::sinc(0.5 * t);
      return 0.5 * std::sqrt(3.0) * s * s;
    }
    case PulseFamily::SC:
      return 4.0 * std::sqrt(2.0) / kPi * cos_over_one_minus_sq(2.0 * t);
    case PulseFamily::RC: {
      const double b = *rolloff_;
      const double x = t / (1.0 + b);
      const double c = 2.0 / std::sqrt(-b * b + 3.0 * b + 4.0);
      return c * num::sinc(x) * cos_over_one_minus_sq(2.0 * b * x);
    }
    case PulseFamily::PL: {
      const double b = *rolloff_;
      const double x = t / (1.0 + b);
      const double c = std::sqrt(3.0 / (-b * b + 2.0 * b + 3.0));
      return c * num::sinc(x) * num::sinc(b * x);
    }
    case PulseFamily::BTN: {
      const double b = *rolloff_;
      const double x = t / (1.0 + b);
      const double c = std::sqrt(1.0 / (-0.36 * b * b + 0.64 * b + 1.0));
      const double gx = kPi * b / std::log(2.0) * x;
      const double th = kPi * b * x;
      const double q =
          (2.0 * gx * std::sin(th) + 2.0 * std::cos(th) - 1.0) /
          (gx * gx + 1.0);
      return c * num::sinc(x) * q;
    }
    case PulseFamily::SINC:
      return num::sinc(t);
    case PulseFamily::ICIT:
      break;
  }
  throw UnsupportedFamilyError("no closed time form for this family");
}

double Pulse::freq_base(double f) const {
  f = std::abs(f);
  if (f > kW) return 0.0;
  switch (family_) {
    case PulseFamily::S2:
      return std::sqrt(3.0) * (1.0 - 2.0 * f);
    case PulseFamily::SC:
      return 2.0 * std::sqrt(2.0) * std::cos(kPi * f);
    case PulseFamily::RC: {
      const double b = *rolloff_;
      const double c = 2.0 / std::sqrt(-b * b + 3.0 * b + 4.0);
      return c * (1.0 + b) * rc_shape(f * (1.0 + b), b);
    }
    case PulseFamily::PL: {
      const double b = *rolloff_;
      const double c = std::sqrt(3.0 / (-b * b + 2.0 * b + 3.0));
      return c * (1.0 + b) * pl_shape(f * (1.0 + b), b);
    }
    case PulseFamily::BTN: {
      const double b = *rolloff_;
      const double c = std::sqrt(1.0 / (-0.36 * b * b + 0.64 * b + 1.0));
      return c * (1.0 + b) * btn_shape(f * (1.0 + b), b);
    }
    case PulseFamily::ICIT:
      return icit_spectrum(f, *rolloff_);
    case PulseFamily::SINC:
      return 1.0;
  }
  return 0.0;
}

double Pulse::time(double t) const {
  if (family_ == PulseFamily::ICIT)
    throw UnsupportedFamilyError("icit has no closed time form");
  return scale_ * time_base(t);
}

double Pulse::freq(double f) const { return scale_ * freq_base(f); }

std::vector<double> Pulse::spectral_breakpoints() const {
  std::vector<double> cuts;
  if (family_ == PulseFamily::RC || family_ == PulseFamily::PL ||
      family_ == PulseFamily::BTN || family_ == PulseFamily::ICIT) {
    const double b = *rolloff_;
    const double x1 = 0.5 * (1.0 - b) / (1.0 + b);
    const double x2 = 0.5 / (1.0 + b);
    if (x1 > 1e-12) cuts.push_back(x1);
    if (x2 < kW - 1e-12) cuts.push_back(x2);
  }
  return cuts;
}

const Pulse::SampleTable& Pulse::sample_table() const {
  if (!table_)
    throw UnsupportedFamilyError("sample table exists for icit only");
  return *table_;
}

double Pulse::sampled_time(double t) const {
  const SampleTable& tab = sample_table();
  return icit_interpolate(tab, t);
}

}  // namespace blcap
