#ifndef BLCAP_ICIT_SYNTH_HPP
#define BLCAP_ICIT_SYNTH_HPP

#include <memory>

#include "blcap/pulses.hpp"

namespace blcap {

/// Piecewise spectral definition at canonical W = 1/2, pre-scale. The
/// normalization constant of the roll-off pieces is pinned by continuity
/// at the mid-roll-off breakpoint (the flat and falling pieces must meet).
double icit_spectrum(double f, double beta);

/// Inverse-synthesize the canonical sample table: spectral spacing 2^-16
/// (2^16 samples across the band), time spacing T_s/64, window 16384 T_s.
std::shared_ptr<const Pulse::SampleTable> icit_build_table(double beta,
                                                           double scale);

/// 8-point Lagrange interpolation on the 64x-oversampled table; returns 0
/// outside the window.
double icit_interpolate(const Pulse::SampleTable& table, double t);

}  // namespace blcap

#endif  // BLCAP_ICIT_SYNTH_HPP
