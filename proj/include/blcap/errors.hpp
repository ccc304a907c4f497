#ifndef BLCAP_ERRORS_HPP
#define BLCAP_ERRORS_HPP

#include <stdexcept>

namespace blcap {

/// Base type for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Pulse construction rejected (bad family/roll-off combination).
struct InvalidPulseError : Error { using Error::Error; };

/// Time-domain evaluation requested for a family without a closed time form.
struct UnsupportedFamilyError : Error { using Error::Error; };

/// Area normalization requested for a pulse with zero DC spectral value.
struct ZeroAreaError : Error { using Error::Error; };

/// Sampled synthesis failed its doubling self-consistency check.
struct ResolutionTooCoarseError : Error { using Error::Error; };

/// A bound was requested for a pulse whose peak functional diverges.
struct DivergedPulseError : Error { using Error::Error; };

/// Spectrum vanishes on a set of positive measure inside the band.
struct SpectralZeroInteriorError : Error { using Error::Error; };

/// Parameter solve requested outside its regime (wrong side of the branch).
struct RegimeError : Error { using Error::Error; };

/// The exponential-family mean equation has no solution (bound degenerates).
struct DegenerateBoundError : Error { using Error::Error; };

/// Metrics were computed under the wrong normalization for this bound.
struct NormalizationMismatchError : Error { using Error::Error; };

/// Roll-off optimization requested for a family without a roll-off.
struct NonParametricFamilyError : Error { using Error::Error; };

/// Iterative solver hit its iteration cap before meeting tolerance.
struct NotConvergedError : Error { using Error::Error; };

/// Doubling the input grid moved the answer by more than allowed.
struct GridTooCoarseError : Error { using Error::Error; };

/// Invalid run configuration (CLI or sweep setup).
struct ConfigError : Error { using Error::Error; };

}  // namespace blcap

#endif  // BLCAP_ERRORS_HPP
