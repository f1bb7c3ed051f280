#include "gpr/transform.hpp"

#include "gpr/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gpr {

std::pair<SpinField, TransformSpec> to_spin_angles(const GridField& sample, const ObservationMask& mask) {
  const GridDims dims(sample.cols(), sample.rows());
  validate_mask(mask, dims);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < sample.size(); ++i) {
    if (mask.data()[i]) {
      const double z = sample.data()[i];
      if (!std::isfinite(z)) {
        throw RangeError("non-finite observed value at site " + std::to_string(i));
      }
      lo = std::min(lo, z);
      hi = std::max(hi, z);
    }
  }
  if (!(hi > lo)) {
    throw DegenerateRangeError("observed sample is constant (" + std::to_string(lo) + ")");
  }

  const TransformSpec spec{lo, hi};
  SpinField spins{mask.select(to_angles(sample, spec), kUnsetAngle), mask};
  // Pin the endpoints exactly so rounding never leaves [0, 2pi].
  spins.angles = mask.select(spins.angles.max(0.0).min(kTwoPi), kUnsetAngle);
  return {std::move(spins), spec};
}

GridField from_spin_angles(const SpinField& spins, const TransformSpec& spec) {
  GridField out(spins.angles.rows(), spins.angles.cols());
  for (Index i = 0; i < out.size(); ++i) {
    double phi = spins.angles.data()[i];
    if (std::isnan(phi)) {
      out.data()[i] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    if (phi < -kAngleTolerance || phi > kTwoPi + kAngleTolerance) {
      throw RangeError("angle " + std::to_string(phi) + " at site " + std::to_string(i) +
                       " is outside [0, 2pi]");
    }
    phi = std::clamp(phi, 0.0, kTwoPi);
    out.data()[i] = spec.z_min + phi * (spec.range() / kTwoPi);
  }
  return out;
}

} // namespace gpr
