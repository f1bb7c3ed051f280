#ifndef GPR_TRANSFORM_HPP
#define GPR_TRANSFORM_HPP

#include "gpr/grid.hpp"

#include <limits>
#include <numbers>
#include <utility>

namespace gpr {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Angle value carried by missing sites until they are initialised.
inline constexpr double kUnsetAngle = std::numeric_limits<double>::quiet_NaN();

/// Tolerance when accepting angles slightly outside [0, 2pi] for back-transformation.
inline constexpr double kAngleTolerance = 1e-9;

/// Linear map between data units and spin angles, [z_min, z_max] -> [0, 2pi].
template <typename Scalar>
struct BasicTransformSpec {
  Scalar z_min;
  Scalar z_max;

  Scalar range() const noexcept { return z_max - z_min; }
};

using TransformSpec = BasicTransformSpec<double>;

template <typename Derived, typename Scalar>
auto to_angles(const Eigen::ArrayBase<Derived>& z, const BasicTransformSpec<Scalar>& spec) {
  return (z - spec.z_min) * (Scalar(kTwoPi) / spec.range());
}

template <typename Derived, typename Scalar>
auto to_values(const Eigen::ArrayBase<Derived>& phi, const BasicTransformSpec<Scalar>& spec) {
  return spec.z_min + phi * (spec.range() / Scalar(kTwoPi));
}

struct SpinField {
  GridField angles;
  ObservationMask mask;

  GridDims dims() const { return GridDims(angles.cols(), angles.rows()); }
};

/// Maps the observed part of a sample to angles using the observed min and max.
/// Missing sites carry kUnsetAngle. Throws DegenerateRangeError on a constant sample.
std::pair<SpinField, TransformSpec> to_spin_angles(const GridField& sample, const ObservationMask& mask);

/// Inverse map of every site; unset angles map to NaN. Throws RangeError for
/// angles outside [0, 2pi] by more than kAngleTolerance.
GridField from_spin_angles(const SpinField& spins, const TransformSpec& spec);

} // namespace gpr

#endif // GPR_TRANSFORM_HPP
