#ifndef GPR_BIAS_HPP
#define GPR_BIAS_HPP

#include "gpr/energy.hpp"
#include "gpr/transform.hpp"

#include <memory>
#include <string>

namespace gpr {

struct BiasInterpolation {
  BiasField field;
  /// Sites whose interpolated angle fell outside [0, 2pi] and was clamped.
  Index clamped = 0;
};

/// Source of the smooth bias field h. Output is defined at every site and
/// equals the observed angle exactly at observed sites.
class BiasProvider {
public:
  virtual ~BiasProvider() = default;
  virtual BiasInterpolation interpolate(const SpinField& sample_angles) const = 0;
  virtual std::string name() const = 0;
};

/// Fills missing sites by minimizing the squared discrete Laplacian over the
/// grid with observed sites held fixed, i.e. a discrete biharmonic fill.
/// Linear functions are reproduced exactly. Requires at least 4 observed sites.
class BiharmonicInpainter final : public BiasProvider {
public:
  BiasInterpolation interpolate(const SpinField& sample_angles) const override;
  std::string name() const override { return "biharmonic"; }
};

/// Unclamped biharmonic fill of an arbitrary field; observed entries are kept.
GridField biharmonic_fill(const GridField& values, const ObservationMask& mask);

const BiasProvider& default_bias_provider();

BiasField interpolate_bias(const SpinField& sample_angles, const BiasProvider& provider = default_bias_provider());

/// Interpolation-only predictor: the back-transformed bias field at missing
/// sites, NaN at observed sites.
GridField pure_bias_predict(const GridField& sample, const ObservationMask& mask,
                            const BiasProvider& provider = default_bias_provider());

} // namespace gpr

#endif // GPR_BIAS_HPP
