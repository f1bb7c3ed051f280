#ifndef GPR_METRICS_HPP
#define GPR_METRICS_HPP

#include "gpr/grid.hpp"

#include <Eigen/Core>

#include <span>
#include <string_view>

namespace gpr {

struct MetricSet {
  double aae = 0.0;  ///< mean |e|
  double are = 0.0;  ///< mean e / Z
  double aare = 0.0; ///< mean |e| / Z
  double rase = 0.0; ///< sqrt(mean e^2)
};

enum class Metric { aae, are, aare, rase };

double value(const MetricSet& m, Metric metric) noexcept;
std::string_view to_string(Metric metric) noexcept;
Metric parse_metric(std::string_view name);

/// Errors e = Z - Zhat over the prediction sites. Throws DomainError listing
/// the positions where Z is zero.
MetricSet compute_metrics(const Eigen::Ref<const Eigen::ArrayXd>& truth,
                          const Eigen::Ref<const Eigen::ArrayXd>& predicted);

/// Metrics over the missing sites of `mask`.
MetricSet compute_metrics(const GridField& truth, const GridField& predicted, const ObservationMask& mask);

/// Component-wise mean over sample configurations.
MetricSet aggregate(std::span<const MetricSet> sets);

} // namespace gpr

#endif // GPR_METRICS_HPP
