#include "gpr/metrics.hpp"

#include "gpr/error.hpp"

#include <cmath>
#include <string>

namespace gpr {

double value(const MetricSet& m, Metric metric) noexcept {
  switch (metric) {
  case Metric::aae:
    return m.aae;
  case Metric::are:
    return m.are;
  case Metric::aare:
    return m.aare;
  case Metric::rase:
    return m.rase;
  }
  return 0.0;
}

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
  case Metric::aae:
    return "MAAE";
  case Metric::are:
    return "MARE";
  case Metric::aare:
    return "MAARE";
  case Metric::rase:
    return "MRASE";
  }
  return "";
}

Metric parse_metric(std::string_view name) {
  if (name == "MAAE" || name == "AAE") {
    return Metric::aae;
  }
  if (name == "MARE" || name == "ARE") {
    return Metric::are;
  }
  if (name == "MAARE" || name == "AARE") {
    return Metric::aare;
  }
  if (name == "MRASE" || name == "RASE") {
    return Metric::rase;
  }
  throw ConfigurationError("unknown metric '" + std::string(name) + "'");
}

MetricSet compute_metrics(const Eigen::Ref<const Eigen::ArrayXd>& truth,
                          const Eigen::Ref<const Eigen::ArrayXd>& predicted) {
  if (truth.size() != predicted.size()) {
    throw DimensionError("truth has " + std::to_string(truth.size()) + " values, predictions " +
                         std::to_string(predicted.size()));
  }
  if (truth.size() == 0) {
    throw DimensionError("metrics need at least one prediction site");
  }
  std::string zeros;
  for (Index i = 0; i < truth.size(); ++i) {
    if (truth[i] == 0.0) {
      zeros += (zeros.empty() ? "" : ", ") + std::to_string(i);
    }
  }
  if (!zeros.empty()) {
    throw DomainError("relative errors undefined where the true value is zero (positions " + zeros + ")");
  }

  const Eigen::ArrayXd e = truth - predicted;
  const double n = static_cast<double>(e.size());
  MetricSet m;
  m.aae = e.abs().sum() / n;
  m.are = (e / truth).sum() / n;
  m.aare = (e.abs() / truth).sum() / n;
  m.rase = std::sqrt(e.square().sum() / n);
  return m;
}

MetricSet compute_metrics(const GridField& truth, const GridField& predicted, const ObservationMask& mask) {
  const std::vector<Index> sites = missing_sites(mask);
  Eigen::ArrayXd z(static_cast<Index>(sites.size()));
  Eigen::ArrayXd zhat(static_cast<Index>(sites.size()));
  for (std::size_t k = 0; k < sites.size(); ++k) {
    z[static_cast<Index>(k)] = truth.data()[sites[k]];
    zhat[static_cast<Index>(k)] = predicted.data()[sites[k]];
  }
  return compute_metrics(z, zhat);
}

MetricSet aggregate(std::span<const MetricSet> sets) {
  if (sets.empty()) {
    throw ConfigurationError("cannot aggregate an empty list of metric sets");
  }
  MetricSet mean;
  for (const MetricSet& m : sets) {
    mean.aae += m.aae;
    mean.are += m.are;
    mean.aare += m.aare;
    mean.rase += m.rase;
  }
  const double n = static_cast<double>(sets.size());
  mean.aae /= n;
  mean.are /= n;
  mean.aare /= n;
  mean.rase /= n;
  return mean;
}

} // namespace gpr
