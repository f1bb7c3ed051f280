#ifndef GPR_HARNESS_HPP
#define GPR_HARNESS_HPP

#include "gpr/energy.hpp"
#include "gpr/metrics.hpp"
#include "gpr/sampler.hpp"
#include "gpr/synthdata.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace gpr {

/// Counter-based seed derivation (splitmix64 chain). Distinct inputs give
/// statistically independent streams.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) noexcept;

enum class Axis { T, n, alpha_inv, J_nn, J_fn, K, K_prime };

std::string to_string(Axis axis);
Axis parse_axis(const std::string& name);

/// Sets one swept parameter. n = +inf selects the infinite series,
/// alpha_inv = 0 selects alpha = inf, K switches to bias mode and K_prime to
/// uniform mode.
void apply_axis(ModelParams& params, Axis axis, double value);

struct SweepAxis {
  Axis axis;
  std::vector<double> values;
};

/// 16 log-spaced temperatures in [0.001, 0.2].
std::vector<double> default_temperatures();

struct DataSpec {
  Index lx = 64;
  Index ly = 64;
  WmSpec wm{};
  int n_modes = kDefaultModes;
  /// Draw a new field for every configuration instead of one shared field.
  bool redraw_per_config = false;
};

struct SweepConfig {
  DataSpec data{};
  MaskSpec mask{};
  int S = 1;
  ModelParams fixed_params{};
  std::vector<SweepAxis> sweep_axes;
  McSchedule schedule{};
  std::uint64_t master_seed = 0;
  /// Also score the interpolation-only predictor on every configuration.
  bool include_bc_baseline = false;

  void validate() const;
  GridDims dims() const { return GridDims(data.lx, data.ly); }
  std::size_t cell_count() const;
};

/// Seeds of configuration s: field, mask, and the Monte Carlo chain of cell (i, j).
std::uint64_t field_seed(const SweepConfig& config, int s);
std::uint64_t mask_seed(const SweepConfig& config, int s);
std::uint64_t row_seed(const SweepConfig& config, std::size_t i, std::size_t j);
std::uint64_t cell_seed(const SweepConfig& config, int s, std::size_t i, std::size_t j);

struct Configuration {
  GridField truth;
  ObservationMask mask;
};

/// Truth field and mask of configuration s, exactly as run_sweep draws them.
Configuration make_configuration(const SweepConfig& config, int s);

/// Model parameters of cell (i, j); j is ignored for one-axis sweeps.
ModelParams cell_params(const SweepConfig& config, std::size_t i, std::size_t j);

struct SweepRow {
  std::vector<double> axis_values;
  MetricSet mean;
  std::vector<MetricSet> per_config;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};

struct BaselineResult {
  MetricSet mean;
  std::vector<MetricSet> per_config;
};

struct SweepResult {
  SweepConfig config;
  std::string config_hash;
  std::vector<SweepRow> rows;
  std::optional<BaselineResult> bc_baseline;
};

/// Runs every (configuration, cell) pair on `threads` workers (0 = hardware
/// concurrency). Results do not depend on the thread count.
SweepResult run_sweep(const SweepConfig& config, unsigned threads = 0);

struct Optimum {
  std::size_t row = 0;
  std::vector<double> axis_values;
  double value = 0.0;
};

/// Row minimizing the metric (|MARE| for MARE); ties go to the lowest T, then
/// the lowest value of the remaining axes in order.
Optimum find_optima(const SweepResult& result, Metric metric);

nlohmann::json to_json(const SweepConfig& config);
SweepConfig sweep_config_from_json(const nlohmann::json& j);
std::string config_hash(const SweepConfig& config);

std::string result_csv(const SweepResult& result);
nlohmann::json result_json(const SweepResult& result, bool include_timing = false);

} // namespace gpr

#endif // GPR_HARNESS_HPP
