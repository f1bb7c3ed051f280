#include "gpr/harness.hpp"

#include "gpr/bias.hpp"
#include "gpr/error.hpp"
#include "gpr/io.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace gpr {

namespace {

constexpr std::uint64_t kFieldTag = 0x6669656c64ULL; // "field"
constexpr std::uint64_t kMaskTag = 0x6d61736bULL;    // "mask"
constexpr std::uint64_t kCellTag = 0x63656c6cULL;    // "cell"

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

const double kInf = std::numeric_limits<double>::infinity();

} // namespace

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (std::uint64_t p : parts) {
    h = splitmix64(h ^ splitmix64(p));
  }
  return h;
}

std::string to_string(Axis axis) {
  switch (axis) {
  case Axis::T:
    return "T";
  case Axis::n:
    return "n";
  case Axis::alpha_inv:
    return "alpha_inv";
  case Axis::J_nn:
    return "J_nn";
  case Axis::J_fn:
    return "J_fn";
  case Axis::K:
    return "K";
  case Axis::K_prime:
    return "K_prime";
  }
  return "?";
}

Axis parse_axis(const std::string& name) {
  for (Axis a : {Axis::T, Axis::n, Axis::alpha_inv, Axis::J_nn, Axis::J_fn, Axis::K, Axis::K_prime}) {
    if (to_string(a) == name) {
      return a;
    }
  }
  throw ConfigurationError("unknown sweep axis '" + name + "'");
}

void apply_axis(ModelParams& params, Axis axis, double value) {
  switch (axis) {
  case Axis::T:
    params.T = value;
    break;
  case Axis::n:
    if (std::isinf(value) && value > 0) {
      params.potential.n = kInfiniteOrder;
    } else if (value >= 1.0 && value == std::floor(value) && value < 1e9) {
      params.potential.n = static_cast<int>(value);
    } else {
      throw ConfigurationError("n must be a positive integer or inf, got " + io::format_double(value));
    }
    break;
  case Axis::alpha_inv:
    if (!(value >= 0.0 && value < 1.0)) {
      throw ConfigurationError("alpha_inv must lie in [0, 1), got " + io::format_double(value));
    }
    params.potential.alpha = value == 0.0 ? kInf : 1.0 / value;
    break;
  case Axis::J_nn:
    params.J_nn = value;
    break;
  case Axis::J_fn:
    params.J_fn = value;
    break;
  case Axis::K:
    params.field = FieldMode::bias;
    params.K = value;
    break;
  case Axis::K_prime:
    params.field = FieldMode::uniform;
    params.K = value;
    break;
  }
}

std::vector<double> default_temperatures() {
  constexpr int count = 16;
  const double lo = std::log(0.001);
  const double hi = std::log(0.2);
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = std::exp(lo + (hi - lo) * i / (count - 1));
  }
  out.front() = 0.001;
  out.back() = 0.2;
  return out;
}

std::size_t SweepConfig::cell_count() const {
  std::size_t n = 1;
  for (const SweepAxis& a : sweep_axes) {
    n *= a.values.size();
  }
  return n;
}

void SweepConfig::validate() const {
  const GridDims d = dims();
  data.wm.validate();
  if (data.n_modes < 100) {
    throw ConfigurationError("data.n_modes must be >= 100");
  }
  mask.validate(d);
  if (S < 1) {
    throw ConfigurationError("S must be >= 1, got " + std::to_string(S));
  }
  schedule.validate();
  if (sweep_axes.size() > 2) {
    throw ConfigurationError("at most two sweep axes are supported");
  }
  if (sweep_axes.size() == 2 && sweep_axes[0].axis == sweep_axes[1].axis) {
    throw ConfigurationError("sweep axes must be distinct");
  }
  if (sweep_axes.size() == 2) {
    const auto field_axis = [](Axis a) { return a == Axis::K || a == Axis::K_prime; };
    if (field_axis(sweep_axes[0].axis) && field_axis(sweep_axes[1].axis)) {
      throw ConfigurationError("K and K_prime cannot be swept together");
    }
  }
  for (const SweepAxis& a : sweep_axes) {
    if (a.values.empty()) {
      throw ConfigurationError("sweep axis " + to_string(a.axis) + " has no values");
    }
    for (double v : a.values) {
      ModelParams p = fixed_params;
      apply_axis(p, a.axis, v);
      try {
        p.validate();
      } catch (const ConfigurationError& e) {
        throw ConfigurationError("sweep axis " + to_string(a.axis) + " value " + io::format_double(v) + ": " +
                                 e.what());
      }
    }
  }
  fixed_params.validate();
}

std::uint64_t field_seed(const SweepConfig& config, int s) {
  return config.data.redraw_per_config
             ? derive_seed({config.master_seed, kFieldTag, static_cast<std::uint64_t>(s)})
             : derive_seed({config.master_seed, kFieldTag});
}

std::uint64_t mask_seed(const SweepConfig& config, int s) {
  return derive_seed({config.master_seed, kMaskTag, static_cast<std::uint64_t>(s)});
}

std::uint64_t row_seed(const SweepConfig& config, std::size_t i, std::size_t j) {
  return derive_seed({config.master_seed, kCellTag, i, j});
}

std::uint64_t cell_seed(const SweepConfig& config, int s, std::size_t i, std::size_t j) {
  return derive_seed({row_seed(config, i, j), static_cast<std::uint64_t>(s)});
}

Configuration make_configuration(const SweepConfig& config, int s) {
  const GridDims d = config.dims();
  std::mt19937_64 field_rng(field_seed(config, s));
  MaskSpec mask = config.mask;
  mask.seed = mask_seed(config, s);
  return {generate_field(d, config.data.wm, config.data.n_modes, field_rng), make_mask(d, mask)};
}

ModelParams cell_params(const SweepConfig& config, std::size_t i, std::size_t j) {
  ModelParams p = config.fixed_params;
  if (!config.sweep_axes.empty()) {
    apply_axis(p, config.sweep_axes[0].axis, config.sweep_axes[0].values.at(i));
  }
  if (config.sweep_axes.size() > 1) {
    apply_axis(p, config.sweep_axes[1].axis, config.sweep_axes[1].values.at(j));
  }
  return p;
}

SweepResult run_sweep(const SweepConfig& config, unsigned threads) {
  config.validate();
  const std::size_t n_i = config.sweep_axes.empty() ? 1 : config.sweep_axes[0].values.size();
  const std::size_t n_j = config.sweep_axes.size() > 1 ? config.sweep_axes[1].values.size() : 1;
  const std::size_t cells = n_i * n_j;
  const auto S = static_cast<std::size_t>(config.S);

  std::vector<Configuration> configurations;
  configurations.reserve(S);
  if (config.data.redraw_per_config) {
    for (int s = 0; s < config.S; ++s) {
      configurations.push_back(make_configuration(config, s));
    }
  } else {
    const Configuration first = make_configuration(config, 0);
    for (int s = 0; s < config.S; ++s) {
      MaskSpec mask = config.mask;
      mask.seed = mask_seed(config, s);
      configurations.push_back({first.truth, make_mask(config.dims(), mask)});
    }
  }

  // Task t < cells * S is (cell, s); the optional trailing S tasks score the baseline.
  const std::size_t model_tasks = cells * S;
  const std::size_t tasks = model_tasks + (config.include_bc_baseline ? S : 0);
  std::vector<MetricSet> metrics(tasks);
  std::vector<double> seconds(tasks, 0.0);
  std::vector<std::exception_ptr> errors(tasks);
  std::vector<std::string> where(tasks);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      const auto start = std::chrono::steady_clock::now();
      try {
        if (t < model_tasks) {
          const std::size_t cell = t / S;
          const int s = static_cast<int>(t % S);
          const std::size_t i = cell / n_j;
          const std::size_t j = cell % n_j;
          where[t] = "cell (s=" + std::to_string(s) + ", i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")";
          McSchedule schedule = config.schedule;
          schedule.seed = cell_seed(config, s, i, j);
          const Configuration& c = configurations[static_cast<std::size_t>(s)];
          const PredictionResult r = conditional_predict(c.truth, c.mask, cell_params(config, i, j), schedule);
          metrics[t] = compute_metrics(c.truth, r.predicted, c.mask);
        } else {
          const std::size_t s = t - model_tasks;
          where[t] = "baseline (s=" + std::to_string(s) + ")";
          const Configuration& c = configurations[s];
          metrics[t] = compute_metrics(c.truth, pure_bias_predict(c.truth, c.mask), c.mask);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
      seconds[t] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };

  if (threads == 0) {
    threads = std::max(1U, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(tasks, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) {
      pool.emplace_back(worker);
    }
  }

  for (std::size_t t = 0; t < tasks; ++t) {
    if (errors[t]) {
      try {
        std::rethrow_exception(errors[t]);
      } catch (const std::exception& e) {
        throw Error(where[t] + ": " + e.what());
      }
    }
  }

  SweepResult result;
  result.config = config;
  result.config_hash = config_hash(config);
  result.rows.reserve(cells);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const std::size_t i = cell / n_j;
    const std::size_t j = cell % n_j;
    SweepRow row;
    if (!config.sweep_axes.empty()) {
      row.axis_values.push_back(config.sweep_axes[0].values[i]);
    }
    if (config.sweep_axes.size() > 1) {
      row.axis_values.push_back(config.sweep_axes[1].values[j]);
    }
    row.per_config.assign(metrics.begin() + static_cast<std::ptrdiff_t>(cell * S),
                          metrics.begin() + static_cast<std::ptrdiff_t>((cell + 1) * S));
    row.mean = aggregate(row.per_config);
    row.seed = row_seed(config, i, j);
    for (std::size_t s = 0; s < S; ++s) {
      row.wall_seconds += seconds[cell * S + s];
    }
    result.rows.push_back(std::move(row));
  }
  if (config.include_bc_baseline) {
    BaselineResult b;
    b.per_config.assign(metrics.begin() + static_cast<std::ptrdiff_t>(model_tasks), metrics.end());
    b.mean = aggregate(b.per_config);
    result.bc_baseline = std::move(b);
  }
  return result;
}

Optimum find_optima(const SweepResult& result, Metric metric) {
  if (result.rows.empty()) {
    throw ConfigurationError("cannot locate optima in an empty sweep result");
  }
  const auto& axes = result.config.sweep_axes;
  const auto score = [&](const SweepRow& r) {
    const double v = value(r.mean, metric);
    return metric == Metric::are ? std::abs(v) : v;
  };
  // Tie-break key: T first (if swept), then the remaining axes in order.
  const auto key = [&](const SweepRow& r) {
    std::vector<double> k;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      if (axes[a].axis == Axis::T) {
        k.insert(k.begin(), r.axis_values[a]);
      } else {
        k.push_back(r.axis_values[a]);
      }
    }
    return k;
  };
  std::size_t best = 0;
  for (std::size_t r = 1; r < result.rows.size(); ++r) {
    const double a = score(result.rows[r]);
    const double b = score(result.rows[best]);
    if (a < b || (a == b && key(result.rows[r]) < key(result.rows[best]))) {
      best = r;
    }
  }
  return {best, result.rows[best].axis_values, value(result.rows[best].mean, metric)};
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;

json number_or_inf(double v) {
  if (std::isinf(v)) {
    return "inf";
  }
  return v;
}

double read_number_or_inf(const json& j, const std::string& key) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") {
      return kInf;
    }
    throw ConfigurationError(key + ": expected a number or \"inf\"");
  }
  if (!j.is_number()) {
    throw ConfigurationError(key + ": expected a number");
  }
  return j.get<double>();
}

template <typename T>
T read(const json& j, const std::string& key, const T& fallback) {
  if (!j.contains(key)) {
    return fallback;
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigurationError(key + ": " + e.what());
  }
}

std::string field_name(FieldMode m) {
  switch (m) {
  case FieldMode::none:
    return "none";
  case FieldMode::bias:
    return "bias";
  case FieldMode::uniform:
    return "uniform";
  }
  return "none";
}

FieldMode parse_field(const std::string& s) {
  if (s == "none") {
    return FieldMode::none;
  }
  if (s == "bias") {
    return FieldMode::bias;
  }
  if (s == "uniform") {
    return FieldMode::uniform;
  }
  throw ConfigurationError("fixed_params.field must be none, bias or uniform, got '" + s + "'");
}

json metrics_json(const MetricSet& m, bool mean) {
  const std::string p = mean ? "M" : "";
  return json{{p + "AAE", m.aae}, {p + "ARE", m.are}, {p + "AARE", m.aare}, {p + "RASE", m.rase}};
}

} // namespace

json to_json(const SweepConfig& c) {
  json data{{"Lx", c.data.lx},         {"Ly", c.data.ly},         {"law", to_string(c.data.wm.law)},
            {"m", c.data.wm.m},        {"sigma", c.data.wm.sigma}, {"nu", c.data.wm.nu},
            {"xi1", c.data.wm.xi1},    {"xi2", c.data.wm.xi2},     {"n_modes", c.data.n_modes},
            {"redraw_per_config", c.data.redraw_per_config}};
  json mask = c.mask.kind == MaskKind::thinning ? json{{"kind", "thinning"}, {"p", c.mask.p}}
                                                : json{{"kind", "block"}, {"L_B", c.mask.block}};
  const ModelParams& p = c.fixed_params;
  json params{{"T", p.T},
              {"n", p.potential.infinite_order() ? json("inf") : json(p.potential.n)},
              {"alpha", number_or_inf(p.potential.alpha)},
              {"J_nn", p.J_nn},
              {"J_fn", p.J_fn},
              {"field", field_name(p.field)},
              {"K", p.K}};
  json axes = json::array();
  for (const SweepAxis& a : c.sweep_axes) {
    json values = json::array();
    for (double v : a.values) {
      values.push_back(number_or_inf(v));
    }
    axes.push_back({{"name", to_string(a.axis)}, {"values", values}});
  }
  json schedule{{"burn_in", c.schedule.burn_in},
                {"averaging", c.schedule.averaging},
                {"proposal_width", c.schedule.proposal_width},
                {"adapt_width", c.schedule.adapt_width},
                {"target_acceptance", c.schedule.target_acceptance}};
  return json{{"data", data},         {"mask", mask},         {"S", c.S},
              {"fixed_params", params}, {"sweep_axes", axes}, {"schedule", schedule},
              {"master_seed", c.master_seed}, {"include_bc_baseline", c.include_bc_baseline}};
}

SweepConfig sweep_config_from_json(const json& root) {
  // A result file embeds its config; accept either.
  const json& j = root.contains("config") && root.at("config").is_object() ? root.at("config") : root;
  if (!j.is_object()) {
    throw ConfigurationError("sweep config must be a JSON object");
  }
  SweepConfig c;
  if (j.contains("data")) {
    const json& d = j.at("data");
    c.data.lx = read<Index>(d, "Lx", c.data.lx);
    c.data.ly = read<Index>(d, "Ly", c.data.ly);
    c.data.wm.law = parse_law(read<std::string>(d, "law", "gaussian"));
    c.data.wm.m = read<double>(d, "m", c.data.wm.m);
    c.data.wm.sigma = read<double>(d, "sigma", c.data.wm.sigma);
    c.data.wm.nu = read<double>(d, "nu", c.data.wm.nu);
    c.data.wm.xi1 = read<double>(d, "xi1", c.data.wm.xi1);
    c.data.wm.xi2 = read<double>(d, "xi2", c.data.wm.xi2);
    c.data.n_modes = read<int>(d, "n_modes", c.data.n_modes);
    c.data.redraw_per_config = read<bool>(d, "redraw_per_config", false);
  }
  if (j.contains("mask")) {
    const json& m = j.at("mask");
    const std::string kind = read<std::string>(m, "kind", "thinning");
    if (kind == "thinning") {
      c.mask.kind = MaskKind::thinning;
      c.mask.p = read<double>(m, "p", c.mask.p);
    } else if (kind == "block") {
      c.mask.kind = MaskKind::block;
      c.mask.block = read<Index>(m, "L_B", c.mask.block);
    } else {
      throw ConfigurationError("mask.kind must be thinning or block, got '" + kind + "'");
    }
  }
  c.S = read<int>(j, "S", c.S);
  if (j.contains("fixed_params")) {
    const json& p = j.at("fixed_params");
    ModelParams& mp = c.fixed_params;
    mp.T = read<double>(p, "T", mp.T);
    if (p.contains("n")) {
      apply_axis(mp, Axis::n, read_number_or_inf(p.at("n"), "fixed_params.n"));
    }
    if (p.contains("alpha")) {
      mp.potential.alpha = read_number_or_inf(p.at("alpha"), "fixed_params.alpha");
    }
    mp.J_nn = read<double>(p, "J_nn", mp.J_nn);
    mp.J_fn = read<double>(p, "J_fn", mp.J_fn);
    mp.field = parse_field(read<std::string>(p, "field", "none"));
    mp.K = read<double>(p, "K", mp.K);
  }
  if (j.contains("sweep_axes")) {
    for (const json& a : j.at("sweep_axes")) {
      SweepAxis axis{parse_axis(read<std::string>(a, "name", "")), {}};
      const json& values = a.at("values");
      if (values.is_string() && values.get<std::string>() == "default" && axis.axis == Axis::T) {
        axis.values = default_temperatures();
      } else if (values.is_array()) {
        for (const json& v : values) {
          axis.values.push_back(read_number_or_inf(v, "sweep_axes." + to_string(axis.axis)));
        }
      } else {
        throw ConfigurationError("sweep_axes." + to_string(axis.axis) + ".values must be an array");
      }
      c.sweep_axes.push_back(std::move(axis));
    }
  }
  if (j.contains("schedule")) {
    const json& s = j.at("schedule");
    c.schedule.burn_in = read<int>(s, "burn_in", c.schedule.burn_in);
    c.schedule.averaging = read<int>(s, "averaging", c.schedule.averaging);
    c.schedule.proposal_width = read<double>(s, "proposal_width", c.schedule.proposal_width);
    c.schedule.adapt_width = read<bool>(s, "adapt_width", c.schedule.adapt_width);
    c.schedule.target_acceptance = read<double>(s, "target_acceptance", c.schedule.target_acceptance);
  }
  c.master_seed = read<std::uint64_t>(j, "master_seed", 0);
  c.include_bc_baseline = read<bool>(j, "include_bc_baseline", false);
  c.validate();
  return c;
}

std::string config_hash(const SweepConfig& config) {
  // FNV-1a over the canonical JSON dump.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_json(config).dump()) {
    h = (h ^ ch) * 0x100000001b3ULL;
  }
  std::ostringstream ss;
  ss << std::hex;
  ss.width(16);
  ss.fill('0');
  ss << h;
  return ss.str();
}

std::string result_csv(const SweepResult& result) {
  std::ostringstream out;
  for (const SweepAxis& a : result.config.sweep_axes) {
    out << to_string(a.axis) << ',';
  }
  out << "MAAE,MARE,MAARE,MRASE,n_configs,seed\n";
  for (const SweepRow& r : result.rows) {
    for (double v : r.axis_values) {
      out << io::format_double(v) << ',';
    }
    out << io::format_double(r.mean.aae) << ',' << io::format_double(r.mean.are) << ','
        << io::format_double(r.mean.aare) << ',' << io::format_double(r.mean.rase) << ',' << r.per_config.size()
        << ',' << r.seed << '\n';
  }
  return out.str();
}

json result_json(const SweepResult& result, bool include_timing) {
  json rows = json::array();
  for (const SweepRow& r : result.rows) {
    json axes = json::object();
    for (std::size_t a = 0; a < r.axis_values.size(); ++a) {
      axes[to_string(result.config.sweep_axes[a].axis)] = number_or_inf(r.axis_values[a]);
    }
    json per = json::array();
    for (const MetricSet& m : r.per_config) {
      per.push_back(metrics_json(m, false));
    }
    json row{{"axes", axes}, {"metrics", metrics_json(r.mean, true)}, {"per_config", per}, {"seed", r.seed}};
    if (include_timing) {
      row["wall_seconds"] = r.wall_seconds;
    }
    rows.push_back(std::move(row));
  }
  json out{{"config", to_json(result.config)}, {"config_hash", result.config_hash}, {"rows", rows}};
  if (result.bc_baseline) {
    json per = json::array();
    for (const MetricSet& m : result.bc_baseline->per_config) {
      per.push_back(metrics_json(m, false));
    }
    out["bc_baseline"] = {{"metrics", metrics_json(result.bc_baseline->mean, true)}, {"per_config", per}};
  }
  return out;
}

} // namespace gpr
