// Command-line front end: synthetic data, masks, gap filling, sweeps and
// unconditional angle histograms.

#include "gpr/bias.hpp"
#include "gpr/error.hpp"
#include "gpr/harness.hpp"
#include "gpr/io.hpp"
#include "gpr/sampler.hpp"
#include "gpr/synthdata.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
};

double parse_number_or_inf(const std::string& s, const std::string& what) {
  if (s == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) {
      return v;
    }
  } catch (const std::exception&) {
  }
  throw gpr::ConfigurationError(what + ": expected a number or inf, got '" + s + "'");
}

struct ModelOptions {
  double T = 0.001;
  std::string n = "1";
  std::string alpha = "inf";
  double J_nn = 0.5;
  double J_fn = 0.0;
  std::string field = "none";
  double K = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--T", T, "temperature")->capture_default_str();
    cmd->add_option("--n", n, "number of harmonics, integer or inf")->capture_default_str();
    cmd->add_option("--alpha", alpha, "harmonic decay rate, > 1 or inf")->capture_default_str();
    cmd->add_option("--J-nn", J_nn, "anisotropy parameter in [0, 1]")->capture_default_str();
    cmd->add_option("--J-fn", J_fn, "further-neighbour coupling")->capture_default_str();
    cmd->add_option("--field", field, "none | bias | uniform")->capture_default_str();
    cmd->add_option("--K", K, "field coupling (K for bias, K' for uniform)")->capture_default_str();
  }

  gpr::ModelParams build() const {
    gpr::ModelParams p;
    gpr::apply_axis(p, gpr::Axis::T, T);
    gpr::apply_axis(p, gpr::Axis::n, parse_number_or_inf(n, "--n"));
    p.potential.alpha = parse_number_or_inf(alpha, "--alpha");
    p.J_nn = J_nn;
    p.J_fn = J_fn;
    if (field == "bias") {
      p.field = gpr::FieldMode::bias;
    } else if (field == "uniform") {
      p.field = gpr::FieldMode::uniform;
    } else if (field != "none") {
      throw gpr::ConfigurationError("--field must be none, bias or uniform");
    }
    p.K = K;
    p.validate();
    return p;
  }
};

struct ScheduleOptions {
  gpr::McSchedule schedule;
  bool adapt = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--burn-in", schedule.burn_in, "equilibration sweeps")->capture_default_str();
    cmd->add_option("--averaging", schedule.averaging, "sampling sweeps")->capture_default_str();
    cmd->add_option("--width", schedule.proposal_width, "proposal half-width (rad)")->capture_default_str();
    cmd->add_option("--target-acceptance", schedule.target_acceptance, "burn-in acceptance target")
        ->capture_default_str();
    cmd->add_flag("--adapt", adapt, "tune the proposal width during burn-in");
  }

  gpr::McSchedule build(std::uint64_t seed) const {
    gpr::McSchedule s = schedule;
    s.adapt_width = adapt;
    s.seed = seed;
    s.validate();
    return s;
  }
};

fs::path output_path(const Globals& g, const std::string& fallback) {
  return g.out.empty() ? fs::path(fallback) : fs::path(g.out);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gap filling of gridded data with generalized planar rotator random fields"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--out", g.out, "output file or prefix");
  app.fallthrough();

  // generate
  auto* generate = app.add_subcommand("generate", "synthetic Whittle-Matern field (CSV + JSON provenance)");
  gpr::WmSpec wm;
  std::string law = "gaussian";
  gpr::Index lx = 64, ly = 64;
  int modes = gpr::kDefaultModes;
  generate->add_option("--lx", lx)->capture_default_str();
  generate->add_option("--ly", ly)->capture_default_str();
  generate->add_option("--law", law, "gaussian | lognormal")->capture_default_str();
  generate->add_option("--m", wm.m)->capture_default_str();
  generate->add_option("--sigma", wm.sigma)->capture_default_str();
  generate->add_option("--nu", wm.nu)->capture_default_str();
  generate->add_option("--xi1", wm.xi1)->capture_default_str();
  generate->add_option("--xi2", wm.xi2)->capture_default_str();
  generate->add_option("--modes", modes)->capture_default_str();

  // mask
  auto* mask_cmd = app.add_subcommand("mask", "random thinning or block mask (CSV, 1 = observed)");
  std::string kind = "thinning";
  double p = 33.0;
  gpr::Index block = 20;
  mask_cmd->add_option("--lx", lx)->capture_default_str();
  mask_cmd->add_option("--ly", ly)->capture_default_str();
  mask_cmd->add_option("--kind", kind, "thinning | block")->capture_default_str();
  mask_cmd->add_option("--p", p, "percent removed (thinning)")->capture_default_str();
  mask_cmd->add_option("--block", block, "block side (block)")->capture_default_str();

  // predict
  auto* predict = app.add_subcommand("predict", "conditional simulation gap filling");
  std::string sample_path, mask_path, trace_path, bias_path;
  ModelOptions model;
  ScheduleOptions sched;
  predict->add_option("--sample", sample_path, "sample grid CSV")->required();
  predict->add_option("--mask", mask_path, "mask CSV")->required();
  predict->add_option("--trace", trace_path, "energy trace CSV");
  predict->add_option("--bias-out", bias_path, "bias field CSV (bias mode)");
  model.attach(predict);
  sched.attach(predict);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "parameter sweep from a JSON config");
  std::string config_path;
  bool timing = false;
  sweep->add_option("--config", config_path, "sweep config or result JSON")->required();
  sweep->add_flag("--timing", timing, "record wall times in the JSON output");

  // baseline-bc
  auto* baseline = app.add_subcommand("baseline-bc", "interpolation-only predictions");
  baseline->add_option("--sample", sample_path)->required();
  baseline->add_option("--mask", mask_path)->required();

  // histogram
  auto* histogram = app.add_subcommand("histogram", "angle histogram of unconditional simulations");
  int bins = 64;
  histogram->add_option("--lx", lx)->capture_default_str();
  histogram->add_option("--ly", ly)->capture_default_str();
  histogram->add_option("--bins", bins)->capture_default_str();
  model.attach(histogram);
  sched.attach(histogram);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) {
      wm.law = gpr::parse_law(law);
      wm.validate();
      const gpr::GridDims dims(lx, ly);
      std::mt19937_64 rng(g.seed);
      const gpr::GridField field = gpr::generate_field(dims, wm, modes, rng);
      const fs::path out = output_path(g, "field.csv");
      gpr::io::write_grid_csv(out, field);
      nlohmann::json meta{{"Lx", lx},     {"Ly", ly},         {"law", law},       {"m", wm.m},
                          {"sigma", wm.sigma}, {"nu", wm.nu}, {"xi1", wm.xi1},    {"xi2", wm.xi2},
                          {"n_modes", modes},  {"seed", g.seed}};
      fs::path sidecar = out;
      sidecar.replace_extension(".json");
      gpr::io::write_text(sidecar, meta.dump(2) + "\n");
    } else if (*mask_cmd) {
      const gpr::GridDims dims(lx, ly);
      gpr::MaskSpec spec;
      if (kind == "thinning") {
        spec.kind = gpr::MaskKind::thinning;
      } else if (kind == "block") {
        spec.kind = gpr::MaskKind::block;
      } else {
        throw gpr::ConfigurationError("--kind must be thinning or block");
      }
      spec.p = p;
      spec.block = block;
      spec.seed = g.seed;
      gpr::io::write_mask_csv(output_path(g, "mask.csv"), gpr::make_mask(dims, spec));
    } else if (*predict) {
      const gpr::GridField sample = gpr::io::read_grid_csv(sample_path);
      const gpr::ObservationMask mask = gpr::io::read_mask_csv(mask_path);
      if (sample.rows() != mask.rows() || sample.cols() != mask.cols()) {
        throw gpr::DimensionError("sample and mask shapes differ");
      }
      const gpr::ModelParams params = model.build();
      const gpr::PredictionResult r = gpr::conditional_predict(sample, mask, params, sched.build(g.seed));
      gpr::io::write_predictions_csv(output_path(g, "predictions.csv"), r.predicted, mask);
      if (!trace_path.empty()) {
        gpr::io::write_energy_trace_csv(trace_path, r.energy_trace);
      }
      if (!bias_path.empty() && !mask.all()) {
        const auto spins = gpr::to_spin_angles(sample, mask).first;
        gpr::io::write_grid_csv(bias_path, gpr::interpolate_bias(spins));
      }
    } else if (*sweep) {
      const auto json = nlohmann::json::parse(gpr::io::read_text(config_path), nullptr, false);
      if (json.is_discarded()) {
        throw gpr::ParseError(config_path, 1, 1, "malformed JSON");
      }
      const gpr::SweepConfig config = gpr::sweep_config_from_json(json);
      const gpr::SweepResult result = gpr::run_sweep(config, g.threads);
      const std::string prefix = g.out.empty() ? "sweep" : g.out;
      gpr::io::write_text(prefix + ".csv", gpr::result_csv(result));
      gpr::io::write_text(prefix + ".json", gpr::result_json(result, timing).dump(2) + "\n");
      for (gpr::Metric m : {gpr::Metric::aae, gpr::Metric::are, gpr::Metric::aare, gpr::Metric::rase}) {
        const gpr::Optimum opt = gpr::find_optima(result, m);
        std::cout << gpr::to_string(m) << " optimum:";
        for (std::size_t a = 0; a < opt.axis_values.size(); ++a) {
          std::cout << ' ' << gpr::to_string(config.sweep_axes[a].axis) << '='
                    << gpr::io::format_double(opt.axis_values[a]);
        }
        std::cout << " value=" << gpr::io::format_double(opt.value) << '\n';
      }
    } else if (*baseline) {
      const gpr::GridField sample = gpr::io::read_grid_csv(sample_path);
      const gpr::ObservationMask mask = gpr::io::read_mask_csv(mask_path);
      gpr::io::write_predictions_csv(output_path(g, "baseline.csv"), gpr::pure_bias_predict(sample, mask), mask);
    } else if (*histogram) {
      if (bins < 1) {
        throw gpr::ConfigurationError("--bins must be >= 1");
      }
      const gpr::ModelParams params = model.build();
      const auto snapshots = gpr::unconditional_simulate(gpr::GridDims(lx, ly), params, sched.build(g.seed));
      std::vector<long long> counts(static_cast<std::size_t>(bins), 0);
      long double sum = 0.0L, sq = 0.0L;
      long long total = 0;
      for (const auto& snap : snapshots) {
        for (gpr::Index i = 0; i < snap.angles.size(); ++i) {
          const double a = snap.angles.data()[i];
          auto b = static_cast<std::size_t>(a / gpr::kTwoPi * bins);
          ++counts[std::min(b, counts.size() - 1)];
          sum += a;
          sq += static_cast<long double>(a) * a;
          ++total;
        }
      }
      std::ostringstream csv;
      csv << "bin_lo,bin_hi,count,density\n";
      const double width = gpr::kTwoPi / bins;
      for (int b = 0; b < bins; ++b) {
        csv << gpr::io::format_double(b * width) << ',' << gpr::io::format_double((b + 1) * width) << ','
            << counts[static_cast<std::size_t>(b)] << ','
            << gpr::io::format_double(static_cast<double>(counts[static_cast<std::size_t>(b)]) /
                                      (static_cast<double>(total) * width))
            << '\n';
      }
      gpr::io::write_text(output_path(g, "histogram.csv"), csv.str());
      const double mean = static_cast<double>(sum / total);
      const double var = static_cast<double>(sq / total) - mean * mean;
      std::cout << "mean=" << gpr::io::format_double(mean) << " std=" << gpr::io::format_double(std::sqrt(var))
                << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
