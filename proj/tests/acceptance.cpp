// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include "gpr/energy.hpp"
#include "gpr/harness.hpp"
#include "gpr/potential.hpp"
#include "gpr/sampler.hpp"
#include "gpr/synthdata.hpp"

#include <chrono>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace gpr;

namespace {

constexpr std::uint64_t kMasterSeed = 2024;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double standard_error(const std::vector<double>& v) {
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) {
    ss += (x - m) * (x - m);
  }
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SweepConfig desk_config(Law law) {
  SweepConfig c;
  c.data.lx = 64;
  c.data.ly = 64;
  c.data.wm.law = law;
  c.mask.kind = MaskKind::thinning;
  c.mask.p = 33;
  c.S = 10;
  c.master_seed = kMasterSeed;
  c.fixed_params.T = 0.001;
  return c;
}

const SweepRow& row_at(const SweepResult& r, std::vector<double> axes) {
  for (const SweepRow& row : r.rows) {
    if (row.axis_values == axes) {
      return row;
    }
  }
  throw Error("no row with the requested axis values");
}

std::vector<double> per_config(const SweepRow& row, Metric m) {
  std::vector<double> out;
  for (const MetricSet& s : row.per_config) {
    out.push_back(value(s, m));
  }
  return out;
}

Outcome potential_oracle() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  double cosine_worst = 0.0;
  for (int k = 0; k <= 200; ++k) {
    const double c = -1.0 + 0.01 * k;
    for (int n = 1; n <= 12; ++n) {
      for (double alpha : {1.01, 1.5, 2.0, 10.0}) {
        worst = std::max(worst, std::abs(pair_potential(c, PotentialParams{n, alpha}) - series_oracle(c, n, alpha)));
      }
    }
    for (double alpha : {0.5, 1.01, 2.0, 10.0, std::numeric_limits<double>::infinity()}) {
      cosine_worst = std::max(cosine_worst, std::abs(pair_potential(c, PotentialParams{1, alpha}) - c));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-12 && cosine_worst == 0.0 && secs < 1.0,
          fmt("max |closed - series| = %.3g, max |V(c; n=1) - c| = %.3g, %.3f s", worst, cosine_worst, secs)};
}

Outcome energy_locality() {
  const auto start = std::chrono::steady_clock::now();
  const GridDims dims(32, 32);
  const NeighborTables tables(dims);
  std::mt19937_64 rng(kMasterSeed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_int_distribution<Index> site(0, dims.sites() - 1);
  BiasField bias(dims.ly(), dims.lx());
  for (Index i = 0; i < bias.size(); ++i) {
    bias.data()[i] = angle(rng);
  }
  double worst = 0.0;
  const FieldMode modes[] = {FieldMode::none, FieldMode::bias, FieldMode::uniform};
  for (int trial = 0; trial < 1000; ++trial) {
    ModelParams p;
    p.T = 0.01;
    p.J_nn = 0.3;
    p.J_fn = -0.06;
    p.potential = PotentialParams{1 + trial % 5, 1.01 + 0.5 * (trial % 3)};
    p.field = modes[trial % 3];
    p.K = p.field == FieldMode::uniform ? -0.4 : 2.0;
    const Hamiltonian h(p, tables, &bias);
    GridField a(dims.ly(), dims.lx());
    for (Index i = 0; i < a.size(); ++i) {
      a.data()[i] = angle(rng);
    }
    const Index i = site(rng);
    const double before = h.total(a);
    const double old_local = h.local(i, a.data()[i], a);
    const double phi = angle(rng);
    const double new_local = h.local(i, phi, a);
    a.data()[i] = phi;
    worst = std::max(worst, std::abs((h.total(a) - before) - (new_local - old_local)));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-9 && secs < 10.0, fmt("max |dH_total - dH_local| = %.3g over 1000 moves, %.2f s", worst, secs)};
}

Outcome anisotropy() {
  SweepConfig c = desk_config(Law::gaussian);
  c.data.wm.xi1 = 4.0;
  c.data.wm.xi2 = 2.0;
  c.sweep_axes = {{Axis::J_nn, {0.1, 0.3, 0.5, 0.7, 0.9}}};
  const auto r = run_sweep(c);
  const double low = row_at(r, {0.1}).mean.aae;
  const double iso = row_at(r, {0.5}).mean.aae;
  const double reduction = 1.0 - low / iso;
  const Optimum opt = find_optima(r, Metric::aae);
  return {reduction >= 0.15 && opt.axis_values[0] < 0.5,
          fmt("MAAE(J_nn=0.1) = %.4g, MAAE(0.5) = %.4g, reduction %.1f%% (need >= 15%%), optimum J_nn = %g",
              low, iso, 100.0 * reduction, opt.axis_values[0])};
}

Outcome further_neighbours() {
  SweepConfig c = desk_config(Law::gaussian);
  c.sweep_axes = {{Axis::J_fn, {-0.10, -0.06, -0.03, 0.0, 0.05}}};
  const auto r = run_sweep(c);
  const double tuned = row_at(r, {-0.06}).mean.rase;
  const double plain = row_at(r, {0.0}).mean.rase;
  const double reduction = 1.0 - tuned / plain;
  const Optimum opt = find_optima(r, Metric::rase);
  return {reduction >= 0.20 && opt.axis_values[0] < 0.0,
          fmt("MRASE(J_fn=-0.06) = %.4g, MRASE(0) = %.4g, reduction %.1f%% (need >= 20%%), optimum J_fn = %g",
              tuned, plain, 100.0 * reduction, opt.axis_values[0])};
}

Outcome odd_even() {
  SweepConfig c = desk_config(Law::lognormal);
  c.data.wm.nu = 0.25;
  c.fixed_params.potential.alpha = 1.01;
  const std::vector<double> temps{0.001, 0.003, 0.01, 0.03};
  c.sweep_axes = {{Axis::n, {1, 2, 3, 4, 5}}, {Axis::T, temps}};
  const auto r = run_sweep(c);
  // Each n at its MAAE-optimal temperature.
  std::vector<const SweepRow*> best(6, nullptr);
  for (const SweepRow& row : r.rows) {
    const auto n = static_cast<std::size_t>(row.axis_values[0]);
    if (best[n] == nullptr || row.mean.aae < best[n]->mean.aae) {
      best[n] = &row;
    }
  }
  std::string detail = "MAAE(n=1..5) =";
  for (std::size_t n = 1; n <= 5; ++n) {
    detail += fmt(" %.4g@T=%g", best[n]->mean.aae, best[n]->axis_values[1]);
  }
  // Paired differences: both rows see the same field and masks.
  const auto excess = [&](std::size_t even, std::size_t odd) {
    const auto a = per_config(*best[even], Metric::aae);
    const auto b = per_config(*best[odd], Metric::aae);
    std::vector<double> d(a.size());
    for (std::size_t s = 0; s < a.size(); ++s) {
      d[s] = a[s] - b[s];
    }
    return std::pair{mean(d), standard_error(d)};
  };
  const auto [d21, se21] = excess(2, 1);
  const auto [d43, se43] = excess(4, 3);
  detail += fmt("; MAAE(2)-MAAE(1) = %.4g (SE %.3g), MAAE(4)-MAAE(3) = %.4g (SE %.3g); need each >= 3 SE", d21,
                se21, d43, se43);
  detail += "; MRASE(n=1..5) =";
  for (std::size_t n = 1; n <= 5; ++n) {
    detail += fmt(" %.4g", best[n]->mean.rase);
  }
  return {d21 >= 3.0 * se21 && d21 > 0.0 && d43 >= 3.0 * se43 && d43 > 0.0, detail};
}

Outcome field_synergy() {
  SweepConfig c = desk_config(Law::lognormal);
  c.mask.kind = MaskKind::block;
  c.mask.block = 20;
  c.include_bc_baseline = true;
  const std::vector<double> temps{0.001, 0.003, 0.01};
  const std::vector<double> ks{0.0, 1.0, 3.0, 10.0, 30.0, 100.0};
  c.sweep_axes = {{Axis::T, temps}, {Axis::K, ks}};
  const auto r = run_sweep(c);
  // Each K at its best temperature.
  std::vector<double> best(ks.size(), INFINITY);
  for (const SweepRow& row : r.rows) {
    const auto k = static_cast<std::size_t>(std::find(ks.begin(), ks.end(), row.axis_values[1]) - ks.begin());
    best[k] = std::min(best[k], row.mean.aae);
  }
  const double mpr = best[0];
  const double combined = *std::min_element(best.begin() + 1, best.end());
  const double bc = r.bc_baseline->mean.aae;
  std::string detail = "MAAE at best T for K =";
  for (std::size_t k = 0; k < ks.size(); ++k) {
    detail += fmt(" %g:%.4g", ks[k], best[k]);
  }
  detail += fmt("; BC %.4g; min over K>0 %.4g is %.1f%% below K=0 and %.1f%% below BC (need >= 5%% each)", bc,
                combined, 100.0 * (1.0 - combined / mpr), 100.0 * (1.0 - combined / bc));
  return {combined <= 0.95 * mpr && combined <= 0.95 * bc, detail};
}

Outcome skewness() {
  const GridDims dims(64, 64);
  constexpr int replicas = 16;
  McSchedule schedule;
  const auto run = [&](double T, double k_prime, int replica) {
    ModelParams p;
    p.T = T;
    p.field = FieldMode::uniform;
    p.K = k_prime;
    McSchedule s = schedule;
    s.seed = derive_seed({kMasterSeed, static_cast<std::uint64_t>(T * 1e6), std::bit_cast<std::uint64_t>(k_prime),
                          static_cast<std::uint64_t>(replica)});
    const auto snaps = unconditional_simulate(dims, p, s);
    double sum = 0.0;
    double sq = 0.0;
    double n = 0.0;
    for (const SpinField& f : snaps) {
      sum += f.angles.sum();
      sq += f.angles.square().sum();
      n += static_cast<double>(f.angles.size());
    }
    const double m = sum / n;
    return std::pair{m, std::sqrt(sq / n - m * m)};
  };
  const std::vector<double> kp{-0.4, 0.0, 0.4};
  std::vector<double> means;
  std::vector<double> ses;
  std::vector<double> sd01;
  std::vector<double> sd02;
  for (double k : kp) {
    std::vector<double> m;
    for (int rep = 0; rep < replicas; ++rep) {
      const auto [mu, sd] = run(0.1, k, rep);
      m.push_back(mu);
      if (k == 0.0) {
        sd01.push_back(sd);
      }
    }
    means.push_back(mean(m));
    ses.push_back(standard_error(m));
  }
  for (int rep = 0; rep < replicas; ++rep) {
    sd02.push_back(run(0.2, 0.0, rep).second);
  }
  const double gap1 = means[0] - means[1];
  const double gap2 = means[1] - means[2];
  const bool ordered = gap1 >= 3.0 * std::hypot(ses[0], ses[1]) && gap2 >= 3.0 * std::hypot(ses[1], ses[2]);
  const bool wider = mean(sd02) > mean(sd01);
  return {ordered && wider,
          fmt("mean angle at K'=-0.4/0/+0.4: %.3f/%.3f/%.3f (SE %.3f/%.3f/%.3f); histogram SD at K'=0: "
              "T=0.1 %.3f, T=0.2 %.3f",
              means[0], means[1], means[2], ses[0], ses[1], ses[2], mean(sd01), mean(sd02))};
}

double lag_product(const GridField& z, double m, Index ux, Index uy) {
  const Index rows = z.rows() - uy;
  const Index cols = z.cols() - ux;
  return ((z.block(0, 0, rows, cols) - m) * (z.block(uy, ux, rows, cols) - m)).mean();
}

Outcome generator_fidelity() {
  const GridDims dims(64, 64);
  WmSpec spec;
  spec.sigma = 2.0;
  spec.nu = 2.5;
  spec.xi1 = spec.xi2 = 2.0;
  const std::vector<std::pair<Index, Index>> lags{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}};
  std::vector<std::vector<double>> prod(lags.size());
  std::mt19937_64 rng(derive_seed({kMasterSeed, 8}));
  for (int r = 0; r < 100; ++r) {
    const GridField z = generate_field(dims, spec, kDefaultModes, rng);
    for (std::size_t k = 0; k < lags.size(); ++k) {
      prod[k].push_back(lag_product(z, spec.m, lags[k].first, lags[k].second));
    }
  }
  bool ok = true;
  std::string detail;
  for (std::size_t k = 0; k < lags.size(); ++k) {
    const double target = wm_covariance(static_cast<double>(lags[k].first), static_cast<double>(lags[k].second), spec);
    const double z = (mean(prod[k]) - target) / standard_error(prod[k]);
    ok = ok && std::abs(z) <= 3.0;
    detail += fmt("C(%d,%d) %.3f vs %.3f (z=%.2f); ", static_cast<int>(lags[k].first),
                  static_cast<int>(lags[k].second), mean(prod[k]), target, z);
  }
  WmSpec aniso = spec;
  aniso.xi1 = 4.0;
  std::vector<double> diff;
  for (int r = 0; r < 100; ++r) {
    const GridField z = generate_field(dims, aniso, kDefaultModes, rng);
    diff.push_back(lag_product(z, aniso.m, 2, 0) - lag_product(z, aniso.m, 0, 2));
  }
  const double zd = mean(diff) / standard_error(diff);
  detail += fmt("anisotropic C(2,0)-C(0,2) = %.3f (z=%.2f)", mean(diff), zd);
  return {ok && zd >= 3.0, detail};
}

Outcome determinism() {
  SweepConfig c = desk_config(Law::gaussian);
  c.data.lx = c.data.ly = 32;
  c.S = 3;
  c.schedule.burn_in = 50;
  c.schedule.averaging = 50;
  c.include_bc_baseline = true;
  c.sweep_axes = {{Axis::T, {0.001, 0.02}}, {Axis::J_fn, {-0.06, 0.0}}};
  const auto a = run_sweep(c, 1);
  const auto b = run_sweep(c, 1);
  const auto d = run_sweep(c, 4);
  const auto e = run_sweep(sweep_config_from_json(result_json(a)), 2);
  const std::string ref = result_csv(a) + result_json(a).dump();
  const bool rerun = ref == result_csv(b) + result_json(b).dump();
  const bool threads = ref == result_csv(d) + result_json(d).dump();
  const bool embedded = ref == result_csv(e) + result_json(e).dump();
  return {rerun && threads && embedded,
          fmt("rerun identical: %s, 1 vs 4 threads identical: %s, rerun from result JSON identical: %s",
              rerun ? "yes" : "no", threads ? "yes" : "no", embedded ? "yes" : "no")};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 potential oracle equivalence", potential_oracle},
      {"2 energy locality", energy_locality},
      {"3 anisotropy effect", anisotropy},
      {"4 further-neighbour effect", further_neighbours},
      {"5 odd-even oscillation", odd_even},
      {"6 field synergy", field_synergy},
      {"7 skewness control", skewness},
      {"8 generator fidelity", generator_fidelity},
      {"9 determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
