#include "gpr/sampler.hpp"

#include "gpr/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gpr {

void McSchedule::validate() const {
  if (burn_in < 0) {
    throw ConfigurationError("burn_in must be >= 0, got " + std::to_string(burn_in));
  }
  if (averaging < 1) {
    throw ConfigurationError("averaging must be >= 1, got " + std::to_string(averaging));
  }
  if (!(proposal_width > 0.0 && proposal_width <= kTwoPi)) {
    throw ConfigurationError("proposal_width must lie in (0, 2pi], got " + std::to_string(proposal_width));
  }
  if (adapt_width && !(target_acceptance > 0.0 && target_acceptance < 1.0)) {
    throw ConfigurationError("target_acceptance must lie in (0, 1)");
  }
}

void initialize_missing(SpinField& spins, Rng& rng) {
  const std::vector<Index> observed = observed_sites(spins.mask);
  if (observed.empty()) {
    throw EmptySampleError("cannot initialise missing angles without observed sites");
  }
  std::uniform_int_distribution<std::size_t> pick(0, observed.size() - 1);
  for (Index i = 0; i < spins.angles.size(); ++i) {
    if (!spins.mask.data()[i]) {
      spins.angles.data()[i] = spins.angles.data()[observed[pick(rng)]];
    }
  }
}

namespace {

SweepStats visit(SpinField& spins, const std::vector<Index>& sites, const Hamiltonian& h, double width, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  GridField& angles = spins.angles;
  SweepStats stats;
  for (Index site : sites) {
    ++stats.proposed;
    const double old_phi = angles.data()[site];
    const double new_phi = old_phi + width * (2.0 * unit(rng) - 1.0);
    if (new_phi < 0.0 || new_phi > kTwoPi) {
      continue;
    }
    const double dH = h.local(site, new_phi, angles) - h.local(site, old_phi, angles);
    if (dH <= 0.0 || unit(rng) < boltzmann_factor(dH, h.params().T)) {
      angles.data()[site] = new_phi;
      ++stats.accepted;
      stats.delta_energy += dH;
    }
  }
  return stats;
}

std::vector<Index> sites_of(const GridDims& dims, Parity parity, SweepMode mode, const ObservationMask& mask) {
  std::vector<Index> out;
  const CheckerboardPartition partition(dims);
  for (Index site : partition.sites(parity)) {
    if (mode == SweepMode::unconditional || !mask.data()[site]) {
      out.push_back(site);
    }
  }
  return out;
}

} // namespace

SweepStats metropolis_half_sweep(SpinField& spins, Parity parity, const Hamiltonian& hamiltonian, double width,
                                 Rng& rng, SweepMode mode) {
  return visit(spins, sites_of(hamiltonian.tables().dims(), parity, mode, spins.mask), hamiltonian, width, rng);
}

MetropolisSampler::MetropolisSampler(const Hamiltonian& hamiltonian, SweepMode mode, const ObservationMask& mask,
                                     double width, std::uint64_t seed)
    : hamiltonian_(&hamiltonian), width_(width), rng_(seed) {
  const GridDims& dims = hamiltonian.tables().dims();
  sites_[0] = sites_of(dims, Parity::A, mode, mask);
  sites_[1] = sites_of(dims, Parity::B, mode, mask);
}

SweepStats MetropolisSampler::sweep(SpinField& spins) {
  SweepStats stats = visit(spins, sites_[0], *hamiltonian_, width_, rng_);
  stats += visit(spins, sites_[1], *hamiltonian_, width_, rng_);
  return stats;
}

void MetropolisSampler::adapt(double acceptance, double target) noexcept {
  const double factor = std::clamp(acceptance / target, 0.5, 2.0);
  width_ = std::clamp(width_ * factor, 1e-6, kTwoPi);
}

PredictionResult conditional_predict(const GridField& sample, const ObservationMask& mask, const ModelParams& params,
                                     const McSchedule& schedule, const BiasProvider* bias_provider) {
  params.validate();
  schedule.validate();
  auto [spins, spec] = to_spin_angles(sample, mask);
  const GridDims dims = spins.dims();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  PredictionResult result;
  result.transform = spec;
  result.final_width = schedule.proposal_width;
  if (mask.all()) {
    result.predicted = GridField::Constant(dims.ly(), dims.lx(), nan);
    result.mean_angles = std::move(spins);
    return result;
  }

  BiasField bias;
  if (params.field == FieldMode::bias) {
    bias = (bias_provider ? *bias_provider : default_bias_provider()).interpolate(spins).field;
  }

  Rng init_rng(schedule.seed);
  initialize_missing(spins, init_rng);

  const NeighborTables tables(dims);
  const Hamiltonian hamiltonian(params, tables, params.field == FieldMode::bias ? &bias : nullptr);
  MetropolisSampler sampler(hamiltonian, SweepMode::conditional, mask, schedule.proposal_width,
                            init_rng());

  const double per_site = 1.0 / static_cast<double>(dims.sites());
  long double energy = hamiltonian.interaction_energy(spins.angles) + hamiltonian.field_energy(spins.angles);
  result.energy_trace.reserve(static_cast<std::size_t>(schedule.burn_in + schedule.averaging));

  for (int s = 0; s < schedule.burn_in; ++s) {
    const SweepStats stats = sampler.sweep(spins);
    energy += stats.delta_energy;
    result.energy_trace.push_back(static_cast<double>(energy) * per_site);
    if (schedule.adapt_width) {
      sampler.adapt(stats.acceptance(), schedule.target_acceptance);
    }
  }

  // Resynchronize the running energy before the averaging phase.
  energy = hamiltonian.interaction_energy(spins.angles) + hamiltonian.field_energy(spins.angles);

  Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(dims.sites());
  SweepStats totals;
  for (int s = 0; s < schedule.averaging; ++s) {
    const SweepStats stats = sampler.sweep(spins);
    totals += stats;
    energy += stats.delta_energy;
    result.energy_trace.push_back(static_cast<double>(energy) * per_site);
    sum += Eigen::Map<const Eigen::ArrayXd>(spins.angles.data(), dims.sites());
  }

  SpinField mean{spins.angles, mask};
  const Eigen::ArrayXd avg = sum / static_cast<double>(schedule.averaging);
  for (Index i = 0; i < dims.sites(); ++i) {
    if (!mask.data()[i]) {
      mean.angles.data()[i] = std::clamp(avg[i], 0.0, kTwoPi);
    }
  }
  const GridField values = from_spin_angles(mean, spec);
  result.predicted = mask.select(GridField::Constant(dims.ly(), dims.lx(), nan), values);
  result.mean_angles = std::move(mean);
  result.final_width = sampler.width();
  result.acceptance = totals.acceptance();
  return result;
}

std::vector<SpinField> unconditional_simulate(const GridDims& dims, const ModelParams& params,
                                              const McSchedule& schedule, const BiasField* bias) {
  params.validate();
  schedule.validate();
  const NeighborTables tables(dims);
  const Hamiltonian hamiltonian(params, tables, bias);

  const ObservationMask none = ObservationMask::Constant(dims.ly(), dims.lx(), false);
  Rng init_rng(schedule.seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  SpinField spins{GridField(dims.ly(), dims.lx()), none};
  for (Index i = 0; i < dims.sites(); ++i) {
    spins.angles.data()[i] = angle(init_rng);
  }

  MetropolisSampler sampler(hamiltonian, SweepMode::unconditional, none, schedule.proposal_width, init_rng());
  for (int s = 0; s < schedule.burn_in; ++s) {
    const SweepStats stats = sampler.sweep(spins);
    if (schedule.adapt_width) {
      sampler.adapt(stats.acceptance(), schedule.target_acceptance);
    }
  }
  std::vector<SpinField> snapshots;
  snapshots.reserve(static_cast<std::size_t>(schedule.averaging));
  for (int s = 0; s < schedule.averaging; ++s) {
    sampler.sweep(spins);
    snapshots.push_back(spins);
  }
  return snapshots;
}

} // namespace gpr
