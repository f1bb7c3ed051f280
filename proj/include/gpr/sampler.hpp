#ifndef GPR_SAMPLER_HPP
#define GPR_SAMPLER_HPP

#include "gpr/bias.hpp"
#include "gpr/energy.hpp"
#include "gpr/transform.hpp"

#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace gpr {

using Rng = std::mt19937_64;

struct McSchedule {
  int burn_in = 200;
  int averaging = 300;
  /// Half-width w of the uniform proposal phi' = phi + U(-w, w).
  double proposal_width = std::numbers::pi / 2.0;
  std::uint64_t seed = 0;
  /// Rescale w after every burn-in sweep towards target_acceptance; the width
  /// is frozen during averaging. Off by default: one global width settles on
  /// the sites that are already equilibrated and strands the rest when a
  /// strong bias field is on.
  bool adapt_width = false;
  double target_acceptance = 0.3;

  void validate() const;
};

enum class SweepMode {
  conditional,  ///< only missing sites move
  unconditional ///< every site moves
};

struct SweepStats {
  Index proposed = 0;
  Index accepted = 0;
  /// Sum of accepted energy changes.
  double delta_energy = 0.0;

  double acceptance() const noexcept {
    return proposed == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposed);
  }
  SweepStats& operator+=(const SweepStats& o) noexcept {
    proposed += o.proposed;
    accepted += o.accepted;
    delta_energy += o.delta_energy;
    return *this;
  }
};

/// Draws every missing angle from the empirical distribution of observed angles.
/// Throws EmptySampleError when nothing is observed.
void initialize_missing(SpinField& spins, Rng& rng);

/// One Metropolis pass over the sites of one sublattice. Proposals leaving
/// [0, 2pi] are rejected. All bonds cross sublattices, so the visiting order
/// within a pass does not change the target distribution.
SweepStats metropolis_half_sweep(SpinField& spins, Parity parity, const Hamiltonian& hamiltonian, double width,
                                 Rng& rng, SweepMode mode = SweepMode::conditional);

/// Checkerboard Metropolis chain over one configuration.
class MetropolisSampler {
public:
  MetropolisSampler(const Hamiltonian& hamiltonian, SweepMode mode, const ObservationMask& mask, double width,
                    std::uint64_t seed);

  /// Parity A then parity B.
  SweepStats sweep(SpinField& spins);

  double width() const noexcept { return width_; }
  void adapt(double acceptance, double target) noexcept;
  Rng& rng() noexcept { return rng_; }

private:
  const Hamiltonian* hamiltonian_;
  std::vector<Index> sites_[2];
  double width_;
  Rng rng_;
};

struct PredictionResult {
  /// Predictions in data units at missing sites, NaN at observed sites.
  GridField predicted;
  /// Observed angles and per-site mean angles at missing sites.
  SpinField mean_angles;
  /// Specific energy (H / N_G) after each burn-in and averaging sweep.
  std::vector<double> energy_trace;
  TransformSpec transform{};
  double final_width = 0.0;
  double acceptance = 0.0;
};

PredictionResult conditional_predict(const GridField& sample, const ObservationMask& mask, const ModelParams& params,
                                     const McSchedule& schedule, const BiasProvider* bias_provider = nullptr);

/// Unconditional chain from a uniform random start. Returns one snapshot per
/// averaging sweep. Bias mode requires `bias`.
std::vector<SpinField> unconditional_simulate(const GridDims& dims, const ModelParams& params,
                                              const McSchedule& schedule, const BiasField* bias = nullptr);

} // namespace gpr

#endif // GPR_SAMPLER_HPP
