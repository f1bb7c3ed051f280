#ifndef GPR_ENERGY_HPP
#define GPR_ENERGY_HPP

#include "gpr/grid.hpp"
#include "gpr/potential.hpp"
#include "gpr/transform.hpp"

#include <cmath>

namespace gpr {

/// none: no field term. bias: -K sum cos((phi_i - h_i)/2) with a supplied h.
/// uniform: the same term with h = 0 and a coefficient K' of either sign.
enum class FieldMode { none, bias, uniform };

struct ModelParams {
  double T = 0.001;
  PotentialParams potential{};
  /// Anisotropy parameter: x bonds carry 1 - J_nn, y bonds carry J_nn.
  double J_nn = 0.5;
  double J_fn = 0.0;
  FieldMode field = FieldMode::none;
  /// K in bias mode, K' in uniform mode; ignored otherwise.
  double K = 0.0;

  double coupling(Bond bond) const noexcept {
    switch (bond) {
    case Bond::nn_x:
      return 1.0 - J_nn;
    case Bond::nn_y:
      return J_nn;
    case Bond::fn:
      return J_fn;
    }
    return 0.0;
  }

  void validate() const;
};

/// Bias angles h_i in [0, 2pi], one per site.
using BiasField = GridField;

inline double bias_term(double phi, double h) noexcept { return std::cos(0.5 * (phi - h)); }

inline double boltzmann_factor(double dH, double T) noexcept { return std::exp(-dH / T); }

/// Metropolis acceptance min(1, exp(-dH/T)).
inline double acceptance_probability(double dH, double T) noexcept {
  return dH <= 0.0 ? 1.0 : boltzmann_factor(dH, T);
}

/// Evaluates the Hamiltonian for a fixed parameter set. Holds references to
/// the tables and bias field, which must outlive it.
class Hamiltonian {
public:
  /// Throws ConfigurationError for invalid parameters, or bias mode without a
  /// bias field of matching shape with values in [0, 2pi].
  Hamiltonian(const ModelParams& params, const NeighborTables& tables, const BiasField* bias = nullptr);

  const ModelParams& params() const noexcept { return params_; }
  const NeighborTables& tables() const noexcept { return *tables_; }

  /// Potential of one bond, V(cos(q (phi_i - phi_j))). No angle wrapping.
  double bond(double phi_i, double phi_j) const {
    return potential_(std::cos(PotentialParams::q * (phi_i - phi_j)));
  }

  /// Field contribution -K B_i of one site at angle phi.
  double field_term(Index site, double phi) const noexcept {
    switch (params_.field) {
    case FieldMode::none:
      return 0.0;
    case FieldMode::bias:
      return -params_.K * bias_term(phi, bias_->data()[site]);
    case FieldMode::uniform:
      return -params_.K * bias_term(phi, 0.0);
    }
    return 0.0;
  }

  long double interaction_energy(const GridField& angles) const;
  long double field_energy(const GridField& angles) const;
  double total(const GridField& angles) const {
    return static_cast<double>(interaction_energy(angles) + field_energy(angles));
  }

  /// Sum of every term touching `site` when its angle is `phi` and all other
  /// angles are taken from `angles`.
  double local(Index site, double phi, const GridField& angles) const {
    const double* a = angles.data();
    double e = 0.0;
    for (Bond b : kAllBonds) {
      const double j = coupling_[static_cast<std::size_t>(b)];
      if (j == 0.0) {
        continue;
      }
      double s = 0.0;
      for (Index other : tables_->neighbors(b, site)) {
        s += bond(phi, a[other]);
      }
      e -= j * s;
    }
    return e + field_term(site, phi);
  }

private:
  ModelParams params_;
  const NeighborTables* tables_;
  const BiasField* bias_;
  PairPotential<double> potential_;
  std::array<double, 3> coupling_;
};

/// Throws RangeError if any angle is unset.
double total_energy(const SpinField& spins, const ModelParams& params, const NeighborTables& tables,
                    const BiasField* bias = nullptr);

double local_energy(Index site, const SpinField& spins, const ModelParams& params,
                    const NeighborTables& tables, const BiasField* bias = nullptr);

} // namespace gpr

#endif // GPR_ENERGY_HPP
