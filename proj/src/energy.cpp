#include "gpr/energy.hpp"

#include "gpr/error.hpp"

#include <string>

namespace gpr {

void ModelParams::validate() const {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw ConfigurationError("temperature T must be positive, got " + std::to_string(T));
  }
  potential.validate();
  if (!(J_nn >= 0.0 && J_nn <= 1.0)) {
    throw ConfigurationError("J_nn must lie in [0, 1], got " + std::to_string(J_nn));
  }
  if (!std::isfinite(J_fn)) {
    throw ConfigurationError("J_fn must be finite");
  }
  if (!std::isfinite(K) || (field == FieldMode::bias && K < 0.0)) {
    throw ConfigurationError("bias coupling K must be finite and non-negative, got " + std::to_string(K));
  }
}

Hamiltonian::Hamiltonian(const ModelParams& params, const NeighborTables& tables, const BiasField* bias)
    : params_(params), tables_(&tables), bias_(bias), potential_(params.potential),
      coupling_{params.coupling(Bond::nn_x), params.coupling(Bond::nn_y), params.coupling(Bond::fn)} {
  params_.validate();
  if (params_.field == FieldMode::bias) {
    if (bias_ == nullptr) {
      throw ConfigurationError("bias field mode requires a bias field");
    }
    if (!tables.dims().matches(*bias_)) {
      throw ConfigurationError("bias field shape does not match the grid");
    }
    if (!((bias_->array() >= 0.0).all() && (bias_->array() <= kTwoPi).all())) {
      throw ConfigurationError("bias field values must lie in [0, 2pi]");
    }
  }
}

long double Hamiltonian::interaction_energy(const GridField& angles) const {
  const double* a = angles.data();
  long double total = 0.0L;
  for (Bond b : kAllBonds) {
    const double j = coupling_[static_cast<std::size_t>(b)];
    if (j == 0.0) {
      continue;
    }
    long double s = 0.0L;
    for (const SitePair& p : tables_->pairs(b)) {
      s += bond(a[p.first], a[p.second]);
    }
    total -= j * s;
  }
  return total;
}

long double Hamiltonian::field_energy(const GridField& angles) const {
  if (params_.field == FieldMode::none) {
    return 0.0L;
  }
  long double total = 0.0L;
  for (Index i = 0; i < angles.size(); ++i) {
    total += field_term(i, angles.data()[i]);
  }
  return total;
}

namespace {

void require_set(const SpinField& spins) {
  if (spins.angles.isNaN().any()) {
    throw RangeError("energy evaluated on a configuration with unset angles");
  }
}

} // namespace

double total_energy(const SpinField& spins, const ModelParams& params, const NeighborTables& tables,
                    const BiasField* bias) {
  require_set(spins);
  return Hamiltonian(params, tables, bias).total(spins.angles);
}

double local_energy(Index site, const SpinField& spins, const ModelParams& params, const NeighborTables& tables,
                    const BiasField* bias) {
  const Hamiltonian h(params, tables, bias);
  const double phi = spins.angles.data()[site];
  if (std::isnan(phi)) {
    throw RangeError("local energy of unset site " + std::to_string(site));
  }
  for (Bond b : kAllBonds) {
    for (Index other : tables.neighbors(b, site)) {
      if (std::isnan(spins.angles.data()[other])) {
        throw RangeError("neighbour " + std::to_string(other) + " of site " + std::to_string(site) + " is unset");
      }
    }
  }
  return h.local(site, phi, spins.angles);
}

} // namespace gpr
