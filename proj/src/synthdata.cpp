#include "gpr/synthdata.hpp"

#include "gpr/error.hpp"
#include "gpr/transform.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace gpr {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigurationError(std::string(name) + " must be positive, got " + std::to_string(value));
  }
}

} // namespace

void WmSpec::validate() const {
  if (!std::isfinite(m)) {
    throw ConfigurationError("m must be finite");
  }
  require_positive(sigma, "sigma");
  require_positive(nu, "nu");
  require_positive(xi1, "xi1");
  require_positive(xi2, "xi2");
}

double wm_covariance(double u1, double u2, const WmSpec& spec) {
  const double variance = spec.sigma * spec.sigma;
  const double rho = std::hypot(u1 / spec.xi1, u2 / spec.xi2);
  if (rho == 0.0) {
    return variance;
  }
  const double scale = std::pow(2.0, 1.0 - spec.nu) / std::tgamma(spec.nu);
  return scale * variance * std::pow(rho, spec.nu) * std::cyl_bessel_k(spec.nu, rho);
}

Eigen::Matrix2Xd sample_wave_vectors(const WmSpec& spec, int n_modes, std::mt19937_64& rng) {
  // In scaled coordinates t = (xi1 k1, xi2 k2) the spectral density is radial,
  // proportional to (1 + |t|^2)^-(nu + 1), with CDF 1 - (1 + s^2)^-nu in s = |t|.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::Matrix2Xd k(2, n_modes);
  for (int j = 0; j < n_modes; ++j) {
    const double u = unit(rng);
    const double s = std::sqrt(std::pow(1.0 - u, -1.0 / spec.nu) - 1.0);
    const double theta = kTwoPi * unit(rng);
    k(0, j) = s * std::cos(theta) / spec.xi1;
    k(1, j) = s * std::sin(theta) / spec.xi2;
  }
  return k;
}

GridField generate_field(const GridDims& dims, const WmSpec& spec, int n_modes, std::mt19937_64& rng) {
  spec.validate();
  if (n_modes < 100) {
    throw ConfigurationError("n_modes must be >= 100, got " + std::to_string(n_modes));
  }
  const Eigen::Matrix2Xd k = sample_wave_vectors(spec, n_modes, rng);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);

  const Eigen::ArrayXd xs = Eigen::ArrayXd::LinSpaced(dims.lx(), 0.0, static_cast<double>(dims.lx() - 1));
  const Eigen::ArrayXd ys = Eigen::ArrayXd::LinSpaced(dims.ly(), 0.0, static_cast<double>(dims.ly() - 1));

  // cos(kx x + ky y + psi) = cos(ky y) cos(kx x + psi) - sin(ky y) sin(kx x + psi)
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dims.ly(), dims.lx());
  for (int j = 0; j < n_modes; ++j) {
    const double psi = phase(rng);
    const Eigen::ArrayXd ax = k(0, j) * xs + psi;
    const Eigen::ArrayXd ay = k(1, j) * ys;
    sum.noalias() += ay.cos().matrix() * ax.cos().matrix().transpose();
    sum.noalias() -= ay.sin().matrix() * ax.sin().matrix().transpose();
  }

  GridField field = spec.m + spec.sigma * std::sqrt(2.0 / n_modes) * sum.array();
  if (spec.law == Law::lognormal) {
    field = field.exp();
  }
  return field;
}

Index thinning_count(const GridDims& dims, double p) {
  return static_cast<Index>(std::floor(p * static_cast<double>(dims.sites()) / 100.0));
}

void MaskSpec::validate(const GridDims& dims) const {
  if (kind == MaskKind::thinning) {
    if (!(p > 0.0 && p < 100.0)) {
      throw ConfigurationError("thinning percentage p must lie in (0, 100), got " + std::to_string(p));
    }
    if (thinning_count(dims, p) >= dims.sites()) {
      throw ConfigurationError("thinning would remove every site");
    }
  } else {
    if (block < 1 || block > dims.lx() || block > dims.ly()) {
      throw ConfigurationError("block side " + std::to_string(block) + " does not fit in the grid");
    }
    if (block * block >= dims.sites()) {
      throw ConfigurationError("block would remove every site");
    }
  }
}

ObservationMask make_mask(const GridDims& dims, const MaskSpec& spec, std::mt19937_64& rng) {
  spec.validate(dims);
  ObservationMask mask = ObservationMask::Constant(dims.ly(), dims.lx(), true);
  if (spec.kind == MaskKind::thinning) {
    const Index remove = thinning_count(dims, spec.p);
    std::vector<Index> order(static_cast<std::size_t>(dims.sites()));
    std::iota(order.begin(), order.end(), Index{0});
    // Partial Fisher-Yates: the first `remove` entries are a uniform subset.
    for (Index i = 0; i < remove; ++i) {
      std::uniform_int_distribution<Index> pick(i, dims.sites() - 1);
      std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(pick(rng))]);
      mask.data()[order[static_cast<std::size_t>(i)]] = false;
    }
  } else {
    std::uniform_int_distribution<Index> ax(0, dims.lx() - spec.block);
    std::uniform_int_distribution<Index> ay(0, dims.ly() - spec.block);
    const Index x0 = ax(rng);
    const Index y0 = ay(rng);
    mask.block(y0, x0, spec.block, spec.block).setConstant(false);
  }
  return mask;
}

std::string to_string(Law law) { return law == Law::gaussian ? "gaussian" : "lognormal"; }

Law parse_law(const std::string& s) {
  if (s == "gaussian") {
    return Law::gaussian;
  }
  if (s == "lognormal") {
    return Law::lognormal;
  }
  throw ConfigurationError("law must be 'gaussian' or 'lognormal', got '" + s + "'");
}

} // namespace gpr
