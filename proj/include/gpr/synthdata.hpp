#ifndef GPR_SYNTHDATA_HPP
#define GPR_SYNTHDATA_HPP

#include "gpr/grid.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <random>
#include <string>

namespace gpr {

enum class Law { gaussian, lognormal };

/// Whittle-Matern random field. For the lognormal law, m and sigma describe log Z.
struct WmSpec {
  double m = 5.0;
  double sigma = 2.0;
  double nu = 2.5;
  double xi1 = 2.0; ///< correlation length along x
  double xi2 = 2.0; ///< correlation length along y
  Law law = Law::gaussian;

  /// Throws ConfigurationError naming the offending field.
  void validate() const;
};

inline constexpr int kDefaultModes = 1000;

/// Whittle-Matern covariance at lag (u1, u2) in grid units.
double wm_covariance(double u1, double u2, const WmSpec& spec);

inline double wm_covariance(const Eigen::Vector2d& lag, const WmSpec& spec) {
  return wm_covariance(lag.x(), lag.y(), spec);
}

/// Wave vectors drawn from the normalized spectral density of the covariance.
Eigen::Matrix2Xd sample_wave_vectors(const WmSpec& spec, int n_modes, std::mt19937_64& rng);

/// Spectral mode superposition: m + sigma sqrt(2/M) sum_j cos(k_j . r + psi_j),
/// exponentiated for the lognormal law. Requires n_modes >= 100.
GridField generate_field(const GridDims& dims, const WmSpec& spec, int n_modes, std::mt19937_64& rng);

enum class MaskKind { thinning, block };

struct MaskSpec {
  MaskKind kind = MaskKind::thinning;
  double p = 33.0;   ///< percent removed, thinning only
  Index block = 20;  ///< side L_B, block only
  std::uint64_t seed = 0;

  void validate(const GridDims& dims) const;
};

/// Number of sites removed by thinning p percent of the grid: floor(p/100 * N_G).
Index thinning_count(const GridDims& dims, double p);

ObservationMask make_mask(const GridDims& dims, const MaskSpec& spec, std::mt19937_64& rng);

inline ObservationMask make_mask(const GridDims& dims, const MaskSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  return make_mask(dims, spec, rng);
}

std::string to_string(Law law);
Law parse_law(const std::string& s);

} // namespace gpr

#endif // GPR_SYNTHDATA_HPP
