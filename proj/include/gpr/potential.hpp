#ifndef GPR_POTENTIAL_HPP
#define GPR_POTENTIAL_HPP

#include "gpr/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace gpr {

/// Order sentinel for the infinite harmonic series.
inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

/// Shape of the pairwise potential: a normalized sum of n powers cos^k with
/// weights alpha^-k. (n = 1) or (alpha = inf) is the plain cosine potential.
struct PotentialParams {
  int n = 1;
  double alpha = std::numeric_limits<double>::infinity();

  /// Angle modification factor applied to spin differences.
  static constexpr double q = 0.5;

  bool infinite_order() const noexcept { return n == kInfiniteOrder; }
  bool is_cosine() const noexcept { return n == 1 || std::isinf(alpha); }

  void validate() const {
    if (n < 1) {
      throw ConfigurationError("potential order n must be >= 1, got " + std::to_string(n));
    }
    if (std::isnan(alpha) || (n > 1 && !(alpha > 1.0)) || (n == 1 && !(alpha > 0.0))) {
      throw ConfigurationError("potential decay rate alpha must be > 1, got " + std::to_string(alpha));
    }
  }
};

/// Weight normalization making alpha^-1 + ... + alpha^-n sum to one after scaling.
template <typename Scalar = double>
Scalar normalization(int n, Scalar alpha) {
  using std::expm1;
  using std::log;
  if (n == kInfiniteOrder) {
    return alpha - Scalar(1);
  }
  // 1 - alpha^-n, accurate for alpha close to 1.
  return (alpha - Scalar(1)) / -expm1(-Scalar(n) * log(alpha));
}

/// Closed-form evaluation of the potential in c = cos(q * (phi_i - phi_j)).
template <typename Scalar = double>
class PairPotential {
public:
  explicit PairPotential(const PotentialParams& params)
      : n_(params.n), alpha_(Scalar(params.alpha)), cosine_(params.is_cosine()) {
    params.validate();
    if (!cosine_) {
      norm_ = normalization<Scalar>(n_, alpha_);
    }
  }

  Scalar operator()(Scalar c) const {
    using std::expm1;
    using std::log;
    using std::pow;
    if (cosine_) {
      return c;
    }
    const Scalar gap = alpha_ - c;
    if (n_ == kInfiniteOrder) {
      return norm_ * c / gap;
    }
    if (gap < Scalar(1e-12)) {
      // alpha -> 1 and c -> 1: every normalized weight multiplies c^k ~ c.
      return c;
    }
    const Scalar r = c / alpha_;
    const Scalar one_minus_rn = r > Scalar(0) ? -expm1(Scalar(n_) * log(r)) : Scalar(1) - pow(r, n_);
    return norm_ * c * one_minus_rn / gap;
  }

private:
  int n_;
  Scalar alpha_;
  bool cosine_;
  Scalar norm_ = Scalar(1);
};

template <typename Scalar = double>
Scalar pair_potential(Scalar c, const PotentialParams& params) {
  return PairPotential<Scalar>(params)(c);
}

/// Direct normalized summation of the finite series; reference for testing
/// the closed forms. Supports 1 <= n <= 64 only.
template <typename Scalar = double>
Scalar series_oracle(Scalar c, int n, Scalar alpha) {
  using std::isinf;
  if (n < 1 || n > 64) {
    throw ConfigurationError("series oracle supports 1 <= n <= 64, got " +
                             (n == kInfiniteOrder ? std::string("inf") : std::to_string(n)));
  }
  if (isinf(alpha)) {
    return c;
  }
  Scalar weight = Scalar(1);
  Scalar power = Scalar(1);
  Scalar sum = Scalar(0);
  Scalar weights = Scalar(0);
  for (int k = 1; k <= n; ++k) {
    weight /= alpha;
    power *= c;
    sum += weight * power;
    weights += weight;
  }
  return sum / weights;
}

} // namespace gpr

#endif // GPR_POTENTIAL_HPP
