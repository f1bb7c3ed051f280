#include "doctest.h"

#include "test_support.hpp"

#include "gpr/error.hpp"
#include "gpr/synthdata.hpp"

#include <cmath>
#include <string>
#include <vector>

using namespace gpr;
using doctest::Approx;

namespace {

// Spatial average of (Z(r) - m)(Z(r + u) - m) over every pair inside the grid.
double lag_product(const GridField& z, double m, Index ux, Index uy) {
  const Index rows = z.rows() - uy;
  const Index cols = z.cols() - ux;
  const auto a = z.block(0, 0, rows, cols) - m;
  const auto b = z.block(uy, ux, rows, cols) - m;
  return (a * b).mean();
}

} // namespace

TEST_CASE("covariance closed forms for half-integer smoothness") {
  // rho^nu K_nu(rho) reduces to elementary functions for nu = 1/2, 3/2, 5/2.
  for (double rho : {0.1, 0.5, 1.0, 2.0, 4.5}) {
    const double e = std::exp(-rho);
    WmSpec s;
    s.sigma = 1.5;
    s.xi1 = s.xi2 = 1.0;
    s.nu = 0.5;
    CHECK(wm_covariance(rho, 0.0, s) == Approx(2.25 * e).epsilon(1e-10));
    s.nu = 1.5;
    CHECK(wm_covariance(0.0, rho, s) == Approx(2.25 * (1.0 + rho) * e).epsilon(1e-10));
    s.nu = 2.5;
    CHECK(wm_covariance(rho, 0.0, s) == Approx(2.25 * (1.0 + rho + rho * rho / 3.0) * e).epsilon(1e-10));
  }
}

TEST_CASE("covariance at the origin and one correlation length") {
  WmSpec s;
  s.sigma = 2.0;
  s.nu = 0.5;
  s.xi1 = 3.0;
  CHECK(wm_covariance(0.0, 0.0, s) == 4.0);
  CHECK(wm_covariance(3.0, 0.0, s) == Approx(4.0 * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("covariance is symmetric and decreasing in the scaled distance") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::uniform_real_distribution<double> pos(0.3, 5.0);
  for (int trial = 0; trial < 500; ++trial) {
    WmSpec s;
    s.nu = pos(rng);
    s.xi1 = pos(rng);
    s.xi2 = pos(rng);
    const double a = u(rng);
    const double b = u(rng);
    const double g = wm_covariance(a, b, s);
    CHECK(g == Approx(wm_covariance(-a, -b, s)).epsilon(1e-14));
    CHECK(g <= s.sigma * s.sigma);
    CHECK(wm_covariance(1.1 * a, 1.1 * b, s) <= g);
    CHECK(wm_covariance(Eigen::Vector2d(a, b), s) == g);
  }
}

TEST_CASE("parameter validation names the offending field") {
  const auto message = [](WmSpec s) {
    try {
      s.validate();
    } catch (const ConfigurationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  WmSpec s;
  s.sigma = 0.0;
  CHECK(message(s).find("sigma") != std::string::npos);
  s = WmSpec{};
  s.nu = -1.0;
  CHECK(message(s).find("nu") != std::string::npos);
  s = WmSpec{};
  s.xi2 = 0.0;
  CHECK(message(s).find("xi2") != std::string::npos);
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(generate_field(GridDims(8, 8), WmSpec{}, 99, rng), ConfigurationError);
}

TEST_CASE("ensemble moments of the generated field") {
  const GridDims dims(64, 64);
  const WmSpec spec;
  const int realizations = 100;
  std::mt19937_64 rng(2024);
  const std::vector<std::pair<Index, Index>> lags{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {3, 0}, {0, 4}};
  std::vector<double> means;
  std::vector<std::vector<double>> products(lags.size());
  for (int r = 0; r < realizations; ++r) {
    const GridField z = generate_field(dims, spec, kDefaultModes, rng);
    means.push_back(z.mean());
    for (std::size_t k = 0; k < lags.size(); ++k) {
      products[k].push_back(lag_product(z, spec.m, lags[k].first, lags[k].second));
    }
  }
  CHECK(std::abs(test::mean(means) - spec.m) <= 3.0 * test::standard_error(means));
  for (std::size_t k = 0; k < lags.size(); ++k) {
    const double target = wm_covariance(static_cast<double>(lags[k].first), static_cast<double>(lags[k].second), spec);
    CAPTURE(k);
    CHECK(std::abs(test::mean(products[k]) - target) <= 3.0 * test::standard_error(products[k]));
  }
}

TEST_CASE("correlation is longer along the longer correlation length") {
  const GridDims dims(64, 64);
  WmSpec spec;
  spec.xi1 = 4.0;
  spec.xi2 = 2.0;
  std::mt19937_64 rng(77);
  std::vector<double> diff;
  for (int r = 0; r < 50; ++r) {
    const GridField z = generate_field(dims, spec, kDefaultModes, rng);
    diff.push_back(lag_product(z, spec.m, 2, 0) - lag_product(z, spec.m, 0, 2));
  }
  CHECK(test::mean(diff) > 3.0 * test::standard_error(diff));
}

TEST_CASE("lognormal fields are positive with a Gaussian logarithm") {
  const GridDims dims(32, 32);
  WmSpec spec;
  spec.law = Law::lognormal;
  std::mt19937_64 rng(5);
  std::vector<double> log_means;
  for (int r = 0; r < 60; ++r) {
    const GridField z = generate_field(dims, spec, kDefaultModes, rng);
    CHECK((z > 0.0).all());
    log_means.push_back(z.log().mean());
  }
  CHECK(std::abs(test::mean(log_means) - spec.m) <= 3.0 * test::standard_error(log_means));
}

TEST_CASE("same seed, same field") {
  const GridDims dims(20, 16);
  std::mt19937_64 a(9);
  std::mt19937_64 b(9);
  CHECK((generate_field(dims, WmSpec{}, 200, a) == generate_field(dims, WmSpec{}, 200, b)).all());
}

TEST_CASE("masks") {
  const GridDims dims(64, 64);
  SUBCASE("thinning removes exactly floor(p N / 100) sites") {
    std::mt19937_64 rng(1);
    for (double p : {1.0, 10.0, 33.0, 50.0, 66.0, 99.0}) {
      const auto m = make_mask(dims, MaskSpec{.kind = MaskKind::thinning, .p = p}, rng);
      CHECK(static_cast<Index>((!m).count()) == thinning_count(dims, p));
    }
    CHECK(thinning_count(dims, 33.0) == 1351);
    CHECK(thinning_count(dims, 66.0) == 2703);
  }
  SUBCASE("block is a contiguous square inside the grid") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto m = make_mask(dims, MaskSpec{.kind = MaskKind::block, .block = 20, .seed = seed});
      CHECK((!m).count() == 400);
      Index x0 = dims.lx();
      Index y0 = dims.ly();
      for (Index y = 0; y < dims.ly(); ++y) {
        for (Index x = 0; x < dims.lx(); ++x) {
          if (!m(y, x)) {
            x0 = std::min(x0, x);
            y0 = std::min(y0, y);
          }
        }
      }
      CHECK((!m.block(y0, x0, 20, 20)).all());
    }
  }
  SUBCASE("deterministic under a seed") {
    const MaskSpec spec{.kind = MaskKind::thinning, .p = 33, .seed = 42};
    CHECK((make_mask(dims, spec) == make_mask(dims, spec)).all());
    const MaskSpec other{.kind = MaskKind::thinning, .p = 33, .seed = 43};
    CHECK_FALSE((make_mask(dims, spec) == make_mask(dims, other)).all());
  }
  SUBCASE("invalid specifications") {
    CHECK_THROWS_AS(make_mask(dims, MaskSpec{.kind = MaskKind::thinning, .p = 0}), ConfigurationError);
    CHECK_THROWS_AS(make_mask(dims, MaskSpec{.kind = MaskKind::thinning, .p = 100}), ConfigurationError);
    CHECK_THROWS_AS(make_mask(dims, MaskSpec{.kind = MaskKind::block, .block = 65}), ConfigurationError);
  }
}

TEST_CASE("law names") {
  CHECK(parse_law(to_string(Law::lognormal)) == Law::lognormal);
  CHECK(parse_law("gaussian") == Law::gaussian);
  CHECK_THROWS_AS(parse_law("uniform"), ConfigurationError);
}
