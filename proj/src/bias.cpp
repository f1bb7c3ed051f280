#include "gpr/bias.hpp"

#include "gpr/error.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <string>
#include <vector>

namespace gpr {

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

constexpr Index kMinObserved = 4;

} // namespace

GridField biharmonic_fill(const GridField& values, const ObservationMask& mask) {
  const GridDims dims(values.cols(), values.rows());
  const MaskCounts counts = validate_mask(mask, dims);
  if (counts.observed < kMinObserved) {
    throw EmptySampleError("biharmonic fill needs at least " + std::to_string(kMinObserved) +
                           " observed sites, got " + std::to_string(counts.observed));
  }
  GridField out = values;
  if (counts.missing == 0) {
    return out;
  }

  // Column of each missing site in the unknown vector, -1 for observed sites.
  std::vector<Index> column(static_cast<std::size_t>(dims.sites()), -1);
  Index unknowns = 0;
  for (Index i = 0; i < dims.sites(); ++i) {
    if (!mask.data()[i]) {
      column[static_cast<std::size_t>(i)] = unknowns++;
    }
  }

  // One Laplacian row per site using whichever second differences fit on the
  // grid; rows touching no unknown are constant and dropped.
  std::vector<Triplet> triplets;
  std::vector<double> constants;
  Index row = 0;
  std::vector<std::pair<Index, double>> stencil;
  for (Index y = 0; y < dims.ly(); ++y) {
    for (Index x = 0; x < dims.lx(); ++x) {
      stencil.clear();
      const bool in_x = x > 0 && x + 1 < dims.lx();
      const bool in_y = y > 0 && y + 1 < dims.ly();
      if (!in_x && !in_y) {
        continue;
      }
      double centre = 0.0;
      if (in_x) {
        stencil.emplace_back(dims.index(x - 1, y), 1.0);
        stencil.emplace_back(dims.index(x + 1, y), 1.0);
        centre -= 2.0;
      }
      if (in_y) {
        stencil.emplace_back(dims.index(x, y - 1), 1.0);
        stencil.emplace_back(dims.index(x, y + 1), 1.0);
        centre -= 2.0;
      }
      stencil.emplace_back(dims.index(x, y), centre);

      double constant = 0.0;
      bool touches = false;
      for (auto [site, w] : stencil) {
        const Index col = column[static_cast<std::size_t>(site)];
        if (col < 0) {
          constant += w * values.data()[site];
        } else {
          triplets.emplace_back(row, col, w);
          touches = true;
        }
      }
      if (!touches) {
        continue;
      }
      constants.push_back(constant);
      ++row;
    }
  }

  SparseMatrix D(row, unknowns);
  D.setFromTriplets(triplets.begin(), triplets.end());
  const Eigen::Map<const Eigen::VectorXd> r(constants.data(), static_cast<Index>(constants.size()));

  SparseMatrix normal = SparseMatrix(D.transpose()) * D;
  const Eigen::VectorXd rhs = -(D.transpose() * r);

  Eigen::SimplicialLDLT<SparseMatrix> solver(normal);
  Eigen::VectorXd u;
  if (solver.info() == Eigen::Success) {
    u = solver.solve(rhs);
  }
  if (solver.info() != Eigen::Success || !u.allFinite()) {
    // Unknowns not pinned by any observed data; a tiny ridge selects the
    // minimum-norm solution without disturbing well-posed parts.
    SparseMatrix ridge(unknowns, unknowns);
    ridge.setIdentity();
    normal += 1e-10 * ridge;
    solver.compute(normal);
    if (solver.info() != Eigen::Success) {
      throw Error("biharmonic fill: factorization failed");
    }
    u = solver.solve(rhs);
  }

  for (Index i = 0; i < dims.sites(); ++i) {
    const Index col = column[static_cast<std::size_t>(i)];
    if (col >= 0) {
      out.data()[i] = u[col];
    }
  }
  return out;
}

BiasInterpolation BiharmonicInpainter::interpolate(const SpinField& sample_angles) const {
  const GridField filled = biharmonic_fill(sample_angles.mask.select(sample_angles.angles, 0.0), sample_angles.mask);
  BiasInterpolation result{filled, 0};
  for (Index i = 0; i < filled.size(); ++i) {
    double& h = result.field.data()[i];
    if (sample_angles.mask.data()[i]) {
      h = sample_angles.angles.data()[i];
    } else if (h < 0.0 || h > kTwoPi) {
      h = std::clamp(h, 0.0, kTwoPi);
      ++result.clamped;
    }
  }
  return result;
}

const BiasProvider& default_bias_provider() {
  static const BiharmonicInpainter provider;
  return provider;
}

BiasField interpolate_bias(const SpinField& sample_angles, const BiasProvider& provider) {
  return provider.interpolate(sample_angles).field;
}

GridField pure_bias_predict(const GridField& sample, const ObservationMask& mask, const BiasProvider& provider) {
  auto [spins, spec] = to_spin_angles(sample, mask);
  SpinField bias{interpolate_bias(spins, provider), mask};
  GridField values = from_spin_angles(bias, spec);
  return mask.select(GridField::Constant(values.rows(), values.cols(), std::numeric_limits<double>::quiet_NaN()),
                     values);
}

} // namespace gpr
