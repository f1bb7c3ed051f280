#include "gpr/grid.hpp"

#include "gpr/error.hpp"

#include <string>

namespace gpr {

namespace {

constexpr std::array<Offset, 2> kNnX{{{-1, 0}, {1, 0}}};
constexpr std::array<Offset, 2> kNnY{{{0, -1}, {0, 1}}};
constexpr std::array<Offset, 8> kFn{{{-2, -1}, {-2, 1}, {-1, -2}, {-1, 2}, {1, -2}, {1, 2}, {2, -1}, {2, 1}}};

bool positive(const Offset& o) noexcept { return o.dx > 0 || (o.dx == 0 && o.dy > 0); }

} // namespace

GridDims::GridDims(Index lx, Index ly) : lx_(lx), ly_(ly) {
  if (lx < 2 || ly < 2) {
    throw DimensionError("grid sides must be at least 2, got " + std::to_string(lx) + "x" +
                         std::to_string(ly));
  }
}

std::span<const Offset> bond_offsets(Bond bond) noexcept {
  switch (bond) {
  case Bond::nn_x:
    return kNnX;
  case Bond::nn_y:
    return kNnY;
  case Bond::fn:
    return kFn;
  }
  return {};
}

NeighborTables::NeighborTables(const GridDims& dims) : dims_(dims) {
  for (Bond bond : kAllBonds) {
    auto& pairs = pairs_[index(bond)];
    auto& adj = adjacency_[index(bond)];
    adj.start.assign(static_cast<std::size_t>(dims.sites()) + 1, 0);
    for (Index site = 0; site < dims.sites(); ++site) {
      const Index x = dims.x_of(site);
      const Index y = dims.y_of(site);
      for (const Offset& o : bond_offsets(bond)) {
        if (!dims.contains(x + o.dx, y + o.dy)) {
          continue;
        }
        const Index other = dims.index(x + o.dx, y + o.dy);
        adj.sites.push_back(other);
        if (positive(o)) {
          pairs.push_back({site, other});
        }
      }
      adj.start[site + 1] = static_cast<Index>(adj.sites.size());
    }
  }
}

CheckerboardPartition::CheckerboardPartition(const GridDims& dims) : dims_(dims) {
  a_.reserve(static_cast<std::size_t>(dims.sites() / 2 + 1));
  b_.reserve(static_cast<std::size_t>(dims.sites() / 2 + 1));
  for (Index site = 0; site < dims.sites(); ++site) {
    (parity(site) == Parity::A ? a_ : b_).push_back(site);
  }
}

MaskCounts validate_mask(const ObservationMask& mask, const GridDims& dims) {
  if (!dims.matches(mask)) {
    throw DimensionError("mask is " + std::to_string(mask.cols()) + "x" + std::to_string(mask.rows()) +
                         " but grid is " + std::to_string(dims.lx()) + "x" + std::to_string(dims.ly()));
  }
  const Index observed = mask.count();
  if (observed == 0) {
    throw EmptySampleError("mask has no observed sites");
  }
  return {observed, dims.sites() - observed};
}

std::vector<Index> observed_sites(const ObservationMask& mask) {
  std::vector<Index> out;
  for (Index i = 0; i < mask.size(); ++i) {
    if (mask.data()[i]) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<Index> missing_sites(const ObservationMask& mask) {
  std::vector<Index> out;
  for (Index i = 0; i < mask.size(); ++i) {
    if (!mask.data()[i]) {
      out.push_back(i);
    }
  }
  return out;
}

} // namespace gpr
