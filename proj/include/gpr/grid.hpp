#ifndef GPR_GRID_HPP
#define GPR_GRID_HPP

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace gpr {

using Index = Eigen::Index;

/// Dense lattice field stored row-major: row = y, column = x, so that the flat
/// storage index of (x, y) is y * lx + x.
template <typename Scalar>
using Field = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using GridField = Field<double>;

/// true = observed (sample site), false = missing (prediction site).
using ObservationMask = Field<bool>;

class GridDims {
public:
  /// Throws DimensionError unless both sides are at least 2.
  GridDims(Index lx, Index ly);

  Index lx() const noexcept { return lx_; }
  Index ly() const noexcept { return ly_; }
  Index sites() const noexcept { return lx_ * ly_; }

  Index index(Index x, Index y) const noexcept { return y * lx_ + x; }
  Index x_of(Index site) const noexcept { return site % lx_; }
  Index y_of(Index site) const noexcept { return site / lx_; }
  bool contains(Index x, Index y) const noexcept { return x >= 0 && x < lx_ && y >= 0 && y < ly_; }

  template <typename Derived>
  bool matches(const Eigen::DenseBase<Derived>& f) const noexcept {
    return f.rows() == ly_ && f.cols() == lx_;
  }

  friend bool operator==(const GridDims&, const GridDims&) = default;

private:
  Index lx_;
  Index ly_;
};

template <typename Scalar>
Field<Scalar> make_field(const GridDims& dims, Scalar value) {
  return Field<Scalar>::Constant(dims.ly(), dims.lx(), value);
}

enum class Parity : std::uint8_t { A = 0, B = 1 };

/// Interaction classes: nearest neighbours along x and y, and the eight
/// knight's-move further neighbours.
enum class Bond : std::uint8_t { nn_x = 0, nn_y = 1, fn = 2 };

inline constexpr std::array<Bond, 3> kAllBonds{Bond::nn_x, Bond::nn_y, Bond::fn};

struct Offset {
  int dx;
  int dy;
};

/// Offsets of each class, lexicographic in (dx, dy).
std::span<const Offset> bond_offsets(Bond bond) noexcept;

struct SitePair {
  Index first;
  Index second;
  friend bool operator==(const SitePair&, const SitePair&) = default;
};

/// Compressed per-site adjacency (CSR).
struct Adjacency {
  std::vector<Index> start; // size sites + 1
  std::vector<Index> sites;

  std::span<const Index> of(Index site) const noexcept {
    return {sites.data() + start[site], static_cast<std::size_t>(start[site + 1] - start[site])};
  }
  Index degree(Index site) const noexcept { return start[site + 1] - start[site]; }
};

/// Neighbour lists for all three interaction classes with free boundaries.
/// Each unordered pair is stored once in `pairs`, with `first` the site from
/// which the pair is reached by a positive offset (dx > 0, or dx == 0 and dy > 0).
class NeighborTables {
public:
  explicit NeighborTables(const GridDims& dims);

  const GridDims& dims() const noexcept { return dims_; }
  const std::vector<SitePair>& pairs(Bond bond) const noexcept { return pairs_[index(bond)]; }
  std::span<const Index> neighbors(Bond bond, Index site) const noexcept {
    return adjacency_[index(bond)].of(site);
  }
  Index degree(Bond bond, Index site) const noexcept { return adjacency_[index(bond)].degree(site); }

private:
  static constexpr std::size_t index(Bond b) noexcept { return static_cast<std::size_t>(b); }

  GridDims dims_;
  std::array<std::vector<SitePair>, 3> pairs_;
  std::array<Adjacency, 3> adjacency_;
};

inline NeighborTables build_neighbor_tables(const GridDims& dims) { return NeighborTables(dims); }

/// Two interpenetrating sublattices by coordinate parity (x + y) mod 2.
class CheckerboardPartition {
public:
  explicit CheckerboardPartition(const GridDims& dims);

  Parity parity(Index site) const noexcept {
    return ((dims_.x_of(site) + dims_.y_of(site)) & 1) == 0 ? Parity::A : Parity::B;
  }
  const std::vector<Index>& sites(Parity p) const noexcept {
    return p == Parity::A ? a_ : b_;
  }

private:
  GridDims dims_;
  std::vector<Index> a_;
  std::vector<Index> b_;
};

inline CheckerboardPartition checkerboard_partition(const GridDims& dims) {
  return CheckerboardPartition(dims);
}

struct MaskCounts {
  Index observed; // N
  Index missing;  // P
};

/// Throws DimensionError on shape mismatch and EmptySampleError when nothing is observed.
MaskCounts validate_mask(const ObservationMask& mask, const GridDims& dims);

std::vector<Index> observed_sites(const ObservationMask& mask);
std::vector<Index> missing_sites(const ObservationMask& mask);

} // namespace gpr

#endif // GPR_GRID_HPP
