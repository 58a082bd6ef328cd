#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sdiam {

using Coord = std::int64_t;

/// Largest dimension a SuffixRangeMaxIndex accepts. A MaxMinIndex of
/// dimension d builds sub-indices of dimension d - 1, so it accepts one more.
inline constexpr int kMaxIndexDimension = 8;

/// Coordinates must lie in [-kCoordLimit, kCoordLimit] so that differences and
/// shifted sums cannot overflow.
inline constexpr Coord kCoordLimit = Coord{1} << 60;

/// Points in Z^d, stored row-major, each carrying an integer weight.
struct WeightedPointSet {
  int dim = 1;
  std::vector<Coord> coords;
  std::vector<Coord> weights;

  explicit WeightedPointSet(int d = 1) : dim(d) {}

  std::size_t size() const { return weights.size(); }
  std::span<const Coord> point(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
  void add(std::span<const Coord> p, Coord weight);
};

/// Static index answering: max w(v) over points v with v_i >= r_i for all i.
///
/// Layered range tree: each layer sorts its points on one axis and keeps a
/// bottom-up segment tree over that order whose nodes hold a layer for the next
/// axis. The last axis is a sorted suffix-maximum array; small layers fall back
/// to a scan. Build is O(n log^{d-1} n), query O(log^{d-1} n).
class SuffixRangeMaxIndex {
 public:
  SuffixRangeMaxIndex() = default;

  static SuffixRangeMaxIndex build(const WeightedPointSet& points);

  int dimension() const { return dim_; }
  std::size_t size() const { return size_; }

  std::optional<Coord> query(std::span<const Coord> lower) const;

 private:
  enum class Mode : std::uint8_t { kSuffix, kScan, kTree };

  struct Layer {
    Mode mode = Mode::kScan;
    int axis = 0;
    std::vector<Coord> keys;
    std::vector<Coord> suffix_max;  // kSuffix
    std::vector<Coord> rows;        // kScan: coordinates axis..dim-1 per point
    std::vector<Coord> weights;     // kScan
    std::size_t first_child = 0;    // kTree: segment tree nodes 1..2m-1
  };

  Layer make_layer(const WeightedPointSet& points, std::vector<std::uint32_t> ids, int axis);
  void query_layer(const Layer& layer, std::span<const Coord> lower,
                   std::optional<Coord>& best) const;

  int dim_ = 1;
  std::size_t size_ = 0;
  std::vector<Layer> layers_;  // layers_[0] is the root when size_ > 0
};

/// Static index answering max_v min_i (v_i + r_i) through d suffix-range
/// sub-indices: sub-index i stores the differences (v_j - v_i)_{j != i} with
/// weight v_i and is queried on the range (r_i - r_j)_{j != i}.
class MaxMinIndex {
 public:
  MaxMinIndex() = default;

  /// points is row-major with `dim` coordinates per point.
  static MaxMinIndex build(int dim, std::span<const Coord> points);

  int dimension() const { return dim_; }
  std::size_t size() const { return size_; }

  std::optional<Coord> query(std::span<const Coord> shifts) const;

 private:
  int dim_ = 1;
  std::size_t size_ = 0;
  std::optional<Coord> max_first_;  // dim == 1
  std::vector<SuffixRangeMaxIndex> per_axis_;
};

}  // namespace sdiam
