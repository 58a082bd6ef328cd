#include "sdiam/range_index.hpp"

#include <algorithm>
#include <string>

#include "sdiam/error.hpp"

namespace sdiam {

namespace {

constexpr std::size_t kScanCutoff = 12;

void check_coord(Coord c) {
  if (c > kCoordLimit || c < -kCoordLimit)
    throw Error(ErrorKind::kPrecondition,
                "range index coordinate out of range (unreachable distances must be filtered)");
}

void check_dim(int dim, int cap) {
  if (dim < 1) throw Error(ErrorKind::kPrecondition, "range index dimension must be at least 1");
  if (dim > cap)
    throw Error(ErrorKind::kApexCap,
                "range index dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(cap));
}

}  // namespace

void WeightedPointSet::add(std::span<const Coord> p, Coord weight) {
  if (static_cast<int>(p.size()) != dim)
    throw Error(ErrorKind::kPrecondition, "point dimension mismatch");
  coords.insert(coords.end(), p.begin(), p.end());
  weights.push_back(weight);
}

SuffixRangeMaxIndex SuffixRangeMaxIndex::build(const WeightedPointSet& points) {
  check_dim(points.dim, kMaxIndexDimension);
  if (points.coords.size() != points.size() * static_cast<std::size_t>(points.dim))
    throw Error(ErrorKind::kPrecondition, "point set coordinate count mismatch");
  for (Coord c : points.coords) check_coord(c);
  for (Coord w : points.weights) check_coord(w);

  SuffixRangeMaxIndex idx;
  idx.dim_ = points.dim;
  idx.size_ = points.size();
  if (idx.size_ == 0) return idx;
  std::vector<std::uint32_t> ids(points.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<std::uint32_t>(i);
  idx.layers_.emplace_back();
  Layer root = idx.make_layer(points, std::move(ids), 0);
  idx.layers_[0] = std::move(root);
  return idx;
}

SuffixRangeMaxIndex::Layer SuffixRangeMaxIndex::make_layer(const WeightedPointSet& points,
                                                           std::vector<std::uint32_t> ids,
                                                           int axis) {
  const auto d = static_cast<std::size_t>(points.dim);
  auto key = [&](std::uint32_t id) { return points.coords[id * d + axis]; };
  std::sort(ids.begin(), ids.end(), [&](std::uint32_t a, std::uint32_t b) {
    Coord ka = key(a), kb = key(b);
    return ka != kb ? ka < kb : a < b;
  });

  Layer layer;
  layer.axis = axis;
  layer.keys.reserve(ids.size());
  for (auto id : ids) layer.keys.push_back(key(id));

  if (axis == points.dim - 1) {
    layer.mode = Mode::kSuffix;
    layer.suffix_max.resize(ids.size());
    Coord best = points.weights[ids.back()];
    for (std::size_t i = ids.size(); i-- > 0;) {
      best = std::max(best, points.weights[ids[i]]);
      layer.suffix_max[i] = best;
    }
    return layer;
  }

  if (ids.size() <= kScanCutoff) {
    layer.mode = Mode::kScan;
    for (auto id : ids) {
      for (std::size_t a = axis; a < d; ++a) layer.rows.push_back(points.coords[id * d + a]);
      layer.weights.push_back(points.weights[id]);
    }
    return layer;
  }

  layer.mode = Mode::kTree;
  const std::size_t m = ids.size();
  layer.first_child = layers_.size();
  layers_.resize(layers_.size() + 2 * m - 1);

  // node j covers leaves below it; node ids are 1..2m-1, leaves m..2m-1
  std::vector<std::vector<std::uint32_t>> node_ids(2 * m);
  for (std::size_t j = 0; j < m; ++j) node_ids[m + j] = {ids[j]};
  for (std::size_t j = m - 1; j >= 1; --j) {
    auto& left = node_ids[2 * j];
    auto& right = node_ids[2 * j + 1];
    node_ids[j].reserve(left.size() + right.size());
    node_ids[j].insert(node_ids[j].end(), left.begin(), left.end());
    node_ids[j].insert(node_ids[j].end(), right.begin(), right.end());
  }
  for (std::size_t j = 1; j < 2 * m; ++j) {
    std::size_t slot = layer.first_child + j - 1;
    Layer child = make_layer(points, std::move(node_ids[j]), axis + 1);
    layers_[slot] = std::move(child);
  }
  return layer;
}

void SuffixRangeMaxIndex::query_layer(const Layer& layer, std::span<const Coord> lower,
                                      std::optional<Coord>& best) const {
  const std::size_t m = layer.keys.size();
  auto pos = static_cast<std::size_t>(
      std::lower_bound(layer.keys.begin(), layer.keys.end(), lower[layer.axis]) - layer.keys.begin());
  if (pos == m) return;

  switch (layer.mode) {
    case Mode::kSuffix: {
      Coord w = layer.suffix_max[pos];
      if (!best || w > *best) best = w;
      return;
    }
    case Mode::kScan: {
      const std::size_t width = static_cast<std::size_t>(dim_ - layer.axis);
      for (std::size_t i = pos; i < m; ++i) {
        const Coord* row = layer.rows.data() + i * width;
        bool inside = true;
        for (std::size_t a = 1; a < width && inside; ++a) inside = row[a] >= lower[layer.axis + a];
        if (inside && (!best || layer.weights[i] > *best)) best = layer.weights[i];
      }
      return;
    }
    case Mode::kTree: {
      std::size_t lo = pos + m, hi = 2 * m;
      while (lo < hi) {
        if (lo & 1) query_layer(layers_[layer.first_child + lo++ - 1], lower, best);
        if (hi & 1) query_layer(layers_[layer.first_child + --hi - 1], lower, best);
        lo >>= 1;
        hi >>= 1;
      }
      return;
    }
  }
}

std::optional<Coord> SuffixRangeMaxIndex::query(std::span<const Coord> lower) const {
  if (static_cast<int>(lower.size()) != dim_)
    throw Error(ErrorKind::kPrecondition, "query dimension mismatch");
  std::optional<Coord> best;
  if (size_ > 0) query_layer(layers_[0], lower, best);
  return best;
}

MaxMinIndex MaxMinIndex::build(int dim, std::span<const Coord> points) {
  check_dim(dim, kMaxIndexDimension + 1);
  const auto d = static_cast<std::size_t>(dim);
  if (points.size() % d != 0) throw Error(ErrorKind::kPrecondition, "point coordinate count mismatch");
  for (Coord c : points) check_coord(c);

  MaxMinIndex idx;
  idx.dim_ = dim;
  idx.size_ = points.size() / d;
  if (dim == 1) {
    for (Coord c : points)
      if (!idx.max_first_ || c > *idx.max_first_) idx.max_first_ = c;
    return idx;
  }
  idx.per_axis_.reserve(d);
  std::vector<Coord> diff(d - 1);
  for (std::size_t i = 0; i < d; ++i) {
    WeightedPointSet shifted(dim - 1);
    shifted.coords.reserve(idx.size_ * (d - 1));
    shifted.weights.reserve(idx.size_);
    for (std::size_t p = 0; p < idx.size_; ++p) {
      const Coord* v = points.data() + p * d;
      std::size_t out = 0;
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) diff[out++] = v[j] - v[i];
      shifted.add(diff, v[i]);
    }
    idx.per_axis_.push_back(SuffixRangeMaxIndex::build(shifted));
  }
  return idx;
}

std::optional<Coord> MaxMinIndex::query(std::span<const Coord> shifts) const {
  if (static_cast<int>(shifts.size()) != dim_)
    throw Error(ErrorKind::kPrecondition, "query dimension mismatch");
  if (dim_ == 1) {
    if (!max_first_) return std::nullopt;
    return *max_first_ + shifts[0];
  }
  const auto d = static_cast<std::size_t>(dim_);
  std::optional<Coord> best;
  Coord range[kMaxIndexDimension];
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t out = 0;
    for (std::size_t j = 0; j < d; ++j)
      if (j != i) range[out++] = shifts[i] - shifts[j];
    auto w = per_axis_[i].query(std::span<const Coord>(range, d - 1));
    if (w && (!best || *w + shifts[i] > *best)) best = *w + shifts[i];
  }
  return best;
}

}  // namespace sdiam
