#include "sdiam/division.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sdiam/error.hpp"

namespace sdiam {

std::size_t RDivision::boundary_sum() const {
  std::size_t total = 0;
  for (const auto& b : boundary) total += b.size();
  return total;
}

std::size_t RDivision::max_region_size() const {
  std::size_t best = 0;
  for (const auto& r : regions) best = std::max(best, r.size());
  return best;
}

namespace {

std::vector<Vertex> compute_boundary(const Graph& g, std::span<const Vertex> region,
                                     std::span<const std::uint8_t> excluded,
                                     std::vector<std::uint32_t>& stamp, std::uint32_t tag) {
  for (Vertex v : region) stamp[v] = tag;
  std::vector<Vertex> out;
  for (Vertex v : region) {
    for (Vertex w : g.neighbors(v)) {
      if (!excluded[w] && stamp[w] != tag) {
        out.push_back(v);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Connectivity of G[region] minus excluded vertices, in O(sum of degrees).
bool region_connected(const Graph& g, std::span<const Vertex> region,
                      std::span<const std::uint8_t> excluded, std::vector<std::uint32_t>& member,
                      std::vector<std::uint32_t>& visit, std::uint32_t tag) {
  std::size_t expected = 0;
  Vertex start = -1;
  for (Vertex v : region) {
    if (excluded[v]) continue;
    member[v] = tag;
    ++expected;
    if (start < 0) start = v;
  }
  if (start < 0) return true;
  std::vector<Vertex> queue{start};
  visit[start] = tag;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Vertex w : g.neighbors(queue[head]))
      if (member[w] == tag && visit[w] != tag) {
        visit[w] = tag;
        queue.push_back(w);
      }
  return queue.size() == expected;
}

// BFS over vertices with label[v] == want; returns visit order and levels.
struct LevelBfs {
  std::vector<Vertex> order;
  std::vector<std::int32_t> level_start;  // order index where each level begins
};

LevelBfs bfs_levels(const Graph& g, Vertex source, std::span<const std::int32_t> label,
                    std::int32_t want, std::vector<std::uint32_t>& seen, std::uint32_t tag) {
  LevelBfs out;
  out.order.push_back(source);
  seen[source] = tag;
  std::size_t head = 0;
  out.level_start.push_back(0);
  std::size_t level_end = 1;
  while (head < out.order.size()) {
    if (head == level_end) {
      out.level_start.push_back(static_cast<std::int32_t>(head));
      level_end = out.order.size();
    }
    Vertex u = out.order[head++];
    for (Vertex v : g.neighbors(u)) {
      if (label[v] != want || seen[v] == tag) continue;
      seen[v] = tag;
      out.order.push_back(v);
    }
  }
  out.level_start.push_back(static_cast<std::int32_t>(out.order.size()));
  return out;
}

class Divider {
 public:
  Divider(const Graph& g, std::int64_t r, std::span<const std::uint8_t> excluded)
      : g_(g), r_(r), excluded_(excluded), label_(static_cast<std::size_t>(g.n()), -1),
        seen_(static_cast<std::size_t>(g.n()), 0) {}

  std::vector<std::vector<Vertex>> run() {
    for (Vertex v = 0; v < g_.n(); ++v)
      if (!excluded_[v]) label_[v] = kOpen;
    for (Vertex v = 0; v < g_.n(); ++v)
      if (label_[v] == kOpen) work_.push_back(extract_component(v, kOpen));
    while (!work_.empty()) {
      auto piece = std::move(work_.back());
      work_.pop_back();
      split(std::move(piece));
    }
    return assemble();
  }

 private:
  static constexpr std::int32_t kOpen = -2;
  static constexpr std::int32_t kSeparator = -3;

  // Relabels the component of `from` (among vertices labelled `want`) with a
  // fresh pending label and returns it sorted.
  std::vector<Vertex> extract_component(Vertex from, std::int32_t want) {
    auto bfs = bfs_levels(g_, from, label_, want, seen_, ++tag_);
    std::int32_t pending = next_pending_--;
    for (Vertex v : bfs.order) label_[v] = pending;
    std::sort(bfs.order.begin(), bfs.order.end());
    return std::move(bfs.order);
  }

  void split(std::vector<Vertex> piece) {
    const std::int32_t lbl = label_[piece.front()];
    if (static_cast<std::int64_t>(piece.size()) <= r_) {
      const auto id = static_cast<std::int32_t>(pieces_.size());
      for (Vertex v : piece) label_[v] = id;
      pieces_.push_back(std::move(piece));
      return;
    }
    // double sweep for a pseudo-peripheral root
    auto first = bfs_levels(g_, piece.front(), label_, lbl, seen_, ++tag_);
    Vertex far = *std::min_element(first.order.begin() + first.level_start[first.level_start.size() - 2],
                                   first.order.end());
    auto levels = bfs_levels(g_, far, label_, lbl, seen_, ++tag_);

    const std::size_t total = piece.size();
    const std::size_t height = levels.level_start.size() - 1;
    auto level_size = [&](std::size_t i) {
      return static_cast<std::size_t>(levels.level_start[i + 1] - levels.level_start[i]);
    };
    std::size_t chosen = height;
    std::size_t best_size = 0, best_balance = 0;
    const std::size_t cap = (2 * total) / 3;
    for (std::size_t i = 1; i + 1 < height; ++i) {
      std::size_t below = static_cast<std::size_t>(levels.level_start[i]);
      std::size_t above = total - below - level_size(i);
      if (below > cap || above > cap) continue;
      std::size_t balance = std::max(below, above);
      if (chosen == height || level_size(i) < best_size ||
          (level_size(i) == best_size && balance < best_balance)) {
        chosen = i;
        best_size = level_size(i);
        best_balance = balance;
      }
    }
    if (chosen == height) {
      for (std::size_t i = 0; i < height; ++i) {
        std::size_t below = static_cast<std::size_t>(levels.level_start[i]);
        std::size_t balance = std::max(below, total - below - level_size(i));
        if (chosen == height || balance < best_balance ||
            (balance == best_balance && level_size(i) < best_size)) {
          chosen = i;
          best_size = level_size(i);
          best_balance = balance;
        }
      }
    }
    for (auto i = levels.level_start[chosen]; i < levels.level_start[chosen + 1]; ++i) {
      label_[levels.order[i]] = kSeparator;
      separators_.push_back(levels.order[i]);
    }
    for (Vertex v : piece)
      if (label_[v] == lbl) work_.push_back(extract_component(v, lbl));
  }

  std::vector<std::vector<Vertex>> assemble() {
    // attach separator vertices to an adjacent piece with spare room
    std::sort(separators_.begin(), separators_.end());
    bool changed = true;
    while (changed) {
      changed = false;
      for (Vertex v : separators_) {
        if (label_[v] != kSeparator) continue;
        std::int32_t target = -1;
        for (Vertex w : g_.neighbors(v)) {
          std::int32_t p = label_[w];
          if (p < 0 || static_cast<std::int64_t>(pieces_[p].size()) >= r_) continue;
          if (target < 0 || pieces_[p].size() < pieces_[target].size() ||
              (pieces_[p].size() == pieces_[target].size() && p < target))
            target = p;
        }
        if (target >= 0) {
          label_[v] = target;
          pieces_[target].push_back(v);
          changed = true;
        }
      }
    }
    // leftovers become their own regions: BFS prefixes of at most r vertices
    for (Vertex v : separators_) {
      while (label_[v] == kSeparator) {
        auto bfs = bfs_levels(g_, v, label_, kSeparator, seen_, ++tag_);
        if (static_cast<std::int64_t>(bfs.order.size()) > r_) bfs.order.resize(static_cast<std::size_t>(r_));
        const auto id = static_cast<std::int32_t>(pieces_.size());
        for (Vertex w : bfs.order) label_[w] = id;
        pieces_.push_back(std::move(bfs.order));
      }
    }
    for (auto& p : pieces_) std::sort(p.begin(), p.end());
    return std::move(pieces_);
  }

  const Graph& g_;
  std::int64_t r_;
  std::span<const std::uint8_t> excluded_;
  std::vector<std::int32_t> label_;  // >= 0 final piece, kOpen/pending (< -3) while splitting
  std::vector<std::uint32_t> seen_;
  std::uint32_t tag_ = 0;
  std::int32_t next_pending_ = -4;
  std::vector<std::vector<Vertex>> work_;
  std::vector<std::vector<Vertex>> pieces_;
  std::vector<Vertex> separators_;
};

}  // namespace

RDivision RDivision::from_regions(const Graph& g, std::vector<std::vector<Vertex>> regions,
                                  std::span<const Vertex> excluded) {
  RDivision div;
  div.excluded = make_mask(g.n(), excluded);
  div.regions = std::move(regions);
  div.home.assign(static_cast<std::size_t>(g.n()), -1);
  std::vector<std::uint32_t> stamp(static_cast<std::size_t>(g.n()), 0);
  for (std::size_t i = 0; i < div.regions.size(); ++i) {
    auto& region = div.regions[i];
    std::sort(region.begin(), region.end());
    region.erase(std::unique(region.begin(), region.end()), region.end());
    for (Vertex v : region)
      if (div.home[v] < 0) div.home[v] = static_cast<std::int32_t>(i);
    div.boundary.push_back(
        compute_boundary(g, region, div.excluded, stamp, static_cast<std::uint32_t>(i + 1)));
    if (!div.boundary.back().empty())
      div.pivot.push_back(div.boundary.back().front());
    else
      div.pivot.push_back(region.empty() ? -1 : region.front());
  }
  return div;
}

RDivision build_r_division(const Graph& g, std::int64_t r, std::span<const Vertex> excluded) {
  if (r < 2) throw Error(ErrorKind::kPrecondition, "region size r must be at least 2");
  auto mask = make_mask(g.n(), excluded);
  if (excluded.empty() && !is_connected(g))
    throw Error(ErrorKind::kDisconnected, "cannot divide a disconnected graph");
  Divider divider(g, r, mask);
  auto regions = divider.run();
  return RDivision::from_regions(g, std::move(regions), excluded);
}

std::int64_t default_region_size(std::int64_t n, double rho) {
  double r = std::ceil(std::pow(static_cast<double>(std::max<std::int64_t>(n, 1)), rho) - 1e-9);
  return std::max<std::int64_t>(4, static_cast<std::int64_t>(r));
}

DivisionReport validate_division(const Graph& g, const RDivision& div, std::int64_t r) {
  DivisionReport rep;
  rep.regions = div.regions.size();
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<std::uint8_t> excluded = div.excluded;
  excluded.resize(n, 0);
  std::vector<std::uint8_t> covered(n, 0);
  std::vector<std::uint32_t> stamp(n, 0);
  std::vector<std::uint32_t> visit(n, 0);

  auto fail = [&](bool& flag, std::string msg) {
    if (flag) rep.failures.push_back(std::move(msg));
    flag = false;
  };

  for (std::size_t i = 0; i < div.regions.size(); ++i) {
    const auto& region = div.regions[i];
    const std::string name = "region " + std::to_string(i);
    rep.max_region = std::max(rep.max_region, region.size());
    if (region.empty()) {
      fail(rep.connectivity, name + " is empty");
      continue;
    }
    bool in_range = true;
    for (Vertex v : region) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        fail(rep.cover, name + " has out-of-range vertex");
        in_range = false;
        break;
      }
      if (excluded[v]) fail(rep.cover, name + " contains excluded vertex " + std::to_string(v + 1));
      covered[v] = 1;
    }
    if (!in_range) continue;
    if (r > 0 && static_cast<std::int64_t>(region.size()) > r)
      fail(rep.size, name + " has " + std::to_string(region.size()) + " > r vertices");

    if (!region_connected(g, region, excluded, stamp, visit, static_cast<std::uint32_t>(i + 1)))
      fail(rep.connectivity, name + " is not connected");

    auto expect = compute_boundary(g, region, excluded, stamp, static_cast<std::uint32_t>(i + 1));
    rep.boundary_sum += expect.size();
    if (i >= div.boundary.size() || div.boundary[i] != expect)
      fail(rep.boundary, name + " boundary differs from R ∩ N(V \\ R)");
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!excluded[v] && !covered[v]) fail(rep.cover, "vertex " + std::to_string(v + 1) + " uncovered");

  if (div.home.size() != n) {
    fail(rep.home, "home_region has wrong length");
  } else {
    for (std::size_t v = 0; v < n; ++v) {
      if (excluded[v]) continue;
      auto h = div.home[v];
      if (h < 0 || static_cast<std::size_t>(h) >= div.regions.size() ||
          !std::binary_search(div.regions[h].begin(), div.regions[h].end(), static_cast<Vertex>(v))) {
        fail(rep.home, "vertex " + std::to_string(v + 1) + " has no valid home region");
        break;
      }
    }
  }
  return rep;
}

std::vector<std::vector<Vertex>> parse_division(std::istream& in, Vertex n) {
  std::vector<std::vector<Vertex>> regions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    std::vector<Vertex> region;
    bool comment = false;
    while (ls >> tok) {
      if (region.empty() && tok == "c") {
        comment = true;
        break;
      }
      long long v = 0;
      std::size_t used = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size())
        throw Error(ErrorKind::kParse, "division line " + std::to_string(line_no) + ": bad token '" + tok + "'");
      if (v < 1 || v > n)
        throw Error(ErrorKind::kParse, "division line " + std::to_string(line_no) + ": vertex id out of range");
      region.push_back(static_cast<Vertex>(v - 1));
    }
    if (!comment && !region.empty()) regions.push_back(std::move(region));
  }
  return regions;
}

RDivision load_division(const Graph& g, std::istream& in, std::span<const Vertex> excluded) {
  return RDivision::from_regions(g, parse_division(in, g.n()), excluded);
}

RDivision load_division(const Graph& g, const std::string& path, std::span<const Vertex> excluded) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, "cannot open division file " + path);
  return load_division(g, in, excluded);
}

void write_division(std::ostream& out, const RDivision& div) {
  for (const auto& region : div.regions) {
    for (std::size_t i = 0; i < region.size(); ++i) out << (i ? " " : "") << region[i] + 1;
    out << '\n';
  }
}

}  // namespace sdiam
