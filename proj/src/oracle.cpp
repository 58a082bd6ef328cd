#include "sdiam/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sdiam/error.hpp"
#include "sdiam/profiles.hpp"

namespace sdiam {

namespace {

void check_cap(const Graph& g, Vertex cap) {
  if (g.n() > cap)
    throw Error(ErrorKind::kSizeCap, "oracle refuses n = " + std::to_string(g.n()) + " above the cap of " +
                                         std::to_string(cap));
}

}  // namespace

DistanceMatrix apsp_naive(const Graph& g, Vertex cap) {
  check_cap(g, cap);
  DistanceMatrix m;
  m.n = g.n();
  m.data.resize(static_cast<std::size_t>(m.n) * m.n);
  for (Vertex s = 0; s < g.n(); ++s) {
    auto row = sssp(g, s);
    std::copy(row.dist.begin(), row.dist.end(), m.data.begin() + static_cast<std::ptrdiff_t>(s) * m.n);
  }
  return m;
}

DistanceMatrix apsp_floyd_warshall(const Graph& g, Vertex cap) {
  check_cap(g, cap);
  const std::size_t n = static_cast<std::size_t>(g.n());
  DistanceMatrix m;
  m.n = g.n();
  m.data.assign(n * n, kUnreachable);
  for (std::size_t v = 0; v < n; ++v) m.data[v * n + v] = 0;
  for (const auto& e : g.edges()) {
    auto& a = m.data[static_cast<std::size_t>(e.u) * n + e.v];
    auto& b = m.data[static_cast<std::size_t>(e.v) * n + e.u];
    a = b = std::min(a, e.w);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Dist* row_k = m.data.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) {
      Dist dik = m.data[i * n + k];
      if (dik == kUnreachable) continue;
      Dist* row_i = m.data.data() + i * n;
      for (std::size_t j = 0; j < n; ++j)
        if (row_k[j] != kUnreachable && dik + row_k[j] < row_i[j]) row_i[j] = dik + row_k[j];
    }
  }
  return m;
}

std::optional<Coord> rangequery_naive(const WeightedPointSet& points, std::span<const Coord> lower) {
  std::optional<Coord> best;
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto p = points.point(i);
    bool inside = true;
    for (int a = 0; a < points.dim && inside; ++a) inside = p[a] >= lower[a];
    if (inside && (!best || points.weights[i] > *best)) best = points.weights[i];
  }
  return best;
}

std::optional<Coord> maxmin_naive(int dim, std::span<const Coord> points, std::span<const Coord> shifts) {
  std::optional<Coord> best;
  const auto d = static_cast<std::size_t>(dim);
  for (std::size_t i = 0; i + d <= points.size(); i += d) {
    Coord low = std::numeric_limits<Coord>::max();
    for (std::size_t a = 0; a < d; ++a) low = std::min(low, points[i + a] + shifts[a]);
    if (!best || low > *best) best = low;
  }
  return best;
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error(ErrorKind::kPrecondition, "Rng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(next());
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return lo + static_cast<std::int64_t>(x % range);
}

namespace {

struct KindName {
  InstanceKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {InstanceKind::kPath, "path"},
    {InstanceKind::kCycle, "cycle"},
    {InstanceKind::kGrid, "grid"},
    {InstanceKind::kRandomPlanarMesh, "random_planar_mesh"},
    {InstanceKind::kGridPlusApices, "grid_plus_apices"},
    {InstanceKind::kProfileGadget, "profile_gadget"},
    {InstanceKind::kCliquesumChain, "cliquesum_chain"},
    {InstanceKind::kStarGlue, "star_glue"},
};

// Accumulates vertices and edges; weights come from the instance options.
struct Builder {
  Builder(Rng& r, Dist w) : rng(r), max_weight(w) {}

  Rng& rng;
  Dist max_weight;
  Vertex next = 0;
  std::vector<Edge> edges;

  Vertex add_vertex() { return next++; }
  void connect(Vertex u, Vertex v) { edges.push_back({u, v, max_weight > 1 ? rng.uniform(1, max_weight) : 1}); }

  // rows x cols grid; `fixed` maps some local cells to existing vertices
  std::vector<Vertex> grid(std::int64_t rows, std::int64_t cols, const std::vector<std::pair<std::size_t, Vertex>>& fixed = {}) {
    std::vector<Vertex> cell(static_cast<std::size_t>(rows * cols), -1);
    for (auto [pos, v] : fixed) cell[pos] = v;
    for (auto& c : cell)
      if (c < 0) c = add_vertex();
    for (std::int64_t r = 0; r < rows; ++r)
      for (std::int64_t c = 0; c < cols; ++c) {
        auto id = static_cast<std::size_t>(r * cols + c);
        if (c + 1 < cols) connect(cell[id], cell[id + 1]);
        if (r + 1 < rows) connect(cell[id], cell[id + static_cast<std::size_t>(cols)]);
      }
    return cell;
  }

  Graph finish() { return Graph::from_edges(next, std::move(edges)); }
};

std::vector<Vertex> sample(Rng& rng, std::vector<Vertex> pool, std::size_t count) {
  rng.shuffle(pool);
  pool.resize(std::min(count, pool.size()));
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<std::size_t> sample_positions(Rng& rng, std::size_t total, std::size_t count) {
  std::vector<std::size_t> pos(total);
  for (std::size_t i = 0; i < total; ++i) pos[i] = i;
  rng.shuffle(pos);
  pos.resize(std::min(count, total));
  return pos;
}

void finish_td(Instance& inst, TreeDecomposition td) {
  for (auto& b : td.bags) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
  for (auto& a : td.apices) std::sort(a.begin(), a.end());
  td.vertex_count = inst.graph.n();
  inst.k = static_cast<int>(std::max(td.max_adhesion(), td.max_apices()));
  inst.td = std::move(td);
}

Instance gen_mesh(Rng& rng, std::int64_t n, Dist max_weight) {
  Builder b(rng, max_weight);
  const std::int64_t w = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n)))));
  b.next = static_cast<Vertex>(n);
  auto id = [&](std::int64_t r, std::int64_t c) -> Vertex {
    std::int64_t v = r * w + c;
    return v < n ? static_cast<Vertex>(v) : -1;
  };
  const std::int64_t rows = (n + w - 1) / w;
  for (std::int64_t r = 0; r < rows; ++r)
    for (std::int64_t c = 0; c < w; ++c) {
      Vertex v = id(r, c);
      if (v < 0) continue;
      // row paths plus the first column form a spanning comb that is never thinned
      if (c + 1 < w && id(r, c + 1) >= 0) b.connect(v, id(r, c + 1));
      Vertex down = id(r + 1, c);
      if (down >= 0 && (c == 0 || !rng.chance(0.2))) b.connect(v, down);
      Vertex right = c + 1 < w ? id(r, c + 1) : -1;
      Vertex diag = c + 1 < w ? id(r + 1, c + 1) : -1;
      if (right < 0 || down < 0 || diag < 0) continue;
      auto roll = rng.uniform(0, 2);
      if (roll == 0) b.connect(v, diag);
      else if (roll == 1) b.connect(right, down);
    }
  Instance inst;
  inst.graph = b.finish();
  return inst;
}

Instance gen_cliquesum_chain(Rng& rng, std::int64_t pieces, Dist max_weight) {
  Builder b(rng, max_weight);
  TreeDecomposition td;
  std::vector<std::vector<Vertex>> plain;  // non-apex bag vertices, used for gluing
  for (std::int64_t j = 0; j < pieces; ++j) {
    auto rows = rng.uniform(3, 5);
    auto cols = rng.uniform(3, 5);
    std::vector<std::pair<std::size_t, Vertex>> fixed;
    if (j > 0) {
      auto parent = static_cast<int>(rng.uniform(0, j - 1));
      auto glue = sample(rng, plain[parent], static_cast<std::size_t>(rng.uniform(1, 3)));
      auto pos = sample_positions(rng, static_cast<std::size_t>(rows * cols), glue.size());
      for (std::size_t i = 0; i < glue.size(); ++i) fixed.emplace_back(pos[i], glue[i]);
      td.edges.emplace_back(parent, static_cast<int>(j));
    }
    auto cells = b.grid(rows, cols, fixed);
    std::vector<Vertex> bag = cells;
    std::vector<Vertex> apices;
    auto apex_count = rng.uniform(0, 2);
    for (std::int64_t a = 0; a < apex_count; ++a) {
      Vertex apex = b.add_vertex();
      bool linked = false;
      for (Vertex v : cells)
        if (rng.chance(0.3)) {
          b.connect(apex, v);
          linked = true;
        }
      if (!linked) b.connect(apex, cells[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(cells.size()) - 1))]);
      apices.push_back(apex);
      bag.push_back(apex);
    }
    plain.push_back(cells);
    td.bags.push_back(std::move(bag));
    td.apices.push_back(std::move(apices));
  }
  Instance inst;
  inst.graph = b.finish();
  finish_td(inst, std::move(td));
  return inst;
}

Instance gen_star_glue(Rng& rng, std::int64_t side, Dist max_weight) {
  Builder b(rng, max_weight);
  TreeDecomposition td;
  auto core = b.grid(side, side);
  Vertex apex = b.add_vertex();
  for (Vertex v : sample(rng, core, 4)) b.connect(apex, v);
  std::vector<Vertex> core_bag = core;
  core_bag.push_back(apex);
  td.bags.push_back(core_bag);
  td.apices.push_back({apex});

  auto attach = [&](std::int64_t rows, std::int64_t cols, std::size_t adhesion) {
    auto glue = sample(rng, core, adhesion);
    auto pos = sample_positions(rng, static_cast<std::size_t>(rows * cols), glue.size());
    std::vector<std::pair<std::size_t, Vertex>> fixed;
    for (std::size_t i = 0; i < glue.size(); ++i) fixed.emplace_back(pos[i], glue[i]);
    td.edges.emplace_back(0, static_cast<int>(td.bags.size()));
    td.bags.push_back(b.grid(rows, cols, fixed));
    td.apices.emplace_back();
  };
  for (int i = 0; i < 3; ++i) attach(rng.uniform(3, 4), rng.uniform(3, 4), static_cast<std::size_t>(rng.uniform(1, 4)));

  // long path glued at both ends
  auto ends = sample(rng, core, 2);
  std::vector<Vertex> path{ends[0]};
  const std::int64_t length = 2 * side * side;
  for (std::int64_t i = 1; i < length; ++i) {
    Vertex v = b.add_vertex();
    b.connect(path.back(), v);
    path.push_back(v);
  }
  b.connect(path.back(), ends[1]);
  path.push_back(ends[1]);
  td.edges.emplace_back(0, static_cast<int>(td.bags.size()));
  td.bags.push_back(path);
  td.apices.emplace_back();

  if (side >= 4) attach(4, 4, 6);

  Instance inst;
  inst.graph = b.finish();
  finish_td(inst, std::move(td));
  return inst;
}

}  // namespace

InstanceKind parse_instance_kind(std::string_view name) {
  for (const auto& kn : kKindNames)
    if (name == kn.name) return kn.kind;
  throw Error(ErrorKind::kPrecondition, "unknown instance kind '" + std::string(name) + "'");
}

const char* to_string(InstanceKind kind) {
  for (const auto& kn : kKindNames)
    if (kn.kind == kind) return kn.name;
  return "unknown";
}

Instance gen_instance(InstanceKind kind, std::uint64_t seed, std::int64_t size, const GenOptions& opts) {
  if (size < 1 && kind != InstanceKind::kProfileGadget) throw Error(ErrorKind::kPrecondition, "instance size must be positive");
  if (size > 10'000'000) throw Error(ErrorKind::kSizeCap, "instance size too large");
  Rng rng(seed);
  Instance inst;
  switch (kind) {
    case InstanceKind::kPath:
    case InstanceKind::kCycle: {
      Builder b(rng, opts.max_weight);
      b.next = static_cast<Vertex>(size);
      for (Vertex v = 0; v + 1 < size; ++v) b.connect(v, v + 1);
      if (kind == InstanceKind::kCycle && size >= 3) b.connect(static_cast<Vertex>(size - 1), 0);
      inst.graph = b.finish();
      break;
    }
    case InstanceKind::kGrid: {
      Builder b(rng, opts.max_weight);
      b.grid(size, size);
      inst.graph = b.finish();
      break;
    }
    case InstanceKind::kRandomPlanarMesh:
      inst = gen_mesh(rng, size, opts.max_weight);
      break;
    case InstanceKind::kGridPlusApices: {
      Builder b(rng, opts.max_weight);
      auto cells = b.grid(size, size);
      for (int a = 0; a < opts.k; ++a) {
        Vertex apex = b.add_vertex();
        inst.apices.push_back(apex);
        bool linked = false;
        for (Vertex v : cells)
          if (rng.chance(0.05)) {
            b.connect(apex, v);
            linked = true;
          }
        if (!linked) b.connect(apex, cells[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(cells.size()) - 1))]);
      }
      inst.graph = b.finish();
      break;
    }
    case InstanceKind::kProfileGadget:
      inst.graph = gen_profile_gadget(opts.k, opts.ell).graph;
      break;
    case InstanceKind::kCliquesumChain:
      inst = gen_cliquesum_chain(rng, size, opts.max_weight);
      break;
    case InstanceKind::kStarGlue:
      if (size < 2) throw Error(ErrorKind::kPrecondition, "star_glue needs a core side of at least 2");
      inst = gen_star_glue(rng, size, opts.max_weight);
      break;
  }
  inst.name = std::string(to_string(kind)) + "-s" + std::to_string(seed) + "-n" + std::to_string(size);
  return inst;
}

}  // namespace sdiam
