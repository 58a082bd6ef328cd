#include "sdiam/ecc_engine.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "sdiam/error.hpp"
#include "sdiam/parallel.hpp"
#include "sdiam/profiles.hpp"
#include "sdiam/range_index.hpp"

namespace sdiam {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

Dist add(Dist a, Dist b) { return (a == kUnreachable || b == kUnreachable) ? kUnreachable : a + b; }

void check_apices(const Graph& g, std::span<const Vertex> apices, int cap) {
  for (Vertex a : apices)
    if (a < 0 || a >= g.n()) throw Error(ErrorKind::kPrecondition, "apex id out of range");
  if (static_cast<int>(apices.size()) > cap)
    throw Error(ErrorKind::kApexCap, std::to_string(apices.size()) + " apices exceed the cap of " +
                                         std::to_string(cap) + "; use the clique-sum path or naive mode");
}

struct RegionOutcome {
  std::size_t boundary = 0;
  std::size_t profiles = 0;
  double build_ms = 0;
  double query_ms = 0;
};

// Everything Step 2 needs for the vertices whose home is one region.
struct RegionWorkspace {
  std::vector<Vertex> region;
  std::vector<Dist> inner;          // region_apsp
  AnchorDistances boundary;         // empty when the region has no boundary
  ProfileTable table;
  std::vector<MaxMinIndex> per_profile;
  std::vector<Vertex> apex_only;    // targets G - A does not connect to the region
  MaxMinIndex apex_only_index;
};

class Engine {
 public:
  Engine(const Graph& g, std::span<const Vertex> apices, std::span<const Vertex> targets,
         const RDivision& div, const EngineOptions& opt)
      : g_(g), div_(div), opt_(opt) {
    check_apices(g, apices, opt.apex_cap);
    if (targets.empty()) throw Error(ErrorKind::kPrecondition, "empty target set");
    if (!is_connected(g)) throw Error(ErrorKind::kDisconnected, "graph is not connected");
    apex_ = ApexContext::build(g, apices, opt.threads);
    is_apex_ = make_mask(g.n(), apices);
    in_targets_ = make_mask(g.n(), targets);
    targets_.assign(targets.begin(), targets.end());
    std::sort(targets_.begin(), targets_.end());
    targets_.erase(std::unique(targets_.begin(), targets_.end()), targets_.end());
    if (div.home.size() != static_cast<std::size_t>(g.n()))
      throw Error(ErrorKind::kValidation, "division does not match the graph");
    for (Vertex v = 0; v < g.n(); ++v)
      if (!is_apex_[v] && div.home[v] < 0)
        throw Error(ErrorKind::kValidation, "vertex " + std::to_string(v + 1) + " is in no region");
    for (const auto& region : div.regions)
      for (Vertex v : region)
        if (is_apex_[v]) throw Error(ErrorKind::kValidation, "region contains apex " + std::to_string(v + 1));
  }

  EccResult run() {
    EccResult result;
    result.ecc.assign(static_cast<std::size_t>(g_.n()), 0);
    auto start = Clock::now();
    for (std::size_t i = 0; i < apex_.size(); ++i) {
      Dist best = 0;
      for (Vertex v : targets_) best = std::max(best, apex_.rows[i][v]);
      result.ecc[apex_.apices[i]] = best;
    }
    double apex_ms = elapsed_ms(start);

    std::vector<RegionOutcome> outcome(div_.region_count());
    parallel_for(div_.region_count(), opt_.threads,
                 [&](std::size_t i) { outcome[i] = process(i, result.ecc); });

    auto& st = result.stats;
    st.regions = div_.region_count();
    st.build_ms = apex_ms;
    for (const auto& o : outcome) {
      st.boundary_sum += o.boundary;
      st.profile_count += o.profiles;
      st.max_profile_count = std::max(st.max_profile_count, o.profiles);
      st.build_ms += o.build_ms;
      st.query_ms += o.query_ms;
    }
    return result;
  }

 private:
  std::size_t k() const { return apex_.size(); }

  RegionWorkspace prepare(std::size_t index) const {
    RegionWorkspace ws;
    ws.region = div_.regions[index];
    ws.inner = region_apsp(g_, apex_.apices, ws.region);
    const auto& bnd = div_.boundary[index];
    if (!bnd.empty()) ws.boundary = anchor_distances(g_, bnd, div_.pivot[index], is_apex_);

    auto in_region = [&](Vertex v) { return std::binary_search(ws.region.begin(), ws.region.end(), v); };
    std::vector<Vertex> outside;
    for (Vertex v : targets_) {
      if (is_apex_[v] || in_region(v)) continue;
      if (ws.boundary.reaches(v))
        outside.push_back(v);
      else
        ws.apex_only.push_back(v);
    }
    ws.table = group_by_profile(outside, ws.boundary);

    const std::size_t dim = k() + 1;
    std::vector<Coord> pts;
    ws.per_profile.reserve(ws.table.size());
    for (const auto& group : ws.table.groups) {
      pts.clear();
      for (Vertex v : group.members) {
        for (std::size_t a = 0; a < k(); ++a) pts.push_back(apex_.rows[a][v]);
        pts.push_back(ws.boundary.rows[ws.boundary.pivot_index][v]);
      }
      if (opt_.batch_queries) ws.per_profile.push_back(MaxMinIndex::build(static_cast<int>(dim), pts));
    }
    if (!ws.apex_only.empty()) {
      if (k() == 0) throw Error(ErrorKind::kDisconnected, "graph is not connected");
      pts.clear();
      for (Vertex v : ws.apex_only)
        for (std::size_t a = 0; a < k(); ++a) pts.push_back(apex_.rows[a][v]);
      ws.apex_only_index = MaxMinIndex::build(static_cast<int>(k()), pts);
    }
    return ws;
  }

  Dist eccentricity(Vertex u, const RegionWorkspace& ws) const {
    const std::size_t kk = k();
    Dist best = 0;
    for (std::size_t a = 0; a < kk; ++a)
      if (in_targets_[apex_.apices[a]]) best = std::max(best, apex_.rows[a][u]);

    const auto& bd = ws.boundary;
    const std::size_t width = bd.width();
    const std::size_t size = ws.region.size();
    const auto ui = static_cast<std::size_t>(
        std::lower_bound(ws.region.begin(), ws.region.end(), u) - ws.region.begin());

    // targets inside the home region: apex detour, boundary detour, or inside G[R]
    for (std::size_t vi = 0; vi < size; ++vi) {
      Vertex v = ws.region[vi];
      if (!in_targets_[v]) continue;
      Dist d = ws.inner[ui * size + vi];
      for (std::size_t a = 0; a < kk; ++a) d = std::min(d, add(apex_.rows[a][u], apex_.rows[a][v]));
      for (std::size_t s = 0; s < width; ++s) d = std::min(d, add(bd.rows[s][u], bd.rows[s][v]));
      if (d == kUnreachable) throw Error(ErrorKind::kInternal, "unresolved distance inside a region");
      best = std::max(best, d);
    }

    Coord shifts[kMaxIndexDimension + 1];
    for (std::size_t a = 0; a < kk; ++a) shifts[a] = apex_.rows[a][u];
    for (std::size_t p = 0; p < ws.table.size(); ++p) {
      const auto& group = ws.table.groups[p];
      Dist through = kUnreachable;
      for (std::size_t s = 0; s < width; ++s) through = std::min(through, bd.rows[s][u] + group.profile[s]);
      shifts[kk] = through;
      if (opt_.batch_queries) {
        auto got = ws.per_profile[p].query(std::span<const Coord>(shifts, kk + 1));
        if (got) best = std::max(best, *got);
      } else {
        for (Vertex v : group.members) {
          Dist d = through + bd.rows[bd.pivot_index][v];
          for (std::size_t a = 0; a < kk; ++a) d = std::min(d, shifts[a] + apex_.rows[a][v]);
          best = std::max(best, d);
        }
      }
    }
    if (!ws.apex_only.empty()) {
      auto got = ws.apex_only_index.query(std::span<const Coord>(shifts, kk));
      if (got) best = std::max(best, *got);
    }
    return best;
  }

  RegionOutcome process(std::size_t index, std::vector<Dist>& ecc) const {
    RegionOutcome out;
    std::vector<Vertex> home;
    for (Vertex v : div_.regions[index])
      if (div_.home[v] == static_cast<std::int32_t>(index)) home.push_back(v);
    if (home.empty()) return out;

    auto start = Clock::now();
    RegionWorkspace ws = prepare(index);
    out.build_ms = elapsed_ms(start);
    out.boundary = ws.boundary.width();
    out.profiles = ws.table.size();

    start = Clock::now();
    for (Vertex u : home) ecc[u] = eccentricity(u, ws);
    out.query_ms = elapsed_ms(start);
    return out;
  }

  const Graph& g_;
  const RDivision& div_;
  EngineOptions opt_;
  ApexContext apex_;
  std::vector<std::uint8_t> is_apex_;
  std::vector<std::uint8_t> in_targets_;
  std::vector<Vertex> targets_;
};

}  // namespace

ApexContext ApexContext::build(const Graph& g, std::span<const Vertex> apices, int threads) {
  ApexContext ctx;
  ctx.apices.assign(apices.begin(), apices.end());
  ctx.rows.resize(ctx.apices.size());
  parallel_for(ctx.apices.size(), threads, [&](std::size_t i) { ctx.rows[i] = sssp(g, ctx.apices[i]).dist; });
  return ctx;
}

std::vector<Dist> region_apsp(const Graph& g, std::span<const Vertex> apices, std::span<const Vertex> region) {
  std::vector<Vertex> keep(region.begin(), region.end());
  std::sort(keep.begin(), keep.end());
  auto sub = induced_subgraph(g, keep);
  for (Vertex a : apices)
    if (sub.to_local[a] >= 0) throw Error(ErrorKind::kPrecondition, "region contains an apex");
  const std::size_t size = keep.size();
  std::vector<Dist> out(size * size);
  for (std::size_t i = 0; i < size; ++i) {
    auto row = sssp(sub.graph, static_cast<Vertex>(i));
    std::copy(row.dist.begin(), row.dist.end(), out.begin() + static_cast<std::ptrdiff_t>(i * size));
  }
  return out;
}

EccResult ecc_from_division(const Graph& g, std::span<const Vertex> apices, std::span<const Vertex> targets,
                            const RDivision& div, const EngineOptions& options) {
  Engine engine(g, apices, targets, div, options);
  return engine.run();
}

EccResult ecc_from_division(const Graph& g, std::span<const Vertex> apices, const RDivision& div,
                            const EngineOptions& options) {
  std::vector<Vertex> all(static_cast<std::size_t>(g.n()));
  for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
  return ecc_from_division(g, apices, all, div, options);
}

EccResult ecc_genus_apex(const Graph& g, std::span<const Vertex> apices, const GenusApexParams& params) {
  check_apices(g, apices, params.engine.apex_cap);
  auto mask = make_mask(g.n(), apices);
  std::size_t distinct = 0;
  for (auto m : mask) distinct += m;
  if (distinct != apices.size()) throw Error(ErrorKind::kPrecondition, "duplicate apex ids");
  if (distinct >= static_cast<std::size_t>(g.n()))
    throw Error(ErrorKind::kPrecondition, "apex set must be a strict subset of the vertices");
  if (!is_connected(g)) throw Error(ErrorKind::kDisconnected, "graph is not connected");
  std::vector<std::uint8_t> rest(mask.size());
  for (std::size_t v = 0; v < mask.size(); ++v) rest[v] = mask[v] ? 0 : 1;
  if (!is_connected(g, rest)) throw Error(ErrorKind::kDisconnected, "G - A is not connected");

  const std::int64_t r = params.r > 0 ? params.r : default_region_size(g.n(), params.rho);
  auto div = build_r_division(g, r, apices);
  auto result = ecc_from_division(g, apices, div, params.engine);
  result.stats.region_size = r;
  return result;
}

}  // namespace sdiam
