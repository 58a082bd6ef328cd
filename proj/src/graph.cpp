#include "sdiam/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>
#include <tuple>

#include "sdiam/error.hpp"
#include "sdiam/parallel.hpp"

namespace sdiam {

Graph Graph::from_edges(Vertex n, std::vector<Edge> edges) {
  if (n < 0) throw Error(ErrorKind::kPrecondition, "negative vertex count");
  for (auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw Error(ErrorKind::kPrecondition, "edge endpoint out of range");
    if (e.w < 1) throw Error(ErrorKind::kPrecondition, "edge weight must be positive");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
  });
  // min-merge: the first of each (u, v) run carries the smallest weight
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
              edges.end());

  Graph g;
  g.n_ = n;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : edges) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
    if (e.w != 1) g.weighted_ = true;
  }
  for (Vertex v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.targets_.resize(edges.size() * 2);
  g.weights_.resize(edges.size() * 2);
  std::vector<std::size_t> pos(g.offsets_.begin(), g.offsets_.end() - 1);
  // edges are sorted by (u, v), so every adjacency list comes out sorted
  for (const auto& e : edges) {
    g.targets_[pos[e.u]] = e.v;
    g.weights_[pos[e.u]++] = e.w;
  }
  for (const auto& e : edges) {
    g.targets_[pos[e.v]] = e.u;
    g.weights_[pos[e.v]++] = e.w;
  }
  for (Vertex v = 0; v < n; ++v) {
    auto b = g.offsets_[v], en = g.offsets_[v + 1];
    std::vector<std::pair<Vertex, Dist>> adj;
    adj.reserve(en - b);
    for (auto i = b; i < en; ++i) adj.emplace_back(g.targets_[i], g.weights_[i]);
    if (!std::is_sorted(adj.begin(), adj.end())) {
      std::sort(adj.begin(), adj.end());
      for (auto i = b; i < en; ++i) std::tie(g.targets_[i], g.weights_[i]) = adj[i - b];
    }
  }
  return g;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < n_; ++u) {
    auto nb = neighbors(u);
    auto ws = weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (u < nb[i]) out.push_back({u, nb[i], ws[i]});
  }
  return out;
}

Dist Graph::total_weight() const {
  Dist total = 0;
  for (Dist w : weights_) total += w;
  return total / 2;
}

namespace {

bool allowed(std::span<const std::uint8_t> mask, Vertex v) { return mask.empty() || mask[v]; }

}  // namespace

DistVector shortest_paths(const Graph& g, std::span<const Vertex> sources,
                          const SearchFilter& filter) {
  DistVector out;
  out.sources.assign(sources.begin(), sources.end());
  out.dist.assign(static_cast<std::size_t>(g.n()), kUnreachable);
  std::vector<std::uint8_t> is_source;
  if (!filter.expand.empty()) is_source = make_mask(g.n(), sources);
  auto expands = [&](Vertex v) { return allowed(filter.expand, v) || (!is_source.empty() && is_source[v]); };

  for (Vertex s : sources) {
    if (s < 0 || s >= g.n()) throw Error(ErrorKind::kPrecondition, "source out of range");
    out.dist[s] = 0;
  }

  if (!g.weighted()) {
    std::vector<Vertex> frontier;
    for (Vertex s : sources)
      if (out.dist[s] == 0 && std::find(frontier.begin(), frontier.end(), s) == frontier.end())
        frontier.push_back(s);
    std::vector<Vertex> next;
    Dist level = 0;
    while (!frontier.empty()) {
      ++level;
      next.clear();
      for (Vertex u : frontier) {
        if (!expands(u)) continue;
        for (Vertex v : g.neighbors(u)) {
          if (out.dist[v] != kUnreachable || !allowed(filter.enter, v)) continue;
          out.dist[v] = level;
          next.push_back(v);
        }
      }
      frontier.swap(next);
    }
    return out;
  }

  using Item = std::pair<Dist, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (Vertex s : sources) heap.emplace(0, s);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d != out.dist[u] || !expands(u)) continue;
    auto nb = g.neighbors(u);
    auto ws = g.weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      Vertex v = nb[i];
      if (!allowed(filter.enter, v)) continue;
      Dist nd = d + ws[i];
      if (nd < out.dist[v]) {
        out.dist[v] = nd;
        heap.emplace(nd, v);
      }
    }
  }
  return out;
}

DistVector sssp(const Graph& g, Vertex source) {
  Vertex s[1] = {source};
  return shortest_paths(g, s, {});
}

DistVector sssp_to_set(const Graph& g, std::span<const Vertex> sources) {
  if (sources.empty()) throw Error(ErrorKind::kPrecondition, "sssp_to_set: empty source set");
  return shortest_paths(g, sources, {});
}

std::vector<Dist> naive_ecc(const Graph& g, std::span<const Vertex> targets, int threads) {
  if (targets.empty()) throw Error(ErrorKind::kPrecondition, "naive_ecc: empty target set");
  if (!is_connected(g)) throw Error(ErrorKind::kDisconnected, "graph is not connected");
  std::vector<Dist> ecc(static_cast<std::size_t>(g.n()), 0);
  parallel_for(static_cast<std::size_t>(g.n()), threads, [&](std::size_t i) {
    auto row = sssp(g, static_cast<Vertex>(i));
    Dist best = 0;
    for (Vertex x : targets) best = std::max(best, row.dist[x]);
    ecc[i] = best;
  });
  return ecc;
}

std::vector<Dist> naive_ecc(const Graph& g, int threads) {
  std::vector<Vertex> all(static_cast<std::size_t>(g.n()));
  for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
  return naive_ecc(g, all, threads);
}

Dist diameter_of(std::span<const Dist> ecc) {
  Dist d = 0;
  for (Dist e : ecc) d = std::max(d, e);
  return d;
}

bool is_connected(const Graph& g) {
  if (g.n() == 0) return true;
  auto row = sssp(g, 0);
  return std::none_of(row.dist.begin(), row.dist.end(), [](Dist d) { return d == kUnreachable; });
}

bool is_connected(const Graph& g, std::span<const std::uint8_t> keep) {
  Vertex first = -1;
  for (Vertex v = 0; v < g.n(); ++v)
    if (keep[v]) {
      first = v;
      break;
    }
  if (first < 0) return true;
  Vertex s[1] = {first};
  auto row = shortest_paths(g, s, {keep, {}});
  for (Vertex v = 0; v < g.n(); ++v)
    if (keep[v] && row.dist[v] == kUnreachable) return false;
  return true;
}

std::vector<std::uint8_t> make_mask(Vertex n, std::span<const Vertex> members) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n), 0);
  for (Vertex v : members) mask[v] = 1;
  return mask;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  InducedSubgraph sub;
  sub.to_global.assign(keep.begin(), keep.end());
  sub.to_local.assign(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) sub.to_local[keep[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    Vertex u = keep[i];
    auto nb = g.neighbors(u);
    auto ws = g.weights(u);
    for (std::size_t j = 0; j < nb.size(); ++j) {
      Vertex lv = sub.to_local[nb[j]];
      if (lv > static_cast<Vertex>(i)) edges.push_back({static_cast<Vertex>(i), lv, ws[j]});
    }
  }
  sub.graph = Graph::from_edges(static_cast<Vertex>(keep.size()), std::move(edges));
  return sub;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t to_int(std::string_view tok, std::size_t line_no) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw Error(ErrorKind::kParse,
                "line " + std::to_string(line_no) + ": expected integer, got '" + std::string(tok) + "'");
  return value;
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  Vertex n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;
    auto where = "line " + std::to_string(line_no) + ": ";
    if (tok[0] == "p") {
      if (n >= 0) throw Error(ErrorKind::kParse, where + "duplicate header");
      if (tok.size() != 4 || tok[1] != "tw")
        throw Error(ErrorKind::kParse, where + "header must be 'p tw <n> <m>'");
      auto nv = to_int(tok[2], line_no);
      auto m = to_int(tok[3], line_no);
      if (nv < 0 || m < 0 || nv > std::numeric_limits<Vertex>::max() / 2)
        throw Error(ErrorKind::kParse, where + "bad vertex or edge count");
      n = static_cast<Vertex>(nv);
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }
    if (n < 0) throw Error(ErrorKind::kParse, where + "edge before header");
    if (tok.size() != 2 && tok.size() != 3)
      throw Error(ErrorKind::kParse, where + "edge line must be '<u> <v> [w]'");
    auto u = to_int(tok[0], line_no);
    auto v = to_int(tok[1], line_no);
    Dist w = tok.size() == 3 ? to_int(tok[2], line_no) : 1;
    if (u < 1 || u > n || v < 1 || v > n)
      throw Error(ErrorKind::kParse, where + "vertex id out of range");
    if (w < 1) throw Error(ErrorKind::kParse, where + "edge weight must be positive");
    edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), w});
  }
  if (n < 0) throw Error(ErrorKind::kParse, "missing 'p tw' header");
  return Graph::from_edges(n, std::move(edges));
}

Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, "cannot open graph file " + path);
  return parse_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  auto edges = g.edges();
  out << "p tw " << g.n() << ' ' << edges.size() << '\n';
  for (const auto& e : edges) {
    out << e.u + 1 << ' ' << e.v + 1;
    if (g.weighted()) out << ' ' << e.w;
    out << '\n';
  }
}

std::vector<Vertex> parse_vertex_list(std::istream& in, Vertex n) {
  std::vector<Vertex> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;
    for (auto t : tok) {
      auto v = to_int(t, line_no);
      if (v < 1 || v > n)
        throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": vertex id out of range");
      out.push_back(static_cast<Vertex>(v - 1));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Vertex> load_vertex_list(const std::string& path, Vertex n) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, "cannot open vertex list " + path);
  return parse_vertex_list(in, n);
}

}  // namespace sdiam
