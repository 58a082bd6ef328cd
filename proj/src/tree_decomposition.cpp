#include "sdiam/tree_decomposition.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "sdiam/error.hpp"

namespace sdiam {

std::vector<std::vector<int>> TreeDecomposition::adjacency() const {
  std::vector<std::vector<int>> adj(node_count());
  for (auto [s, t] : edges) {
    adj[s].push_back(t);
    adj[t].push_back(s);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::vector<Vertex> TreeDecomposition::adhesion(int s, int t) const {
  std::vector<Vertex> out;
  std::set_intersection(bags[s].begin(), bags[s].end(), bags[t].begin(), bags[t].end(), std::back_inserter(out));
  return out;
}

std::size_t TreeDecomposition::total_weight() const {
  std::size_t total = 0;
  for (const auto& b : bags) total += b.size();
  return total;
}

std::size_t TreeDecomposition::max_adhesion() const {
  std::size_t best = 0;
  for (auto [s, t] : edges) best = std::max(best, adhesion(s, t).size());
  return best;
}

std::size_t TreeDecomposition::max_apices() const {
  std::size_t best = 0;
  for (const auto& a : apices) best = std::max(best, a.size());
  return best;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& msg) {
  throw Error(ErrorKind::kParse, "td line " + std::to_string(line_no) + ": " + msg);
}

long long read_int(std::istringstream& ls, std::size_t line_no) {
  std::string tok;
  if (!(ls >> tok)) parse_fail(line_no, "missing integer");
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size()) parse_fail(line_no, "bad integer '" + tok + "'");
  return v;
}

}  // namespace

TreeDecomposition parse_td(std::istream& in) {
  TreeDecomposition td;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<std::uint8_t> bag_seen;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head == "c") continue;
    if (head == "s") {
      std::string kind;
      if (header) parse_fail(line_no, "duplicate header");
      if (!(ls >> kind) || kind != "td") parse_fail(line_no, "header must be 's td <bags> <max bag> <n>'");
      long long bags = read_int(ls, line_no);
      read_int(ls, line_no);
      long long n = read_int(ls, line_no);
      if (bags < 1 || n < 0 || n > std::numeric_limits<Vertex>::max() / 2) parse_fail(line_no, "bad counts");
      td.vertex_count = static_cast<Vertex>(n);
      td.bags.resize(static_cast<std::size_t>(bags));
      td.apices.resize(static_cast<std::size_t>(bags));
      bag_seen.assign(static_cast<std::size_t>(bags), 0);
      header = true;
      continue;
    }
    if (!header) parse_fail(line_no, "content before 's td' header");
    auto bag_id = [&](long long id) {
      if (id < 1 || id > static_cast<long long>(td.bags.size())) parse_fail(line_no, "bag id out of range");
      return static_cast<int>(id - 1);
    };
    auto read_vertices = [&](std::vector<Vertex>& into) {
      std::string tok;
      while (ls >> tok) {
        std::istringstream one(tok);
        long long v = read_int(one, line_no);
        if (v < 1 || v > td.vertex_count) parse_fail(line_no, "vertex id out of range");
        into.push_back(static_cast<Vertex>(v - 1));
      }
      std::sort(into.begin(), into.end());
      into.erase(std::unique(into.begin(), into.end()), into.end());
    };
    if (head == "b") {
      int id = bag_id(read_int(ls, line_no));
      if (bag_seen[id]) parse_fail(line_no, "bag listed twice");
      bag_seen[id] = 1;
      read_vertices(td.bags[id]);
    } else if (head == "a") {
      int id = bag_id(read_int(ls, line_no));
      read_vertices(td.apices[id]);
    } else {
      std::istringstream first(head);
      int s = bag_id(read_int(first, line_no));
      int t = bag_id(read_int(ls, line_no));
      std::string extra;
      if (ls >> extra) parse_fail(line_no, "tree edge line must be '<i> <j>'");
      if (s == t) parse_fail(line_no, "tree edge is a loop");
      td.edges.emplace_back(std::min(s, t), std::max(s, t));
    }
  }
  if (!header) throw Error(ErrorKind::kParse, "missing 's td' header");
  if (td.edges.size() + 1 != td.bags.size()) throw Error(ErrorKind::kParse, "decomposition tree must have bags - 1 edges");
  UnionFind uf(td.bags.size());
  for (auto [s, t] : td.edges)
    if (!uf.unite(s, t)) throw Error(ErrorKind::kParse, "decomposition tree has a cycle");
  return td;
}

TreeDecomposition parse_td(const std::string& text) {
  std::istringstream in(text);
  return parse_td(in);
}

TreeDecomposition load_td(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, "cannot open decomposition file " + path);
  return parse_td(in);
}

void write_td(std::ostream& out, const TreeDecomposition& td) {
  std::size_t width = 0;
  for (const auto& b : td.bags) width = std::max(width, b.size());
  out << "s td " << td.node_count() << ' ' << width << ' ' << td.vertex_count << '\n';
  for (std::size_t i = 0; i < td.node_count(); ++i) {
    out << "b " << i + 1;
    for (Vertex v : td.bags[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (std::size_t i = 0; i < td.node_count(); ++i) {
    if (td.apices[i].empty()) continue;
    out << "a " << i + 1;
    for (Vertex v : td.apices[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [s, t] : td.edges) out << s + 1 << ' ' << t + 1 << '\n';
}

TdReport validate_td(const Graph& g, const TreeDecomposition& td, int k) {
  TdReport rep;
  const auto n = static_cast<std::size_t>(g.n());
  auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    if (rep.failures.size() < 20) rep.failures.push_back(std::move(msg));
  };

  std::vector<std::size_t> bag_count(n, 0), edge_count(n, 0);
  std::vector<std::vector<int>> bags_of(n);
  for (std::size_t t = 0; t < td.node_count(); ++t) {
    for (Vertex v : td.bags[t]) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        fail(rep.vertex_cover, "bag " + std::to_string(t + 1) + " has out-of-range vertex");
        continue;
      }
      ++bag_count[v];
      bags_of[v].push_back(static_cast<int>(t));
    }
    const auto& a = t < td.apices.size() ? td.apices[t] : std::vector<Vertex>{};
    rep.max_apices = std::max(rep.max_apices, a.size());
    if (!std::includes(td.bags[t].begin(), td.bags[t].end(), a.begin(), a.end()))
      fail(rep.apex_subset, "apex set of bag " + std::to_string(t + 1) + " is not inside the bag");
    if (static_cast<int>(a.size()) > k)
      fail(rep.apex_bound, "bag " + std::to_string(t + 1) + " has " + std::to_string(a.size()) + " > k apices");
  }
  for (auto [s, t] : td.edges) {
    auto adh = td.adhesion(s, t);
    rep.max_adhesion = std::max(rep.max_adhesion, adh.size());
    for (Vertex v : adh) ++edge_count[v];
    if (static_cast<int>(adh.size()) > k)
      fail(rep.adhesion_bound, "tree edge " + std::to_string(s + 1) + " " + std::to_string(t + 1) +
                                   " has adhesion " + std::to_string(adh.size()) + " > k");
    if (adh.size() == std::min(td.bags[s].size(), td.bags[t].size())) rep.comparable_adjacent = true;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (bag_count[v] == 0)
      fail(rep.vertex_cover, "vertex " + std::to_string(v + 1) + " is in no bag");
    else if (edge_count[v] + 1 != bag_count[v])
      fail(rep.trace_connected, "bags containing vertex " + std::to_string(v + 1) + " are not connected in T");
  }
  for (const auto& e : g.edges()) {
    const auto& a = bags_of[e.u];
    const auto& b = bags_of[e.v];
    std::size_t i = 0, j = 0;
    bool shared = false;
    while (i < a.size() && j < b.size() && !shared) {
      if (a[i] == b[j]) shared = true;
      else if (a[i] < b[j]) ++i;
      else ++j;
    }
    if (!shared)
      fail(rep.edge_cover, "edge " + std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) + " is in no bag");
  }
  return rep;
}

TreeDecomposition merge_comparable_bags(const TreeDecomposition& td) {
  std::vector<std::vector<Vertex>> bags = td.bags;
  std::vector<std::vector<Vertex>> apices = td.apices;
  apices.resize(bags.size());
  std::vector<std::pair<int, int>> edges = td.edges;
  std::vector<std::uint8_t> alive(bags.size(), 1);

  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto [s, t] = edges[e];
      bool s_in_t = std::includes(bags[t].begin(), bags[t].end(), bags[s].begin(), bags[s].end());
      bool t_in_s = std::includes(bags[s].begin(), bags[s].end(), bags[t].begin(), bags[t].end());
      if (!s_in_t && !t_in_s) continue;
      int keep = s_in_t ? t : s;
      int drop = keep == t ? s : t;
      if (s_in_t && t_in_s) {
        keep = std::min(s, t);
        drop = std::max(s, t);
      }
      std::vector<Vertex> uni;
      std::set_union(apices[keep].begin(), apices[keep].end(), apices[drop].begin(), apices[drop].end(),
                     std::back_inserter(uni));
      apices[keep] = std::move(uni);
      alive[drop] = 0;
      edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(e));
      for (auto& [a, b] : edges) {
        if (a == drop) a = keep;
        if (b == drop) b = keep;
        if (a > b) std::swap(a, b);
      }
      merged = true;
      break;
    }
  }

  TreeDecomposition out;
  out.vertex_count = td.vertex_count;
  std::vector<int> renumber(bags.size(), -1);
  for (std::size_t i = 0; i < bags.size(); ++i) {
    if (!alive[i]) continue;
    renumber[i] = static_cast<int>(out.bags.size());
    out.bags.push_back(std::move(bags[i]));
    out.apices.push_back(std::move(apices[i]));
  }
  for (auto [a, b] : edges) out.edges.emplace_back(renumber[a], renumber[b]);
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

}  // namespace sdiam
