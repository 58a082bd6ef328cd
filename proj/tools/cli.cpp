#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdiam/cliquesum.hpp"
#include "sdiam/division.hpp"
#include "sdiam/ecc_engine.hpp"
#include "sdiam/graph.hpp"
#include "sdiam/oracle.hpp"
#include "sdiam/parallel.hpp"
#include "sdiam/profiles.hpp"
#include "sdiam/tree_decomposition.hpp"

namespace sdiam::cli {

using json = nlohmann::ordered_json;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return kExitParse;
    case ErrorKind::kValidation: return kExitValidation;
    case ErrorKind::kDisconnected:
    case ErrorKind::kApexCap:
    case ErrorKind::kEmptySide:
    case ErrorKind::kSizeCap:
    case ErrorKind::kPrecondition: return kExitPrecondition;
    case ErrorKind::kInternal: return kExitInternal;
  }
  return kExitInternal;
}

namespace {

struct RunConfig {
  std::string graph;
  std::string td;
  std::string apices;
  std::string division;
  std::string algo = "auto";
  double rho = 2.0 / 25.0;
  std::int64_t r = 0;
  double delta = 1.0 / 356.0;
  std::int64_t threshold = 512;
  double heavy = -1;
  double satellite = -1;
  int threads = default_threads();
  std::uint64_t seed = 1;
  std::string output;
  bool timing = false;
  Vertex cap = kDefaultOracleCap;
};

struct Inputs {
  Graph graph;
  std::vector<Vertex> apices;
  std::optional<TreeDecomposition> td;
};

Inputs load_inputs(const RunConfig& cfg) {
  Inputs in;
  in.graph = load_graph(cfg.graph);
  if (!cfg.apices.empty()) in.apices = load_vertex_list(cfg.apices, in.graph.n());
  if (!cfg.td.empty()) in.td = load_td(cfg.td);
  return in;
}

std::string resolve_algo(const RunConfig& cfg, const Inputs& in) {
  if (cfg.algo != "auto") return cfg.algo;
  if (in.td) return "cliquesum";
  if (!in.apices.empty()) return "apex";
  return "division";
}

struct Outcome {
  std::vector<Dist> ecc;
  json stats = json::object();
};

json engine_stats(const EngineStats& st, bool timing) {
  json j;
  j["regions"] = st.regions;
  j["boundary_sum"] = st.boundary_sum;
  j["profile_count"] = st.profile_count;
  j["max_profile_count"] = st.max_profile_count;
  j["region_size"] = st.region_size;
  if (timing) {
    j["build_ms"] = static_cast<std::int64_t>(std::llround(st.build_ms));
    j["query_ms"] = static_cast<std::int64_t>(std::llround(st.query_ms));
  }
  return j;
}

Outcome compute(const RunConfig& cfg, const Inputs& in, const std::string& algo) {
  Outcome res;
  EngineOptions engine;
  engine.threads = cfg.threads;
  if (algo == "naive") {
    res.ecc = naive_ecc(in.graph, cfg.threads);
    return res;
  }
  if (algo == "division" || algo == "apex") {
    if (algo == "apex" && in.apices.empty())
      throw Error(ErrorKind::kPrecondition, "--algo apex needs --apices");
    if (!cfg.division.empty()) {
      auto div = load_division(in.graph, cfg.division, in.apices);
      auto rep = validate_division(in.graph, div, cfg.r);
      if (!rep.ok())
        throw Error(ErrorKind::kValidation, "invalid division: " + (rep.failures.empty() ? std::string("?") : rep.failures.front()));
      auto r = ecc_from_division(in.graph, in.apices, div, engine);
      res.ecc = std::move(r.ecc);
      res.stats = engine_stats(r.stats, cfg.timing);
      return res;
    }
    GenusApexParams p;
    p.rho = cfg.rho;
    p.r = cfg.r;
    p.engine = engine;
    auto r = ecc_genus_apex(in.graph, in.apices, p);
    res.ecc = std::move(r.ecc);
    res.stats = engine_stats(r.stats, cfg.timing);
    return res;
  }
  if (algo == "cliquesum") {
    if (!in.td) throw Error(ErrorKind::kPrecondition, "--algo cliquesum needs --td");
    CliqueSumParams p;
    p.delta = cfg.delta;
    p.naive_threshold = cfg.threshold;
    p.heavy_threshold = cfg.heavy;
    p.star.satellite_threshold = cfg.satellite;
    p.star.r = cfg.r;
    p.engine = engine;
    auto r = ecc_cliquesum(in.graph, *in.td, p);
    res.ecc = std::move(r.ecc);
    auto& s = r.stats;
    res.stats["bags"] = s.bags;
    res.stats["heavy_edges"] = s.heavy_edges;
    res.stats["subtrees"] = s.subtrees;
    res.stats["naive_subtrees"] = s.naive_subtrees;
    res.stats["star_subtrees"] = s.star_subtrees;
    res.stats["shortcut_edges"] = s.shortcut_edges;
    res.stats.update(engine_stats(s.engine, cfg.timing));
    return res;
  }
  throw Error(ErrorKind::kPrecondition, "unknown algorithm '" + algo + "'");
}

// Writes to --output when given, else to out.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw Error(ErrorKind::kPrecondition, "cannot write " + cfg.output);
  f << text;
}

int cmd_ecc(const RunConfig& cfg, std::ostream& out) {
  auto in = load_inputs(cfg);
  auto algo = resolve_algo(cfg, in);
  auto res = compute(cfg, in, algo);
  json j;
  j["diameter"] = diameter_of(res.ecc);
  j["ecc"] = res.ecc;
  j["algo"] = algo;
  j["stats"] = res.stats;
  emit(cfg, out, j.dump() + "\n");
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  auto in = load_inputs(cfg);
  if (in.graph.n() > cfg.cap)
    throw Error(ErrorKind::kSizeCap, "n = " + std::to_string(in.graph.n()) + " exceeds the oracle cap " + std::to_string(cfg.cap));
  auto algo = resolve_algo(cfg, in);
  auto fast = compute(cfg, in, algo).ecc;
  auto m = apsp_naive(in.graph, cfg.cap);
  std::ostringstream os;
  for (Vertex v = 0; v < in.graph.n(); ++v) {
    Dist expect = 0;
    for (Vertex u = 0; u < in.graph.n(); ++u) expect = std::max(expect, m.at(v, u));
    if (fast[v] != expect) {
      os << "MISMATCH algo=" << algo << " vertex=" << v + 1 << " fast=" << fast[v] << " oracle=" << expect << "\n";
      emit(cfg, out, os.str());
      return kExitMismatch;
    }
  }
  os << "MATCH algo=" << algo << " n=" << in.graph.n() << " diameter=" << diameter_of(fast) << "\n";
  emit(cfg, out, os.str());
  return kExitOk;
}

int cmd_profiles(const RunConfig& cfg, std::ostream& out) {
  auto in = load_inputs(cfg);
  RDivision div;
  std::int64_t r = 0;
  if (!cfg.division.empty()) {
    div = load_division(in.graph, cfg.division, in.apices);
  } else {
    r = cfg.r > 0 ? cfg.r : default_region_size(in.graph.n(), cfg.rho);
    div = build_r_division(in.graph, r, in.apices);
  }
  auto rows = boundary_distances(in.graph, in.apices, div, cfg.threads);
  auto is_apex = make_mask(in.graph.n(), in.apices);
  json regions = json::array();
  std::size_t total = 0, widest = 0;
  for (std::size_t i = 0; i < div.region_count(); ++i) {
    auto inside = make_mask(in.graph.n(), div.regions[i]);
    std::vector<Vertex> outside;
    for (Vertex v = 0; v < in.graph.n(); ++v)
      if (!is_apex[v] && !inside[v] && rows[i].reaches(v)) outside.push_back(v);
    auto table = group_by_profile(outside, rows[i]);
    total += table.size();
    widest = std::max(widest, table.size());
    json rj;
    rj["region"] = i + 1;
    rj["size"] = div.regions[i].size();
    rj["boundary"] = div.boundary[i].size();
    rj["pivot"] = div.pivot[i] + 1;
    rj["profiles"] = table.size();
    rj["histogram"] = table.size_histogram();
    regions.push_back(std::move(rj));
  }
  json j;
  j["regions"] = div.region_count();
  j["region_size"] = r;
  j["boundary_sum"] = div.boundary_sum();
  j["profile_count"] = total;
  j["max_profile_count"] = widest;
  j["per_region"] = std::move(regions);
  emit(cfg, out, j.dump() + "\n");
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, int k) {
  auto in = load_inputs(cfg);
  std::ostringstream os;
  bool ok = true;
  if (in.td) {
    int kk = k >= 0 ? k : static_cast<int>(std::max(in.td->max_adhesion(), in.td->max_apices()));
    auto rep = validate_td(in.graph, *in.td, kk);
    os << "td " << (rep.ok() ? "VALID" : "INVALID") << " k=" << kk << " max_adhesion=" << rep.max_adhesion
       << " max_apices=" << rep.max_apices << " torso_genus=" << TdReport::torso_genus << "\n";
    for (const auto& f : rep.failures) os << "  " << f << "\n";
    ok = ok && rep.ok();
  }
  if (!cfg.division.empty()) {
    auto div = load_division(in.graph, cfg.division, in.apices);
    auto rep = validate_division(in.graph, div, cfg.r);
    os << "division " << (rep.ok() ? "VALID" : "INVALID") << " regions=" << rep.regions
       << " max_region=" << rep.max_region << " boundary_sum=" << rep.boundary_sum << "\n";
    for (const auto& f : rep.failures) os << "  " << f << "\n";
    ok = ok && rep.ok();
  }
  if (!in.td && cfg.division.empty()) {
    os << "graph n=" << in.graph.n() << " m=" << in.graph.edge_count()
       << " connected=" << (is_connected(in.graph) ? "yes" : "no") << "\n";
  }
  emit(cfg, out, os.str());
  return ok ? kExitOk : kExitValidation;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out, const std::string& kind, std::int64_t size, const GenOptions& opts) {
  auto inst = gen_instance(parse_instance_kind(kind), cfg.seed, size, opts);
  if (cfg.output.empty()) {
    write_graph(out, inst.graph);
    return kExitOk;
  }
  auto open = [](const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::kPrecondition, "cannot write " + path);
    return f;
  };
  {
    auto f = open(cfg.output + ".gr");
    write_graph(f, inst.graph);
  }
  if (inst.td) {
    auto f = open(cfg.output + ".td");
    write_td(f, *inst.td);
  }
  if (!inst.apices.empty()) {
    auto f = open(cfg.output + ".apices");
    for (Vertex a : inst.apices) f << a + 1 << "\n";
  }
  out << inst.name << " n=" << inst.graph.n() << " m=" << inst.graph.edge_count();
  if (inst.td) out << " bags=" << inst.td->node_count() << " k=" << inst.k;
  out << "\n";
  return kExitOk;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, const std::string& family, const std::vector<std::int64_t>& sizes,
              const std::vector<std::string>& algos) {
  std::ostringstream os;
  os << "family,size,n,algo,threads,wall_ms,diameter,regions,boundary_sum,profile_count\n";
  auto kind = parse_instance_kind(family);
  for (auto size : sizes) {
    auto inst = gen_instance(kind, cfg.seed, size);
    Inputs in{inst.graph, inst.apices, inst.td};
    for (const auto& algo : algos) {
      if (algo == "naive" && inst.graph.n() > cfg.cap) continue;
      auto start = std::chrono::steady_clock::now();
      auto res = compute(cfg, in, algo == "auto" ? resolve_algo(cfg, in) : algo);
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      auto stat = [&](const char* key) -> std::string {
        return res.stats.contains(key) ? res.stats[key].dump() : "";
      };
      os << family << ',' << size << ',' << inst.graph.n() << ',' << algo << ',' << cfg.threads << ','
         << std::fixed << std::setprecision(3) << ms << ',' << diameter_of(res.ecc) << ',' << stat("regions") << ','
         << stat("boundary_sum") << ',' << stat("profile_count") << '\n';
    }
  }
  emit(cfg, out, os.str());
  return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--graph", cfg.graph, "graph file (p tw n m, 1-based edges with optional weight)")->required();
  sub->add_option("--td", cfg.td, "tree decomposition with apex lines");
  sub->add_option("--apices", cfg.apices, "apex vertex list, 1-based");
  sub->add_option("--division", cfg.division, "region file, one region per line");
  sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--output", cfg.output, "write the result here instead of stdout");
}

void add_algo(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--algo", cfg.algo, "auto | naive | division | apex | cliquesum")
      ->check(CLI::IsMember({"auto", "naive", "division", "apex", "cliquesum"}));
  sub->add_option("--rho", cfg.rho, "region size exponent, r = max(4, ceil(n^rho))");
  sub->add_option("--r", cfg.r, "explicit region size");
  sub->add_option("--delta", cfg.delta, "heavy-edge exponent of the clique-sum pipeline");
  sub->add_option("--threshold", cfg.threshold, "clique-sum subtrees below this size are solved naively (<0: n^Delta)");
  sub->add_option("--heavy", cfg.heavy, "absolute heavy-edge threshold (<0: n^delta)");
  sub->add_option("--satellite", cfg.satellite, "absolute heavy-satellite threshold (<0: n^delta')");
  sub->add_flag("--timing", cfg.timing, "include build_ms/query_ms in the stats");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact eccentricities and diameter of sparse graphs"};
  app.name("sdiam");
  app.require_subcommand(1);
  RunConfig cfg;

  auto* ecc = app.add_subcommand("ecc", "eccentricities and diameter as JSON");
  add_common(ecc, cfg);
  add_algo(ecc, cfg);

  auto* verify = app.add_subcommand("verify", "compare a fast path with the all-pairs oracle");
  add_common(verify, cfg);
  add_algo(verify, cfg);
  verify->add_option("--cap", cfg.cap, "largest n the oracle accepts");

  auto* profiles = app.add_subcommand("profiles", "distance-profile counts per region");
  add_common(profiles, cfg);
  profiles->add_option("--rho", cfg.rho, "region size exponent");
  profiles->add_option("--r", cfg.r, "explicit region size");

  int k = -1;
  auto* validate = app.add_subcommand("validate", "check a decomposition or division");
  add_common(validate, cfg);
  validate->add_option("--k", k, "adhesion/apex bound (default: what the file needs)");
  validate->add_option("--r", cfg.r, "region size bound for divisions");

  std::string kind = "grid";
  std::int64_t size = 16;
  GenOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "write a seeded instance");
  gen->add_option("--kind", kind, "path | cycle | grid | random_planar_mesh | grid_plus_apices | profile_gadget | cliquesum_chain | star_glue");
  gen->add_option("--size", size, "instance size");
  gen->add_option("--seed", cfg.seed, "generator seed");
  gen->add_option("--k", gen_opts.k, "apices or gadget anchors");
  gen->add_option("--ell", gen_opts.ell, "gadget path length");
  gen->add_option("--max-weight", gen_opts.max_weight, "edge weights in [1, max-weight]");
  gen->add_option("--output", cfg.output, "file prefix; writes .gr, .td and .apices");

  std::string family = "grid";
  std::vector<std::int64_t> sizes{16, 32, 64};
  std::vector<std::string> algos{"naive", "division"};
  auto* bench = app.add_subcommand("bench", "CSV timings over a size sweep");
  bench->add_option("--family", family, "instance kind");
  bench->add_option("--sizes", sizes, "instance sizes")->delimiter(',');
  bench->add_option("--algos", algos, "algorithms to time")->delimiter(',');
  bench->add_option("--seed", cfg.seed, "generator seed");
  bench->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--cap", cfg.cap, "skip naive above this n");
  bench->add_option("--output", cfg.output, "CSV file");
  add_algo(bench, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (*ecc) return cmd_ecc(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    if (*profiles) return cmd_profiles(cfg, out);
    if (*validate) return cmd_validate(cfg, out, k);
    if (*gen) return cmd_gen(cfg, out, kind, size, gen_opts);
    if (*bench) return cmd_bench(cfg, out, family, sizes, algos);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace sdiam::cli
