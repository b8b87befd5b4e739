#include "subcount/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "subcount/error.hpp"

namespace subcount {

std::uint64_t NodeTables::local_mask(int v, std::uint64_t global) {
  std::uint64_t below = global & ((std::uint64_t{1} << v) - 1);
  std::uint64_t above = v >= 63 ? 0 : global >> (v + 1);
  return below | (above << v);
}

std::uint64_t NodeTables::global_mask(int v, std::uint64_t local) {
  std::uint64_t below = local & ((std::uint64_t{1} << v) - 1);
  std::uint64_t above = local >> v;
  return below | (v >= 63 ? 0 : above << (v + 1));
}

NodeTables make_node_tables(std::vector<WeightedCollection> per_node) {
  NodeTables t;
  t.n = static_cast<int>(per_node.size());
  if (t.n == 0) raise(ErrorCode::EmptyInput, "no node tables");
  t.node.reserve(per_node.size());
  for (int v = 0; v < t.n; ++v) {
    if (per_node[v].n() != t.n - 1)
      raise(ErrorCode::ManifestMismatch,
            "table for node " + std::to_string(v) + " has ground size " +
                std::to_string(per_node[v].n()) + ", expected " +
                std::to_string(t.n - 1));
    t.node.push_back(EngineSet::build(std::move(per_node[v])));
  }
  return t;
}

NodeTables load_tables(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) raise(ErrorCode::IoError, "cannot open " + manifest_path);
  std::string word;
  int version = 0;
  if (!(in >> word >> version) || word != "ordertables" || version != 1)
    raise(ErrorCode::LoadError, manifest_path + ": expected 'ordertables 1' header");
  int n = 0;
  if (!(in >> word >> n) || word != "n" || n < 1 || n > 64)
    raise(ErrorCode::LoadError, manifest_path + ": expected 'n <int>' with n in [1, 64]");

  std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();
  std::vector<std::string> paths(n);
  std::vector<bool> seen(n, false);
  for (int line = 0; line < n; ++line) {
    int node = -1;
    std::string path;
    if (!(in >> word >> node >> path) || word != "node")
      raise(ErrorCode::LoadError, manifest_path + ": expected 'node <i> <path>'");
    if (node < 0 || node >= n || seen[node])
      raise(ErrorCode::ManifestMismatch,
            manifest_path + ": bad or repeated node id " + std::to_string(node));
    seen[node] = true;
    paths[node] = (base / path).string();
  }
  if (in >> word)
    raise(ErrorCode::LoadError, manifest_path + ": trailing content");

  std::vector<WeightedCollection> tables;
  tables.reserve(n);
  for (int v = 0; v < n; ++v) tables.push_back(load_weight_table(paths[v]));
  return make_node_tables(std::move(tables));
}

namespace {

void check_ordering(const NodeTables& t, const Ordering& o) {
  if (static_cast<int>(o.size()) != t.n)
    raise(ErrorCode::InvalidOrdering,
          "ordering has " + std::to_string(o.size()) + " entries, expected " +
              std::to_string(t.n));
  std::vector<bool> seen(t.n, false);
  for (int v : o) {
    if (v < 0 || v >= t.n || seen[v])
      raise(ErrorCode::InvalidOrdering, "not a permutation of 0.." +
                                            std::to_string(t.n - 1));
    seen[v] = true;
  }
}

void check_tolerance(double d) {
  if (!(d >= 0.0 && d < 1.0))
    raise(ErrorCode::InvalidTolerance, "ordering queries require tolerance in [0, 1)");
}

}  // namespace

double ordering_log_score(const NodeTables& t, const Ordering& o,
                          double tolerance, EngineKind kind) {
  check_ordering(t, o);
  check_tolerance(tolerance);
  double per_factor = tolerance / t.n;
  double score = 0.0;
  std::uint64_t prefix = 0;
  for (int v : o) {
    Subset q(NodeTables::local_mask(v, prefix));
    score += t.node[v].run(kind, q, per_factor).log_total;
    prefix |= std::uint64_t{1} << v;
  }
  return score;
}

std::vector<Subset> sample_dag(const NodeTables& t, const Ordering& o,
                               double tolerance, EngineKind kind, Rng& rng) {
  check_ordering(t, o);
  check_tolerance(tolerance);
  double per_factor = tolerance / t.n;
  std::vector<Subset> parents(t.n);
  std::uint64_t prefix = 0;
  for (int v : o) {
    Subset q(NodeTables::local_mask(v, prefix));
    CollectorTrace trace = collect_trace(t.node[v], kind, q, per_factor);
    Subset local = draw(trace, trace.total() * rng.uniform01_open_low());
    parents[v] = Subset(NodeTables::global_mask(v, local.bits));
    prefix |= std::uint64_t{1} << v;
  }
  return parents;
}

std::vector<ChainStep> mcmc_orderings(const NodeTables& t, std::size_t steps,
                                      double tolerance, EngineKind kind,
                                      std::uint64_t seed, const Ordering* initial) {
  Ordering o;
  if (initial) {
    o = *initial;
  } else {
    o.resize(t.n);
    for (int i = 0; i < t.n; ++i) o[i] = i;
  }
  check_ordering(t, o);
  check_tolerance(tolerance);

  Rng rng(seed);
  double score = ordering_log_score(t, o, tolerance, kind);
  std::vector<ChainStep> chain;
  chain.reserve(steps + 1);
  chain.push_back({o, score});

  for (std::size_t step = 0; step < steps; ++step) {
    if (t.n >= 2) {
      std::size_t i = rng.bounded(static_cast<std::uint64_t>(t.n));
      std::size_t j = rng.bounded(static_cast<std::uint64_t>(t.n - 1));
      if (j >= i) ++j;
      std::swap(o[i], o[j]);
      double proposed = ordering_log_score(t, o, tolerance, kind);
      double u = rng.uniform01_open_low();
      if (std::log(u) <= proposed - score) {
        score = proposed;
      } else {
        std::swap(o[i], o[j]);
      }
    }
    chain.push_back({o, score});
  }
  return chain;
}

}  // namespace subcount
