#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subcount/engines.hpp"
#include "subcount/rng.hpp"
#include "subcount/sampling.hpp"

namespace subcount {

// Per-node parent-set weight tables for scoring node orderings: node v has a
// collection over the other n-1 nodes, with local element j standing for the
// j-th smallest node id different from v. Immutable after load; independent
// chains over shared tables are safe.
struct NodeTables {
  int n = 0;
  std::vector<EngineSet> node;

  // Local mask of a set of global node ids (which must exclude v).
  static std::uint64_t local_mask(int v, std::uint64_t global);
  static std::uint64_t global_mask(int v, std::uint64_t local);
};

// Builds tables from n collections; collection v must have ground size n-1.
NodeTables make_node_tables(std::vector<WeightedCollection> per_node);

// Manifest format:
//   ordertables 1
//   n <int>
//   node <i> <path>    (n lines, each node exactly once)
// Paths resolve relative to the manifest's directory.
NodeTables load_tables(const std::string& manifest_path);

using Ordering = std::vector<int>;

// Sum over positions j of log W'_j, where W'_j approximates the total weight
// of parent sets of o[j] drawn from its predecessors, each factor computed
// at tolerance d / n so the product carries a (1 - d) guarantee.
double ordering_log_score(const NodeTables& t, const Ordering& o,
                          double tolerance, EngineKind kind);

// One parent set per node (indexed by global node id), each drawn from the
// collector trace of its predecessor query at per-node tolerance d / n.
// Parents always precede children in o, so the result is acyclic.
std::vector<Subset> sample_dag(const NodeTables& t, const Ordering& o,
                               double tolerance, EngineKind kind, Rng& rng);

struct ChainStep {
  Ordering ordering;
  double log_score = 0.0;
};

// Metropolis chain over orderings: proposals swap two uniformly random
// positions, accepted with min(1, exp(delta log score)). Emits the visited
// chain including the initial state; deterministic per seed.
std::vector<ChainStep> mcmc_orderings(const NodeTables& t, std::size_t steps,
                                      double tolerance, EngineKind kind,
                                      std::uint64_t seed,
                                      const Ordering* initial = nullptr);

}  // namespace subcount
