#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "subcount/engines.hpp"

namespace subcount {

// Accumulation record of one counting query: the relevant sets whose weights
// entered W', in engine accumulation order, with cumulative sums in the
// normalized linear domain. Immutable; sampling from a shared trace is safe.
struct CollectorTrace {
  std::vector<Subset> sets;
  std::vector<double> cum;  // cum[i] = wtilde(S_1) + ... + wtilde(S_{i+1})
  double log_scale = 0.0;   // add to recover true log weights

  std::size_t size() const { return sets.size(); }
  double total() const { return cum.empty() ? 0.0 : cum.back(); }
};

// Runs the engine and captures its accumulation. Requires d in [0, 1); at
// d = 1 an engine may legally return an empty (unsampleable) trace.
CollectorTrace collect_trace(const EngineSet& engines, EngineKind kind,
                             Subset q, double tolerance);

// The unique S_i with cum[i-1] < u <= cum[i], by binary search.
// u must lie in (0, total()].
Subset draw(const CollectorTrace& trace, double u);

// `count` independent draws with u uniform on (0, total()], from a seeded
// generator; reproducible per seed.
std::vector<Subset> sample_many(const CollectorTrace& trace, std::size_t count,
                                std::uint64_t seed);

using Distribution = std::map<Subset, double, LexLess>;

// pi'(S) = wtilde(S) / total() on the trace support.
Distribution trace_distribution(const CollectorTrace& trace);

// Half the L1 distance over the union of supports. Both inputs must sum to
// one within 1e-9.
double tv_distance(const Distribution& p, const Distribution& q);

}  // namespace subcount
