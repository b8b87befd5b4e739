#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "subcount/logsum.hpp"
#include "subcount/subset.hpp"

namespace subcount {

// Result of one counting query. log_total == -inf encodes a zero total.
struct CountResult {
  double log_total = kNegInf;
  std::uint64_t visited = 0;               // sets examined, counted at first examination
  std::uint64_t relevant_accumulated = 0;  // relevant sets whose weight entered the sum
  bool switched_to_exact = false;
  bool is_exact = false;  // result equals W(Q) by construction
  std::uint64_t prep_cost = 0;  // ideal only: cost of enumerating the relevant sets
};

struct VisitEvent {
  Subset set;
  bool relevant = false;
  bool accumulated = false;
};

// Visit numbers are 1-based positions in `events` (first-examination order).
struct VisitLog {
  std::vector<VisitEvent> events;
};

struct Accumulation {
  Subset set;
  double wtilde;  // normalized weight exp(log_weight - log_wmax)
};

// Optional per-query hooks; engines do no extra bookkeeping for null members.
// The step callbacks expose stopping-rule internals for invariant tests.
struct QueryInstrumentation {
  VisitLog* visits = nullptr;
  std::vector<Accumulation>* accumulation = nullptr;  // engine accumulation order
  std::function<void(std::size_t scanned, std::uint64_t remaining_upper,
                     double wprime, double residual)>
      sorted_step;
  std::function<void(double wprime, double psi_queue)> treedy_step;
};

// Stopping predicate W' >= (1 - d) * bound. A relative slack keeps boundary
// ties deterministic under log-domain rounding (the normalized weights are
// exp-rounded, so an instance whose true stopping margin is zero would
// otherwise resolve by the last ulp); d == 0 stays strict so exact runs
// drain completely.
inline bool stop_satisfied(double wprime, double tolerance, double bound) {
  double rhs = (1.0 - tolerance) * bound;
  if (tolerance == 0.0) return wprime >= rhs;
  return wprime >= rhs - 1e-12 * rhs;
}

}  // namespace subcount
