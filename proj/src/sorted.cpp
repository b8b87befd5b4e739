#include <algorithm>
#include <cmath>
#include <numeric>

#include "subcount/engines.hpp"
#include "subcount/error.hpp"

namespace subcount {

SortedIndex build_sorted_index(const WeightedCollection& c) {
  SortedIndex idx;
  idx.order.resize(c.size());
  std::iota(idx.order.begin(), idx.order.end(), 0u);
  std::sort(idx.order.begin(), idx.order.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              if (c.log_weight_at(a) != c.log_weight_at(b))
                return c.log_weight_at(a) > c.log_weight_at(b);
              return lex_less(c.set_at(a), c.set_at(b));
            });
  idx.suffix.assign(c.size() + 1, 0.0);
  for (std::size_t i = c.size(); i-- > 0;)
    idx.suffix[i] = idx.suffix[i + 1] + c.wtilde_at(idx.order[i]);
  return idx;
}

CountResult sorted_count(const SortedIndex& idx, const WeightedCollection& c,
                         Subset q, double tolerance,
                         QueryInstrumentation* instr) {
  if (!(tolerance >= 0.0 && tolerance <= 1.0))
    raise(ErrorCode::InvalidTolerance, "tolerance must be in [0, 1]");

  VisitLog* log = instr ? instr->visits : nullptr;
  auto* acc = instr ? instr->accumulation : nullptr;
  std::size_t acc_start = acc ? acc->size() : 0;

  const std::size_t m = c.size();
  const std::uint64_t upper = relevant_count_upper(c, q);
  std::uint64_t remaining = upper;  // not-yet-seen relevant sets, upper bound
  double wprime = 0.0;
  std::size_t scanned = 0;
  std::uint64_t accumulated = 0;

  // Residual bound W_j - W_{j+t}: the t heaviest unscanned entries weigh at
  // least as much as the unseen relevant sets.
  auto stop_now = [&]() {
    std::size_t tail = std::min<std::uint64_t>(scanned + remaining, m);
    double residual = idx.suffix[scanned] - idx.suffix[tail];
    if (instr && instr->sorted_step)
      instr->sorted_step(scanned, remaining, wprime, residual);
    return stop_satisfied(wprime, tolerance, wprime + residual);
  };

  // The condition can hold before any scan (always at d = 1).
  if (stop_now()) {
    CountResult res;
    res.log_total = kNegInf;
    return res;
  }

  for (;;) {
    std::uint32_t entry = idx.order[scanned++];
    bool relevant = c.set_at(entry).is_subset_of(q);
    if (log) log->events.push_back({c.set_at(entry), relevant, relevant});
    if (relevant) {
      wprime += c.wtilde_at(entry);
      ++accumulated;
      --remaining;
      if (acc) acc->push_back({c.set_at(entry), c.wtilde_at(entry)});
    }
    if (stop_now()) break;
    if (scanned >= upper) {
      // Switch over: discard progress and delegate to the exact engine.
      if (acc) acc->resize(acc_start);
      CountResult res = exact_count(c, q, instr);
      res.visited += scanned;
      res.switched_to_exact = true;
      return res;
    }
  }

  CountResult res;
  res.log_total = wprime > 0.0 ? std::log(wprime) + c.log_wmax() : kNegInf;
  res.visited = scanned;
  res.relevant_accumulated = accumulated;
  res.is_exact = c.complete_upto_k() && remaining == 0;
  return res;
}

}  // namespace subcount
