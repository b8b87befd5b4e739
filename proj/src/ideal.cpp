#include <algorithm>
#include <cmath>

#include "subcount/engines.hpp"
#include "subcount/error.hpp"

namespace subcount {

CountResult ideal_count(const WeightedCollection& c, Subset q, double tolerance,
                        QueryInstrumentation* instr) {
  if (!(tolerance >= 0.0 && tolerance <= 1.0))
    raise(ErrorCode::InvalidTolerance, "tolerance must be in [0, 1]");

  VisitLog* log = instr ? instr->visits : nullptr;
  auto* acc = instr ? instr->accumulation : nullptr;

  // The list of relevant sets is granted for free; enumerating it costs one
  // scan of the collection, reported as prep_cost rather than visits.
  std::vector<std::uint32_t> relevant;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.set_at(i).is_subset_of(q)) relevant.push_back(static_cast<std::uint32_t>(i));
  std::sort(relevant.begin(), relevant.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              if (c.log_weight_at(a) != c.log_weight_at(b))
                return c.log_weight_at(a) > c.log_weight_at(b);
              return lex_less(c.set_at(a), c.set_at(b));
            });

  // Total relevant mass summed in accumulation order, so the d = 0 stopping
  // comparison terminates bitwise at the last set.
  double total = 0.0;
  for (std::uint32_t i : relevant) total += c.wtilde_at(i);

  double wprime = 0.0;
  std::size_t r = 0;
  while (r < relevant.size() && !stop_satisfied(wprime, tolerance, total)) {
    std::uint32_t entry = relevant[r++];
    wprime += c.wtilde_at(entry);
    if (log) log->events.push_back({c.set_at(entry), true, true});
    if (acc) acc->push_back({c.set_at(entry), c.wtilde_at(entry)});
  }

  CountResult res;
  res.log_total = wprime > 0.0 ? std::log(wprime) + c.log_wmax() : kNegInf;
  res.visited = r;
  res.relevant_accumulated = r;
  res.prep_cost = c.size();
  res.is_exact = r == relevant.size();
  return res;
}

}  // namespace subcount
