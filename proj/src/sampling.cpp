#include "subcount/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "subcount/error.hpp"
#include "subcount/rng.hpp"

namespace subcount {

CollectorTrace collect_trace(const EngineSet& engines, EngineKind kind,
                             Subset q, double tolerance) {
  if (!(tolerance >= 0.0 && tolerance < 1.0))
    raise(ErrorCode::InvalidTolerance,
          "sampling requires tolerance in [0, 1); an empty trace cannot be drawn from");
  std::vector<Accumulation> acc;
  QueryInstrumentation instr;
  instr.accumulation = &acc;
  engines.run(kind, q, tolerance, &instr);

  CollectorTrace trace;
  trace.log_scale = engines.collection.log_wmax();
  trace.sets.reserve(acc.size());
  trace.cum.reserve(acc.size());
  double running = 0.0;
  for (const Accumulation& a : acc) {
    running += a.wtilde;
    trace.sets.push_back(a.set);
    trace.cum.push_back(running);
  }
  return trace;
}

Subset draw(const CollectorTrace& trace, double u) {
  if (trace.sets.empty()) raise(ErrorCode::OutOfRange, "empty trace");
  if (!(u > 0.0) || !(u <= trace.total()))
    raise(ErrorCode::OutOfRange, "u outside (0, W']");
  auto it = std::lower_bound(trace.cum.begin(), trace.cum.end(), u);
  return trace.sets[static_cast<std::size_t>(it - trace.cum.begin())];
}

std::vector<Subset> sample_many(const CollectorTrace& trace, std::size_t count,
                                std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Subset> out;
  out.reserve(count);
  double total = trace.total();
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(draw(trace, total * rng.uniform01_open_low()));
  return out;
}

Distribution trace_distribution(const CollectorTrace& trace) {
  Distribution dist;
  double total = trace.total();
  double prev = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    dist[trace.sets[i]] = (trace.cum[i] - prev) / total;
    prev = trace.cum[i];
  }
  return dist;
}

double tv_distance(const Distribution& p, const Distribution& q) {
  auto check_normalized = [](const Distribution& d, const char* name) {
    double sum = 0.0;
    for (const auto& [set, prob] : d) sum += prob;
    if (std::abs(sum - 1.0) > 1e-9)
      raise(ErrorCode::NotNormalized,
            std::string(name) + " sums to " + std::to_string(sum));
  };
  check_normalized(p, "first distribution");
  check_normalized(q, "second distribution");

  double l1 = 0.0;
  auto ip = p.begin();
  auto iq = q.begin();
  while (ip != p.end() || iq != q.end()) {
    if (iq == q.end() || (ip != p.end() && lex_less(ip->first, iq->first))) {
      l1 += std::abs(ip->second);
      ++ip;
    } else if (ip == p.end() || lex_less(iq->first, ip->first)) {
      l1 += std::abs(iq->second);
      ++iq;
    } else {
      l1 += std::abs(ip->second - iq->second);
      ++ip;
      ++iq;
    }
  }
  return l1 / 2.0;
}

}  // namespace subcount
