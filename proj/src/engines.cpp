#include "subcount/engines.hpp"

#include "subcount/error.hpp"

namespace subcount {

const char* to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::exact: return "exact";
    case EngineKind::sorted: return "sorted";
    case EngineKind::treedy: return "treedy";
    case EngineKind::ideal: return "ideal";
  }
  return "unknown";
}

std::optional<EngineKind> parse_engine(std::string_view name) {
  if (name == "exact") return EngineKind::exact;
  if (name == "sorted") return EngineKind::sorted;
  if (name == "treedy") return EngineKind::treedy;
  if (name == "ideal") return EngineKind::ideal;
  return std::nullopt;
}

EngineSet EngineSet::build(WeightedCollection c) {
  EngineSet es;
  es.collection = std::move(c);
  es.sorted = build_sorted_index(es.collection);
  es.greedy = build_greedy_tree(es.collection);
  return es;
}

CountResult EngineSet::run(EngineKind kind, Subset q, double tolerance,
                           QueryInstrumentation* instr) const {
  if (!(tolerance >= 0.0 && tolerance <= 1.0))
    raise(ErrorCode::InvalidTolerance, "tolerance must be in [0, 1]");
  switch (kind) {
    case EngineKind::exact: return exact_count(collection, q, instr);
    case EngineKind::sorted: return sorted_count(sorted, collection, q, tolerance, instr);
    case EngineKind::treedy: return treedy_count(greedy, q, tolerance, instr);
    case EngineKind::ideal: return ideal_count(collection, q, tolerance, instr);
  }
  raise(ErrorCode::OutOfRange, "bad engine kind");
}

}  // namespace subcount
