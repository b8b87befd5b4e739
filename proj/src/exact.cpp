#include <cmath>

#include "subcount/engines.hpp"

namespace subcount {

CountResult exact_count(const WeightedCollection& c, Subset q,
                        QueryInstrumentation* instr) {
  VisitLog* log = instr ? instr->visits : nullptr;
  auto* acc = instr ? instr->accumulation : nullptr;

  CountResult res;
  double sum = 0.0;

  auto enter = [&](std::uint32_t node) {
    sum += c.wtilde_at(node);
    ++res.relevant_accumulated;
    if (acc) acc->push_back({c.set_at(node), c.wtilde_at(node)});
  };

  // Preorder over the lexicographic tree. A child S + {x} costs one x-in-Q
  // test; on failure it still counts as visited but its subtree is skipped.
  struct Frame {
    const std::uint32_t* next;
    const std::uint32_t* end;
  };
  std::vector<Frame> stack;
  auto push_children = [&](std::uint32_t node) {
    auto kids = c.children_of(node);
    stack.push_back({kids.data(), kids.data() + kids.size()});
  };

  std::uint32_t root = static_cast<std::uint32_t>(c.root());
  ++res.visited;
  if (log) log->events.push_back({c.set_at(root), true, true});
  enter(root);
  push_children(root);

  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == f.end) {
      stack.pop_back();
      continue;
    }
    std::uint32_t child = *f.next++;
    ++res.visited;
    bool relevant = q.contains(c.set_at(child).max_element());
    if (log) log->events.push_back({c.set_at(child), relevant, relevant});
    if (relevant) {
      enter(child);
      push_children(child);
    }
  }

  res.log_total = sum > 0.0 ? std::log(sum) + c.log_wmax() : kNegInf;
  res.is_exact = true;
  return res;
}

}  // namespace subcount
