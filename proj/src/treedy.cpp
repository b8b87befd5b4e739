#include <algorithm>
#include <cmath>
#include <cstring>

#include "subcount/engines.hpp"
#include "subcount/error.hpp"

namespace subcount {

namespace {

// Ordering key for potentials. Potentials are sums of exp-normalized weights,
// so mathematically equal potentials (and all potentials, under a constant
// shift of the input log weights) differ by trailing-bit noise; truncating
// the low mantissa bits sends such near-ties to the lexicographic tie-break
// instead of the noise sign. Keys order the search only; the accumulated
// sums stay exact.
double order_key(double x) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof(bits));
  bits &= ~std::uint64_t{0xfffff};  // keep 32 mantissa bits
  std::memcpy(&x, &bits, sizeof(x));
  return x;
}

}  // namespace

GreedyTree build_greedy_tree(const WeightedCollection& c) {
  const std::size_t m = c.size();
  GreedyTree t;
  t.n = c.n();
  t.log_scale = c.log_wmax();
  t.set.reserve(m);
  t.wtilde.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    t.set.push_back(c.set_at(i));
    t.wtilde.push_back(c.wtilde_at(i));
  }
  t.root = static_cast<std::uint32_t>(c.root());

  // phi(S) = wtilde(S) + sum of phi over sons. Lexicographic order is a
  // preorder of the tree, so a reverse sweep finalizes children first.
  t.phi = t.wtilde;
  std::vector<std::uint32_t> parent(m, 0);
  for (std::size_t i = m; i-- > 0;) {
    Subset s = t.set[i];
    if (s.empty()) continue;
    parent[i] = static_cast<std::uint32_t>(*c.find(s.without(s.max_element())));
    t.phi[parent[i]] += t.phi[i];
  }

  t.first_son.assign(m, -1);
  t.next_brother.assign(m, -1);
  t.psi.assign(m, 0.0);
  std::vector<std::uint32_t> sons;
  for (std::size_t i = 0; i < m; ++i) {
    auto kids = c.children_of(i);
    if (kids.empty()) continue;
    sons.assign(kids.begin(), kids.end());
    std::sort(sons.begin(), sons.end(), [&](std::uint32_t a, std::uint32_t b) {
      double ka = order_key(t.phi[a]), kb = order_key(t.phi[b]);
      if (ka != kb) return ka > kb;
      return t.set[a].max_element() < t.set[b].max_element();
    });
    t.first_son[i] = static_cast<std::int32_t>(sons.front());
    for (std::size_t j = 0; j + 1 < sons.size(); ++j)
      t.next_brother[sons[j]] = static_cast<std::int32_t>(sons[j + 1]);
    // psi telescopes over the brother chain from the last son backwards.
    double tail = 0.0;
    for (std::size_t j = sons.size(); j-- > 0;) {
      tail += t.phi[sons[j]];
      t.psi[sons[j]] = tail;
    }
  }
  t.psi[t.root] = t.phi[t.root];
  return t;
}

namespace {

struct HeapEntry {
  double psi;   // exact value, used in Psi(R) bookkeeping
  double key;   // order_key(psi), used for priority comparisons
  std::uint32_t node;
  std::uint32_t event;  // visit-log index, or npos
  Subset set;
};

constexpr std::uint32_t kNoEvent = 0xffffffffu;

// Max-heap on the potential key; equal keys pop in lexicographic order.
struct HeapWorse {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.key != b.key) return a.key < b.key;
    return lex_less(b.set, a.set);
  }
};

}  // namespace

CountResult treedy_count(const GreedyTree& t, Subset q, double tolerance,
                         QueryInstrumentation* instr) {
  if (!(tolerance >= 0.0 && tolerance <= 1.0))
    raise(ErrorCode::InvalidTolerance, "tolerance must be in [0, 1]");

  VisitLog* log = instr ? instr->visits : nullptr;
  auto* acc = instr ? instr->accumulation : nullptr;

  CountResult res;
  double wprime = 0.0;
  double psi_queue = 0.0;
  bool incremental = false;

  std::vector<HeapEntry> heap;
  auto visit = [&](std::uint32_t node, bool relevant) {
    ++res.visited;
    if (!log) return kNoEvent;
    log->events.push_back({t.set[node], relevant, false});
    return static_cast<std::uint32_t>(log->events.size() - 1);
  };
  auto enqueue = [&](std::uint32_t node, std::uint32_t event) {
    heap.push_back({t.psi[node], order_key(t.psi[node]), node, event, t.set[node]});
    std::push_heap(heap.begin(), heap.end(), HeapWorse{});
  };

  enqueue(t.root, visit(t.root, true));

  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), HeapWorse{});
    HeapEntry top = heap.back();
    heap.pop_back();

    wprime += t.wtilde[top.node];
    ++res.relevant_accumulated;
    if (log && top.event != kNoEvent) log->events[top.event].accumulated = true;
    if (acc) acc->push_back({t.set[top.node], t.wtilde[top.node]});

    // Enqueue the next relevant brother and the first relevant son, skipping
    // (and never revisiting) irrelevant chain members; descendants of an
    // irrelevant set are irrelevant too and get discarded with it.
    double psi_added = 0.0;
    auto walk_chain = [&](std::int32_t from) {
      for (std::int32_t i = from; i != -1; i = t.next_brother[i]) {
        bool relevant = q.contains(t.set[i].max_element());
        std::uint32_t event = visit(static_cast<std::uint32_t>(i), relevant);
        if (relevant) {
          enqueue(static_cast<std::uint32_t>(i), event);
          psi_added += t.psi[i];
          break;
        }
      }
    };
    walk_chain(t.next_brother[top.node]);
    walk_chain(t.first_son[top.node]);

    if (incremental) {
      psi_queue += psi_added - top.psi;
    } else {
      if (tolerance > 0.0 && top.psi < tolerance * wprime) incremental = true;
      psi_queue = 0.0;
      for (const HeapEntry& e : heap) psi_queue += e.psi;
    }
    if (instr && instr->treedy_step) instr->treedy_step(wprime, psi_queue);
    if (stop_satisfied(wprime, tolerance, wprime + psi_queue)) break;
  }

  res.log_total = wprime > 0.0 ? std::log(wprime) + t.log_scale : kNegInf;
  res.is_exact = heap.empty();
  return res;
}

}  // namespace subcount
