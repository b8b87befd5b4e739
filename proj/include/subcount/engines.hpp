#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "subcount/collection.hpp"
#include "subcount/count.hpp"

namespace subcount {

// Exact total by depth-first traversal of the lexicographic tree. Entering a
// child S + {x} only tests x in Q; children failing the test count as visited
// but their subtrees are pruned.
CountResult exact_count(const WeightedCollection& c, Subset q,
                        QueryInstrumentation* instr = nullptr);

// Entries in decreasing weight order (ties: lexicographically smaller first)
// with suffix cumulative sums suffix[i] = sum of wtilde over positions
// i+1..m, suffix[m] = 0.
struct SortedIndex {
  std::vector<std::uint32_t> order;  // collection indices, heaviest first
  std::vector<double> suffix;        // size m + 1, nonincreasing
};

SortedIndex build_sorted_index(const WeightedCollection& c);

// Scans the sorted order, accumulating relevant entries, until the residual
// bound certifies W' >= (1 - d) W(Q); switches to exact_count (discarding
// progress) once the scan length reaches the relevant-count upper bound.
// The stopping condition is evaluated before the switch-over test.
CountResult sorted_count(const SortedIndex& idx, const WeightedCollection& c,
                         Subset q, double tolerance,
                         QueryInstrumentation* instr = nullptr);

// Lexicographic tree re-linked greedily: each node keeps only its heaviest
// son (by weight potential phi = own weight plus all descendants) and
// brothers are chained in decreasing phi. psi aggregates a node's phi with
// the phis of its subsequent smaller brothers.
struct GreedyTree {
  int n = 0;
  double log_scale = 0.0;  // log_wmax of the source collection
  std::vector<Subset> set;
  std::vector<double> wtilde;
  std::vector<double> phi;
  std::vector<double> psi;
  std::vector<std::int32_t> first_son;     // -1 terminates chains
  std::vector<std::int32_t> next_brother;  // -1 terminates chains
  std::uint32_t root = 0;

  std::size_t size() const { return set.size(); }
  // Element x such that set[i] = parent(set[i]) + {x}; -1 for the root.
  int son_element(std::size_t i) const {
    return set[i].empty() ? -1 : set[i].max_element();
  }
};

GreedyTree build_greedy_tree(const WeightedCollection& c);

// Best-first collection of relevant sets by aggregate potential, stopping
// when W' >= (1 - d)(W' + Psi(R)). Psi(R) is recomputed from the queue at
// every test until the popped potential drops below d * W', and maintained
// incrementally afterwards.
CountResult treedy_count(const GreedyTree& t, Subset q, double tolerance,
                         QueryInstrumentation* instr = nullptr);

// Idealized lower bound: enumerates the relevant sets outright, then
// accumulates the heaviest ones until (1 - d) W(Q) is reached. `visited`
// reports only the accumulated count r; the enumeration cost is reported
// separately in prep_cost.
CountResult ideal_count(const WeightedCollection& c, Subset q, double tolerance,
                        QueryInstrumentation* instr = nullptr);

enum class EngineKind { exact, sorted, treedy, ideal };

const char* to_string(EngineKind kind);
std::optional<EngineKind> parse_engine(std::string_view name);

// A collection with both query structures built, ready to serve any engine.
// Immutable after build; concurrent queries are safe.
struct EngineSet {
  WeightedCollection collection;
  SortedIndex sorted;
  GreedyTree greedy;

  static EngineSet build(WeightedCollection c);

  CountResult run(EngineKind kind, Subset q, double tolerance,
                  QueryInstrumentation* instr = nullptr) const;
};

}  // namespace subcount
