#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "subcount/collection.hpp"
#include "subcount/rng.hpp"

namespace subcount {

enum class Family { flat, steep, mixture, shuffled };

const char* to_string(Family family);
std::optional<Family> parse_family(std::string_view name);

struct GenSpec {
  Family family = Family::flat;
  int n = 0;
  int k = 0;  // maximum cardinality, 1 <= k <= n <= 64
  std::uint64_t seed = 0;
};

std::string instance_id(const GenSpec& spec);

// One random component over all subsets of size <= k:
//   log w(S) = lambda * sum_{i in S} U_i,  U_i iid Uniform(kappa - 1, kappa).
// The empty set always has weight 1. lambda scales the weight variance and
// kappa the expected number of elements contributing positively.
WeightedCollection gen_component(int n, int k, double lambda, double kappa,
                                 Rng& rng);

// flat: one component with lambda = 10, kappa = k/n.
// steep: one component with lambda = 200, kappa = k/n.
// mixture: sum of 5 flat and 5 steep components, each group taking
//   kappa * n in {k-1, k, k+1, k+2, k+3}, all ten drawn independently.
// shuffled: a mixture whose weights are randomly permuted within each
//   cardinality class.
// Deterministic per spec.seed; sub-draws and permutations use split streams.
WeightedCollection gen_instance(const GenSpec& spec);

// Uniformly random subset of exactly `size` elements of [0, n).
Subset sample_query(int n, int size, Rng& rng);

}  // namespace subcount
