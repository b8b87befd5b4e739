#include "subcount/generators.hpp"

#include <algorithm>
#include <cmath>

#include "subcount/error.hpp"
#include "subcount/logsum.hpp"

namespace subcount {

const char* to_string(Family family) {
  switch (family) {
    case Family::flat: return "flat";
    case Family::steep: return "steep";
    case Family::mixture: return "mixture";
    case Family::shuffled: return "shuffled";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "flat") return Family::flat;
  if (name == "steep") return Family::steep;
  if (name == "mixture") return Family::mixture;
  if (name == "shuffled") return Family::shuffled;
  return std::nullopt;
}

std::string instance_id(const GenSpec& spec) {
  return std::string(to_string(spec.family)) + "-n" + std::to_string(spec.n) +
         "-k" + std::to_string(spec.k) + "-s" + std::to_string(spec.seed);
}

namespace {

void check_sizes(int n, int k) {
  if (!(1 <= k && k <= n && n <= 64))
    raise(ErrorCode::SizeOutOfRange,
          "need 1 <= k <= n <= 64, got n=" + std::to_string(n) +
              " k=" + std::to_string(k));
}

// Calls fn(mask) for every subset of [0, n) with at most k elements,
// cardinality by cardinality, combinations in ascending index order.
template <typename Fn>
void for_each_subset_upto(int n, int k, Fn&& fn) {
  fn(std::uint64_t{0});
  std::vector<int> pick;
  for (int card = 1; card <= k; ++card) {
    pick.resize(card);
    for (int i = 0; i < card; ++i) pick[i] = i;
    for (;;) {
      std::uint64_t mask = 0;
      for (int i : pick) mask |= std::uint64_t{1} << i;
      fn(mask);
      int pos = card - 1;
      while (pos >= 0 && pick[pos] == n - card + pos) --pos;
      if (pos < 0) break;
      ++pick[pos];
      for (int i = pos + 1; i < card; ++i) pick[i] = pick[i - 1] + 1;
    }
  }
}

std::vector<double> draw_uniforms(int n, double kappa, Rng& rng) {
  std::vector<double> u(n);
  for (double& v : u) v = kappa - 1.0 + rng.uniform01();
  return u;
}

}  // namespace

WeightedCollection gen_component(int n, int k, double lambda, double kappa,
                                 Rng& rng) {
  check_sizes(n, k);
  std::vector<double> u = draw_uniforms(n, kappa, rng);
  std::vector<WeightedEntry> entries;
  for_each_subset_upto(n, k, [&](std::uint64_t mask) {
    double sum = 0.0;
    for (std::uint64_t rest = mask; rest;) {
      std::uint64_t low = rest & (0 - rest);
      rest ^= low;
      sum += u[std::countr_zero(low)];
    }
    entries.push_back({Subset(mask), lambda * sum});
  });
  return make_collection(n, entries);
}

WeightedCollection gen_instance(const GenSpec& spec) {
  check_sizes(spec.n, spec.k);
  const int n = spec.n;
  const int k = spec.k;

  if (spec.family == Family::flat || spec.family == Family::steep) {
    Rng rng(split_seed(spec.seed, 0));
    double lambda = spec.family == Family::flat ? 10.0 : 200.0;
    return gen_component(n, k, lambda, static_cast<double>(k) / n, rng);
  }

  // Mixture: five flat and five steep components, kappa * n sweeping
  // k-1 .. k+3 within each group, every component on its own stream.
  constexpr int kComponents = 10;
  double lambda[kComponents];
  std::vector<double> u[kComponents];
  for (int c = 0; c < kComponents; ++c) {
    lambda[c] = c < 5 ? 10.0 : 200.0;
    double kappa = static_cast<double>(k - 1 + (c % 5)) / n;
    Rng rng(split_seed(spec.seed, static_cast<std::uint64_t>(c)));
    u[c] = draw_uniforms(n, kappa, rng);
  }

  std::vector<WeightedEntry> entries;
  double component_log[kComponents];
  for_each_subset_upto(n, k, [&](std::uint64_t mask) {
    for (int c = 0; c < kComponents; ++c) {
      double sum = 0.0;
      for (std::uint64_t rest = mask; rest;) {
        std::uint64_t low = rest & (0 - rest);
        rest ^= low;
        sum += u[c][std::countr_zero(low)];
      }
      component_log[c] = lambda[c] * sum;
    }
    entries.push_back({Subset(mask), log_sum_exp(component_log)});
  });

  if (spec.family == Family::shuffled) {
    // Permute weights within each cardinality class; enumeration order is
    // cardinality-major, so classes are contiguous runs.
    std::size_t begin = 0;
    for (int card = 0; card <= k; ++card) {
      std::size_t count = 1;
      if (card > 0) {
        count = 1;
        for (int i = 0; i < card; ++i)
          count = count * static_cast<std::size_t>(n - i) / (i + 1);
      }
      Rng rng(split_seed(spec.seed, 16 + static_cast<std::uint64_t>(card)));
      for (std::size_t i = count; i-- > 1;) {
        std::size_t j = rng.bounded(i + 1);
        std::swap(entries[begin + i].log_weight, entries[begin + j].log_weight);
      }
      begin += count;
    }
  }
  return make_collection(n, entries);
}

Subset sample_query(int n, int size, Rng& rng) {
  if (!(0 <= size && size <= n && n <= 64))
    raise(ErrorCode::SizeOutOfRange,
          "query size " + std::to_string(size) + " outside [0, " +
              std::to_string(n) + "]");
  int pool[64];
  for (int i = 0; i < n; ++i) pool[i] = i;
  std::uint64_t mask = 0;
  for (int i = 0; i < size; ++i) {
    std::size_t j = i + rng.bounded(static_cast<std::uint64_t>(n - i));
    std::swap(pool[i], pool[j]);
    mask |= std::uint64_t{1} << pool[i];
  }
  return Subset(mask);
}

}  // namespace subcount
