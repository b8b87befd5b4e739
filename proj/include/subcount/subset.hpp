#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace subcount {

// A subset of a ground set of at most 64 elements, kept as a membership
// mask: bit i set means element i is a member. The mask is the canonical
// representation, so equality is trivial and lexicographic order (on the
// ascending element sequences) is computable from the bits alone.
struct Subset {
  std::uint64_t bits = 0;

  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t mask) : bits(mask) {}

  constexpr bool contains(int element) const {
    return (bits >> element) & std::uint64_t{1};
  }
  constexpr int cardinality() const { return std::popcount(bits); }
  constexpr bool empty() const { return bits == 0; }
  constexpr bool is_subset_of(Subset other) const {
    return (bits & ~other.bits) == 0;
  }
  constexpr Subset with(int element) const {
    return Subset(bits | (std::uint64_t{1} << element));
  }
  constexpr Subset without(int element) const {
    return Subset(bits & ~(std::uint64_t{1} << element));
  }
  // Largest member; only meaningful for nonempty sets.
  constexpr int max_element() const { return 63 - std::countl_zero(bits); }

  friend constexpr bool operator==(Subset a, Subset b) = default;
};

// Order of the ascending element sequences: [] < [0] < [0,1] < [0,2] < [1].
// The lowest differing element decides, except that a set which is a prefix
// of the other comes first.
constexpr bool lex_less(Subset a, Subset b) {
  if (a.bits == b.bits) return false;
  std::uint64_t diff = a.bits ^ b.bits;
  std::uint64_t low = diff & (0 - diff);
  if (a.bits & low) return (b.bits & ~(low - 1)) != 0;
  return (a.bits & ~(low - 1)) == 0;
}

struct LexLess {
  constexpr bool operator()(Subset a, Subset b) const { return lex_less(a, b); }
};

constexpr bool valid_for(Subset s, int n) {
  return n >= 64 || (s.bits >> n) == 0;
}

// Throws InvalidSubset on duplicates or elements outside [0, n).
Subset subset_from_elements(std::span<const int> elements, int n);

// "1,2,3" with ascending zero-based indices, or "." for the empty set.
Subset parse_subset(std::string_view text, int n);
std::string format_subset(Subset s);

}  // namespace subcount
