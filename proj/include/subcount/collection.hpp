#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subcount/subset.hpp"

namespace subcount {

struct WeightedEntry {
  Subset set;
  double log_weight;
};

// A downward closed family of weighted subsets over a ground set of size n.
// Weights live in log domain (natural log); engines work on weights
// normalized by the heaviest entry, wtilde(S) = exp(log_weight(S) - log_wmax),
// and rescale results by log_wmax afterwards. Subsets absent from the family
// have weight zero and are never materialized.
//
// Entries are stored in lexicographic order together with the lexicographic
// tree: the parent of S is S minus its largest element, and the children of
// S are its one-element extensions present in the family, linked in ascending
// order of the extending element. Immutable once built and safe to share
// across concurrent queries.
class WeightedCollection {
 public:
  WeightedCollection() = default;  // empty shell; build via make_collection

  int n() const { return n_; }
  std::size_t size() const { return sets_.size(); }
  int max_card() const { return max_card_; }
  bool complete_upto_k() const { return complete_upto_k_; }
  double log_wmax() const { return log_wmax_; }

  Subset set_at(std::size_t i) const { return sets_[i]; }
  double log_weight_at(std::size_t i) const { return log_weight_[i]; }
  double wtilde_at(std::size_t i) const { return wtilde_[i]; }

  // Index of s in lexicographic entry order, if present.
  std::optional<std::size_t> find(Subset s) const;

  // Children of entry i in the lexicographic tree, ascending extension label.
  std::span<const std::uint32_t> children_of(std::size_t i) const {
    return {child_list_.data() + child_begin_[i],
            child_begin_[i + 1] - child_begin_[i]};
  }
  std::size_t root() const { return 0; }  // the empty set is lex-smallest

 private:
  friend WeightedCollection make_collection(int n,
                                            std::span<const WeightedEntry> entries);

  int n_ = 0;
  int max_card_ = 0;
  bool complete_upto_k_ = false;
  double log_wmax_ = 0.0;
  std::vector<Subset> sets_;        // lexicographic order
  std::vector<double> log_weight_;  // parallel to sets_
  std::vector<double> wtilde_;      // exp(log_weight - log_wmax)
  std::vector<std::uint32_t> child_begin_;  // CSR offsets, size m + 1
  std::vector<std::uint32_t> child_list_;
};

// Validates subsets, rejects duplicates, and requires downward closure
// (the missing subset is named in the error). Errors: EmptyInput,
// InvalidSubset, NonFiniteWeight, DuplicateSubset, NotDownwardClosed,
// GroundSetTooLarge.
WeightedCollection make_collection(int n, std::span<const WeightedEntry> entries);

// Adds every missing subset of every entry with the given fill weight; the
// fill must be finite (weight zero means absence, not membership).
WeightedCollection downward_closure(int n, std::span<const WeightedEntry> entries,
                                    double fill_log_weight);

// Upper bound on the number of relevant sets |C_Q|; exact when the family is
// complete up to max_card, otherwise min(m, 2^|Q|).
std::uint64_t relevant_count_upper(const WeightedCollection& c, Subset q);

// log of sum of w(S) over entries S that are subsets of q, by scanning all
// m entries. Reference oracle for the engines.
double brute_force_weight(const WeightedCollection& c, Subset q);

// All 2^n query totals at once, n * 2^n additions in the normalized linear
// domain. Oracle-scale only (n <= 24).
class ZetaTable {
 public:
  ZetaTable(int n, double log_scale, std::vector<double> linear)
      : n_(n), log_scale_(log_scale), linear_(std::move(linear)) {}
  int n() const { return n_; }
  double log_weight(Subset q) const;

 private:
  int n_;
  double log_scale_;
  std::vector<double> linear_;
};

ZetaTable zeta_all(const WeightedCollection& c);

// Text weight-table format:
//   subsetweights 1
//   n <int>
//   entries <m>
//   <subset> TAB <log_weight>   (m lines; "." is the empty set)
// Writers emit entries in lexicographic subset order.
WeightedCollection read_weight_table(std::istream& in);
void write_weight_table(std::ostream& out, const WeightedCollection& c);
WeightedCollection load_weight_table(const std::string& path);
void save_weight_table(const std::string& path, const WeightedCollection& c);

}  // namespace subcount
