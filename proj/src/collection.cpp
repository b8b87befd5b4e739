#include "subcount/collection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "subcount/error.hpp"
#include "subcount/logsum.hpp"

namespace subcount {

namespace {

bool entry_lex_less(const WeightedEntry& a, const WeightedEntry& b) {
  return lex_less(a.set, b.set);
}

// Sum over i <= upto of C(q, i); terms stay within the entry count of any
// complete family, so no overflow handling is needed beyond saturation.
std::uint64_t binomial_prefix_sum(int q, int upto) {
  std::uint64_t total = 0;
  std::uint64_t term = 1;  // C(q, 0)
  for (int i = 0;; ++i) {
    total += term;
    if (i >= upto || i >= q) break;
    term = term * static_cast<std::uint64_t>(q - i) / static_cast<std::uint64_t>(i + 1);
  }
  return total;
}

}  // namespace

std::optional<std::size_t> WeightedCollection::find(Subset s) const {
  auto it = std::lower_bound(sets_.begin(), sets_.end(), s, LexLess{});
  if (it == sets_.end() || !(*it == s)) return std::nullopt;
  return static_cast<std::size_t>(it - sets_.begin());
}

WeightedCollection make_collection(int n, std::span<const WeightedEntry> entries) {
  if (n < 0 || n > 64)
    raise(ErrorCode::GroundSetTooLarge,
          "ground set size " + std::to_string(n) + " outside [0, 64]");
  if (entries.empty()) raise(ErrorCode::EmptyInput, "no entries");

  std::vector<WeightedEntry> sorted(entries.begin(), entries.end());
  for (const auto& e : sorted) {
    if (!valid_for(e.set, n))
      raise(ErrorCode::InvalidSubset,
            "subset " + format_subset(e.set) + " outside ground set of size " +
                std::to_string(n));
    if (!std::isfinite(e.log_weight))
      raise(ErrorCode::NonFiniteWeight,
            "log weight of " + format_subset(e.set) + " is not finite");
  }
  std::sort(sorted.begin(), sorted.end(), entry_lex_less);
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].set == sorted[i - 1].set)
      raise(ErrorCode::DuplicateSubset, format_subset(sorted[i].set));

  WeightedCollection c;
  c.n_ = n;
  c.sets_.reserve(sorted.size());
  c.log_weight_.reserve(sorted.size());
  for (const auto& e : sorted) {
    c.sets_.push_back(e.set);
    c.log_weight_.push_back(e.log_weight);
  }

  // Closure check: every one-element removal must be present. Removing the
  // largest element first names the lexicographic parent when it is missing.
  for (Subset s : c.sets_) {
    std::uint64_t rest = s.bits;
    while (rest) {
      int x = 63 - std::countl_zero(rest);
      rest &= ~(std::uint64_t{1} << x);
      if (!c.find(s.without(x)))
        raise(ErrorCode::NotDownwardClosed,
              "missing subset " + format_subset(s.without(x)) + " of " +
                  format_subset(s));
    }
  }

  c.max_card_ = 0;
  for (Subset s : c.sets_) c.max_card_ = std::max(c.max_card_, s.cardinality());
  c.complete_upto_k_ =
      c.sets_.size() == binomial_prefix_sum(n, c.max_card_);
  c.log_wmax_ = *std::max_element(c.log_weight_.begin(), c.log_weight_.end());
  c.wtilde_.reserve(c.sets_.size());
  for (double lw : c.log_weight_) c.wtilde_.push_back(std::exp(lw - c.log_wmax_));

  // Lexicographic-tree children in CSR form. Iterating entries in lex order
  // appends each parent's children in ascending extension label.
  std::size_t m = c.sets_.size();
  c.child_begin_.assign(m + 1, 0);
  std::vector<std::uint32_t> parent(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    Subset s = c.sets_[i];
    if (s.empty()) continue;
    auto p = c.find(s.without(s.max_element()));
    parent[i] = static_cast<std::uint32_t>(*p);
    ++c.child_begin_[*p + 1];
  }
  for (std::size_t i = 0; i < m; ++i) c.child_begin_[i + 1] += c.child_begin_[i];
  c.child_list_.resize(m == 0 ? 0 : m - 1);
  std::vector<std::uint32_t> cursor(c.child_begin_.begin(), c.child_begin_.end() - 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (c.sets_[i].empty()) continue;
    c.child_list_[cursor[parent[i]]++] = static_cast<std::uint32_t>(i);
  }
  return c;
}

WeightedCollection downward_closure(int n, std::span<const WeightedEntry> entries,
                                    double fill_log_weight) {
  if (!std::isfinite(fill_log_weight))
    raise(ErrorCode::NonFiniteFill, "fill log weight must be finite");
  if (entries.empty()) raise(ErrorCode::EmptyInput, "no entries");

  std::unordered_map<std::uint64_t, double> weights;
  weights.reserve(entries.size() * 2);
  for (const auto& e : entries) {
    if (!valid_for(e.set, n))
      raise(ErrorCode::InvalidSubset,
            "subset " + format_subset(e.set) + " outside ground set of size " +
                std::to_string(n));
    if (!weights.emplace(e.set.bits, e.log_weight).second)
      raise(ErrorCode::DuplicateSubset, format_subset(e.set));
  }
  std::vector<std::uint64_t> todo;
  todo.reserve(weights.size());
  for (const auto& [bits, lw] : weights) todo.push_back(bits);
  while (!todo.empty()) {
    std::uint64_t bits = todo.back();
    todo.pop_back();
    std::uint64_t rest = bits;
    while (rest) {
      std::uint64_t low = rest & (0 - rest);
      rest ^= low;
      std::uint64_t sub = bits ^ low;
      if (weights.emplace(sub, fill_log_weight).second) todo.push_back(sub);
    }
  }
  std::vector<WeightedEntry> all;
  all.reserve(weights.size());
  for (const auto& [bits, lw] : weights) all.push_back({Subset(bits), lw});
  return make_collection(n, all);
}

std::uint64_t relevant_count_upper(const WeightedCollection& c, Subset q) {
  int qsize = q.cardinality();
  if (c.complete_upto_k())
    return binomial_prefix_sum(qsize, c.max_card());
  if (qsize >= 63) return c.size();
  return std::min<std::uint64_t>(c.size(), std::uint64_t{1} << qsize);
}

double brute_force_weight(const WeightedCollection& c, Subset q) {
  double mx = kNegInf;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.set_at(i).is_subset_of(q)) mx = std::max(mx, c.log_weight_at(i));
  if (mx == kNegInf) return kNegInf;
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.set_at(i).is_subset_of(q)) sum += std::exp(c.log_weight_at(i) - mx);
  return mx + std::log(sum);
}

double ZetaTable::log_weight(Subset q) const {
  double v = linear_[q.bits];
  return v > 0.0 ? std::log(v) + log_scale_ : kNegInf;
}

ZetaTable zeta_all(const WeightedCollection& c) {
  if (c.n() > 24)
    raise(ErrorCode::GroundSetTooLarge,
          "zeta_all limited to n <= 24, got " + std::to_string(c.n()));
  std::vector<double> table(std::uint64_t{1} << c.n(), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i)
    table[c.set_at(i).bits] = c.wtilde_at(i);
  for (int bit = 0; bit < c.n(); ++bit) {
    std::uint64_t step = std::uint64_t{1} << bit;
    for (std::uint64_t mask = 0; mask < table.size(); ++mask)
      if (mask & step) table[mask] += table[mask ^ step];
  }
  return ZetaTable(c.n(), c.log_wmax(), std::move(table));
}

namespace {

std::string fmt_double(double v, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, v);
  return buf;
}

[[noreturn]] void load_fail(const std::string& what) {
  raise(ErrorCode::LoadError, what);
}

}  // namespace

WeightedCollection read_weight_table(std::istream& in) {
  std::string word;
  int version = 0;
  if (!(in >> word >> version) || word != "subsetweights" || version != 1)
    load_fail("expected 'subsetweights 1' header");
  int n = -1;
  if (!(in >> word >> n) || word != "n" || n < 0 || n > 64)
    load_fail("expected 'n <int>' with n in [0, 64]");
  std::size_t m = 0;
  if (!(in >> word >> m) || word != "entries" || m == 0)
    load_fail("expected 'entries <m>' with m >= 1");
  std::vector<WeightedEntry> entries;
  entries.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::string subset_text;
    double lw = 0.0;
    if (!(in >> subset_text >> lw))
      load_fail("truncated entry " + std::to_string(i + 1) + " of " +
                std::to_string(m));
    if (!std::isfinite(lw))
      load_fail("non-finite log weight for subset " + subset_text);
    entries.push_back({parse_subset(subset_text, n), lw});
  }
  if (in >> word) load_fail("trailing content after " + std::to_string(m) + " entries");
  return make_collection(n, entries);
}

void write_weight_table(std::ostream& out, const WeightedCollection& c) {
  out << "subsetweights 1\n";
  out << "n " << c.n() << "\n";
  out << "entries " << c.size() << "\n";
  for (std::size_t i = 0; i < c.size(); ++i)
    out << format_subset(c.set_at(i)) << "\t" << fmt_double(c.log_weight_at(i), 17)
        << "\n";
}

WeightedCollection load_weight_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open " + path);
  try {
    return read_weight_table(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void save_weight_table(const std::string& path, const WeightedCollection& c) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::IoError, "cannot open " + path + " for writing");
  write_weight_table(out, c);
  out.flush();
  if (!out) raise(ErrorCode::IoError, "failed writing " + path);
}

}  // namespace subcount
