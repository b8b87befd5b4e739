#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subcount/engines.hpp"
#include "subcount/generators.hpp"

namespace subcount {

struct BenchInstance {
  std::string id;
  std::string family;            // generator family name, or "file"
  std::optional<GenSpec> gen;    // set for generated instances
  std::string path;              // set for file instances

  static BenchInstance from_file(const std::string& path);
  static BenchInstance from_gen(const GenSpec& spec);
};

struct BenchConfig {
  std::vector<BenchInstance> instances;
  std::vector<EngineKind> engines;
  std::vector<double> tolerances;
  std::vector<int> sizes;      // query set sizes; empty means 1..n
  int queries_per_size = 1;
  std::uint64_t seed = 0;
  bool validate = false;       // oracle-check every query row (n <= 20 only)
};

struct BenchRow {
  std::string instance;
  std::string family;
  int n = 0;
  int k = 0;
  std::string engine;  // engine name, or build_sorted / build_treedy
  double tolerance = 0.0;
  int query_size = 0;
  int query_idx = 0;
  std::uint64_t visited = 0;
  std::uint64_t relevant_acc = 0;
  bool switched = false;
  double log_result = 0.0;
  std::uint64_t elapsed_ns = 0;
};

// One row per (instance, size, query, engine, tolerance); query sets are
// shared across engines and tolerances so visit counts compare paired.
// Structure builds are timed separately, one build row per built structure
// per instance. Rows come back in canonical order (instance, engine,
// tolerance, size, index) regardless of execution order.
std::vector<BenchRow> run_bench(const BenchConfig& cfg);

struct BenchSummary {
  std::string engine;
  double tolerance = 0.0;
  int query_size = 0;
  std::size_t rows = 0;
  double median_visited = 0.0;
  double mean_visited = 0.0;
  double mean_elapsed_ns = 0.0;
};

// Per (engine, tolerance, size) aggregates over query rows; build rows are
// ignored. Errors: EmptyInput.
std::vector<BenchSummary> summarize(std::span<const BenchRow> rows);

inline constexpr const char* kCsvHeader =
    "instance,family,n,k,engine,tolerance,query_size,query_idx,visited,"
    "relevant_acc,switched,log_result,elapsed_ns";

void write_csv(std::ostream& out, std::span<const BenchRow> rows);

}  // namespace subcount
