#include "subcount/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <ostream>

#include "subcount/error.hpp"
#include "subcount/logsum.hpp"

namespace subcount {

BenchInstance BenchInstance::from_file(const std::string& path) {
  BenchInstance inst;
  inst.id = std::filesystem::path(path).stem().string();
  inst.family = "file";
  inst.path = path;
  return inst;
}

BenchInstance BenchInstance::from_gen(const GenSpec& spec) {
  BenchInstance inst;
  inst.id = instance_id(spec);
  inst.family = to_string(spec.family);
  inst.gen = spec;
  return inst;
}

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point a, Clock::time_point b) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count());
}

int engine_rank(const std::string& engine) {
  if (engine == "build_sorted") return 0;
  if (engine == "build_treedy") return 1;
  if (engine == "exact") return 2;
  if (engine == "sorted") return 3;
  if (engine == "treedy") return 4;
  if (engine == "ideal") return 5;
  return 6;
}

void oracle_check(const WeightedCollection& c, Subset q, double tolerance,
                  const BenchRow& row) {
  double oracle = brute_force_weight(c, q);
  double lower = tolerance >= 1.0 ? kNegInf : oracle + std::log1p(-tolerance);
  if (row.log_result > oracle + 1e-9 || row.log_result < lower - 1e-9)
    raise(ErrorCode::ValidationFailed,
          row.engine + " d=" + std::to_string(tolerance) + " on " + row.instance +
              " q=" + format_subset(q) + ": log W'=" + std::to_string(row.log_result) +
              " outside [" + std::to_string(lower) + ", " + std::to_string(oracle) + "]");
}

std::string fmt_double(double v, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, v);
  return buf;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  if (cfg.instances.empty()) raise(ErrorCode::EmptyInput, "no instances");
  if (cfg.engines.empty()) raise(ErrorCode::EmptyInput, "no engines");
  if (cfg.tolerances.empty()) raise(ErrorCode::EmptyInput, "no tolerances");
  if (cfg.queries_per_size < 1)
    raise(ErrorCode::SizeOutOfRange, "queries_per_size must be >= 1");
  for (double d : cfg.tolerances)
    if (!(d >= 0.0 && d <= 1.0))
      raise(ErrorCode::InvalidTolerance, "tolerance must be in [0, 1]");

  auto has_engine = [&](EngineKind kind) {
    return std::find(cfg.engines.begin(), cfg.engines.end(), kind) !=
           cfg.engines.end();
  };

  std::vector<BenchRow> rows;
  for (std::size_t inst_idx = 0; inst_idx < cfg.instances.size(); ++inst_idx) {
    const BenchInstance& inst = cfg.instances[inst_idx];
    WeightedCollection col =
        inst.gen ? gen_instance(*inst.gen) : load_weight_table(inst.path);

    BenchRow base;
    base.instance = inst.id;
    base.family = inst.family;
    base.n = col.n();
    base.k = col.max_card();

    SortedIndex sorted_idx;
    GreedyTree greedy_tree;
    if (has_engine(EngineKind::sorted)) {
      auto t0 = Clock::now();
      sorted_idx = build_sorted_index(col);
      auto t1 = Clock::now();
      BenchRow row = base;
      row.engine = "build_sorted";
      row.elapsed_ns = elapsed_ns(t0, t1);
      rows.push_back(row);
    }
    if (has_engine(EngineKind::treedy)) {
      auto t0 = Clock::now();
      greedy_tree = build_greedy_tree(col);
      auto t1 = Clock::now();
      BenchRow row = base;
      row.engine = "build_treedy";
      row.elapsed_ns = elapsed_ns(t0, t1);
      rows.push_back(row);
    }

    std::vector<int> sizes = cfg.sizes;
    if (sizes.empty())
      for (int s = 1; s <= col.n(); ++s) sizes.push_back(s);
    for (int s : sizes)
      if (s < 0 || s > col.n())
        raise(ErrorCode::SizeOutOfRange,
              "query size " + std::to_string(s) + " for n=" + std::to_string(col.n()));

    for (int size : sizes) {
      for (int qi = 0; qi < cfg.queries_per_size; ++qi) {
        // One query shared by all engines and tolerances (paired comparison).
        std::uint64_t stream =
            (static_cast<std::uint64_t>(inst_idx) << 40) |
            (static_cast<std::uint64_t>(size) << 24) | static_cast<std::uint64_t>(qi);
        Rng rng(split_seed(cfg.seed, stream));
        Subset q = sample_query(col.n(), size, rng);

        for (EngineKind kind : cfg.engines) {
          for (double d : cfg.tolerances) {
            auto t0 = Clock::now();
            CountResult r;
            switch (kind) {
              case EngineKind::exact: r = exact_count(col, q); break;
              case EngineKind::sorted: r = sorted_count(sorted_idx, col, q, d); break;
              case EngineKind::treedy: r = treedy_count(greedy_tree, q, d); break;
              case EngineKind::ideal: r = ideal_count(col, q, d); break;
            }
            auto t1 = Clock::now();

            BenchRow row = base;
            row.engine = to_string(kind);
            row.tolerance = d;
            row.query_size = size;
            row.query_idx = qi;
            row.visited = r.visited;
            row.relevant_acc = r.relevant_accumulated;
            row.switched = r.switched_to_exact;
            row.log_result = r.log_total;
            row.elapsed_ns = elapsed_ns(t0, t1);
            if (cfg.validate && col.n() <= 20)
              oracle_check(col, q, kind == EngineKind::exact ? 0.0 : d, row);
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const BenchRow& a, const BenchRow& b) {
                     if (a.instance != b.instance) return a.instance < b.instance;
                     int ra = engine_rank(a.engine), rb = engine_rank(b.engine);
                     if (ra != rb) return ra < rb;
                     if (a.tolerance != b.tolerance) return a.tolerance < b.tolerance;
                     if (a.query_size != b.query_size) return a.query_size < b.query_size;
                     return a.query_idx < b.query_idx;
                   });
  return rows;
}

std::vector<BenchSummary> summarize(std::span<const BenchRow> rows) {
  std::map<std::tuple<std::string, double, int>, std::vector<const BenchRow*>> groups;
  for (const BenchRow& row : rows) {
    if (row.engine.rfind("build_", 0) == 0) continue;
    groups[{row.engine, row.tolerance, row.query_size}].push_back(&row);
  }
  if (groups.empty()) raise(ErrorCode::EmptyInput, "no query rows to summarize");

  std::vector<BenchSummary> out;
  out.reserve(groups.size());
  for (auto& [key, members] : groups) {
    BenchSummary s;
    s.engine = std::get<0>(key);
    s.tolerance = std::get<1>(key);
    s.query_size = std::get<2>(key);
    s.rows = members.size();
    std::vector<double> visited;
    visited.reserve(members.size());
    double visit_sum = 0.0, time_sum = 0.0;
    for (const BenchRow* r : members) {
      visited.push_back(static_cast<double>(r->visited));
      visit_sum += static_cast<double>(r->visited);
      time_sum += static_cast<double>(r->elapsed_ns);
    }
    std::sort(visited.begin(), visited.end());
    std::size_t half = visited.size() / 2;
    s.median_visited = visited.size() % 2 ? visited[half]
                                          : (visited[half - 1] + visited[half]) / 2.0;
    s.mean_visited = visit_sum / static_cast<double>(members.size());
    s.mean_elapsed_ns = time_sum / static_cast<double>(members.size());
    out.push_back(std::move(s));
  }
  return out;
}

void write_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << kCsvHeader << "\n";
  for (const BenchRow& r : rows) {
    out << r.instance << ',' << r.family << ',' << r.n << ',' << r.k << ','
        << r.engine << ',' << fmt_double(r.tolerance, 12) << ',' << r.query_size
        << ',' << r.query_idx << ',' << r.visited << ',' << r.relevant_acc << ','
        << (r.switched ? 1 : 0) << ',' << fmt_double(r.log_result, 12) << ','
        << r.elapsed_ns << "\n";
  }
}

}  // namespace subcount
