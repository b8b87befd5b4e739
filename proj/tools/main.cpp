#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "subcount/bench.hpp"
#include "subcount/collection.hpp"
#include "subcount/engines.hpp"
#include "subcount/error.hpp"
#include "subcount/generators.hpp"
#include "subcount/ordering.hpp"
#include "subcount/sampling.hpp"

namespace {

using namespace subcount;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidTolerance:
    case ErrorCode::InvalidSubset:
    case ErrorCode::InvalidOrdering:
    case ErrorCode::SizeOutOfRange:
      return kExitUsage;
    default:
      return kExitData;
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

EngineKind engine_from_flag(const std::string& name) {
  auto kind = parse_engine(name);
  if (!kind) raise(ErrorCode::InvalidSubset, "unknown engine '" + name + "'");
  return *kind;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

GenSpec parse_gen_spec(const std::string& text, std::uint64_t default_seed) {
  auto parts = split_list(text);
  if (parts.size() != 3 && parts.size() != 4)
    raise(ErrorCode::SizeOutOfRange,
          "--gen expects <family>,<n>,<k>[,<seed>], got '" + text + "'");
  auto family = parse_family(parts[0]);
  if (!family)
    raise(ErrorCode::SizeOutOfRange, "unknown family '" + parts[0] + "'");
  GenSpec spec;
  spec.family = *family;
  spec.n = std::stoi(parts[1]);
  spec.k = std::stoi(parts[2]);
  spec.seed = parts.size() == 4 ? std::stoull(parts[3]) : default_seed;
  return spec;
}

std::vector<int> parse_sizes(const std::string& text, int n) {
  std::vector<int> sizes;
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    std::string hi = text.substr(dots + 2);
    int lo = std::stoi(text.substr(0, dots));
    int high = hi == "n" ? n : std::stoi(hi);
    for (int s = lo; s <= high; ++s) sizes.push_back(s);
  } else {
    for (const auto& tok : split_list(text)) sizes.push_back(std::stoi(tok));
  }
  return sizes;
}

struct GenerateArgs {
  std::string family;
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  auto family = parse_family(a.family);
  if (!family) raise(ErrorCode::SizeOutOfRange, "unknown family '" + a.family + "'");
  GenSpec spec{*family, a.n, a.k, a.seed};
  WeightedCollection c = gen_instance(spec);
  save_weight_table(a.out, c);
  std::cout << "m=" << c.size() << " log_wmax=" << fmt(c.log_wmax()) << "\n";
  return kExitOk;
}

struct QueryArgs {
  std::string weights;
  std::string engine = "treedy";
  double tolerance = 0.0;
  std::string query;
};

int run_query(const QueryArgs& a) {
  EngineKind kind = engine_from_flag(a.engine);
  if (!(a.tolerance >= 0.0 && a.tolerance <= 1.0))
    raise(ErrorCode::InvalidTolerance, "tolerance must be in [0, 1]");
  EngineSet engines = EngineSet::build(load_weight_table(a.weights));
  Subset q = parse_subset(a.query, engines.collection.n());
  CountResult r = engines.run(kind, q, a.tolerance);
  std::cout << "log_w=" << fmt(r.log_total) << " visited=" << r.visited
            << " relevant=" << r.relevant_accumulated
            << " switched=" << (r.switched_to_exact ? 1 : 0) << "\n";
  return kExitOk;
}

struct SampleArgs {
  std::string weights;
  std::string engine = "treedy";
  double tolerance = 0.0;
  std::string query;
  std::size_t count = 1;
  std::uint64_t seed = 0;
};

int run_sample(const SampleArgs& a) {
  EngineKind kind = engine_from_flag(a.engine);
  if (!(a.tolerance >= 0.0 && a.tolerance < 1.0))
    raise(ErrorCode::InvalidTolerance, "sampling requires tolerance in [0, 1)");
  EngineSet engines = EngineSet::build(load_weight_table(a.weights));
  Subset q = parse_subset(a.query, engines.collection.n());
  CollectorTrace trace = collect_trace(engines, kind, q, a.tolerance);
  for (Subset s : sample_many(trace, a.count, a.seed))
    std::cout << format_subset(s) << "\n";
  return kExitOk;
}

struct BenchArgs {
  std::vector<std::string> weights;
  std::vector<std::string> gens;
  std::string engines = "exact,sorted,treedy,ideal";
  std::string tolerances = "0.1";
  std::string sizes = "1..n";
  int queries_per_size = 1;
  std::uint64_t seed = 0;
  std::string out;
  bool validate = false;
};

int run_bench_cmd(const BenchArgs& a) {
  BenchConfig cfg;
  for (const auto& path : a.weights)
    cfg.instances.push_back(BenchInstance::from_file(path));
  for (std::size_t i = 0; i < a.gens.size(); ++i) {
    // Repeated --gen without explicit seeds get consecutive ones.
    GenSpec spec = parse_gen_spec(a.gens[i], a.seed + i);
    cfg.instances.push_back(BenchInstance::from_gen(spec));
  }
  if (cfg.instances.empty())
    raise(ErrorCode::SizeOutOfRange, "need at least one --weights or --gen");
  for (const auto& name : split_list(a.engines))
    cfg.engines.push_back(engine_from_flag(name));
  for (const auto& tok : split_list(a.tolerances))
    cfg.tolerances.push_back(std::stod(tok));
  if (a.sizes != "1..n") {
    cfg.sizes = parse_sizes(a.sizes, 64);  // validated against n in run_bench
  }
  cfg.queries_per_size = a.queries_per_size;
  cfg.seed = a.seed;
  cfg.validate = a.validate;

  std::vector<BenchRow> rows = run_bench(cfg);
  std::ofstream out(a.out);
  if (!out) raise(ErrorCode::IoError, "cannot open " + a.out + " for writing");
  write_csv(out, rows);
  out.flush();
  if (!out) raise(ErrorCode::IoError, "failed writing " + a.out);

  // Pooled medians per engine and tolerance, over all sizes.
  std::map<std::pair<std::string, double>, std::vector<double>> pooled;
  for (const BenchRow& r : rows)
    if (r.engine.rfind("build_", 0) != 0)
      pooled[{r.engine, r.tolerance}].push_back(static_cast<double>(r.visited));
  for (auto& [key, visits] : pooled) {
    std::sort(visits.begin(), visits.end());
    std::size_t half = visits.size() / 2;
    double median = visits.size() % 2 ? visits[half]
                                      : (visits[half - 1] + visits[half]) / 2.0;
    std::cout << key.first << " d=" << fmt(key.second)
              << " median_visited=" << fmt(median) << "\n";
  }
  return kExitOk;
}

struct OrderArgs {
  std::string manifest;
  std::string mode = "score";
  std::string ordering;
  std::size_t steps = 0;
  double tolerance = 0.0;
  std::string engine = "treedy";
  std::uint64_t seed = 0;
};

Ordering parse_ordering(const std::string& text, int n) {
  Ordering o;
  std::stringstream ss(text);
  int v = 0;
  while (ss >> v) o.push_back(v);
  if (o.empty() && !text.empty())
    raise(ErrorCode::InvalidOrdering, "cannot parse ordering '" + text + "'");
  if (o.empty())
    for (int i = 0; i < n; ++i) o.push_back(i);
  return o;
}

int run_order(const OrderArgs& a) {
  EngineKind kind = engine_from_flag(a.engine);
  NodeTables tables = load_tables(a.manifest);
  Ordering o = parse_ordering(a.ordering, tables.n);

  if (a.mode == "score") {
    std::cout << "log_score=" << fmt(ordering_log_score(tables, o, a.tolerance, kind))
              << "\n";
  } else if (a.mode == "mcmc") {
    auto chain = mcmc_orderings(tables, a.steps, a.tolerance, kind, a.seed, &o);
    for (std::size_t i = 0; i < chain.size(); ++i) {
      std::cout << i << "\t" << fmt(chain[i].log_score) << "\t";
      for (std::size_t j = 0; j < chain[i].ordering.size(); ++j)
        std::cout << (j ? " " : "") << chain[i].ordering[j];
      std::cout << "\n";
    }
  } else if (a.mode == "dag") {
    Rng rng(a.seed);
    auto parents = sample_dag(tables, o, a.tolerance, kind, rng);
    for (int v = 0; v < tables.n; ++v)
      std::cout << v << "\t" << format_subset(parents[v]) << "\n";
  } else {
    raise(ErrorCode::InvalidOrdering, "unknown mode '" + a.mode + "'");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approximate subset counting and sampling over weighted downward "
               "closed collections"};
  app.require_subcommand(1);

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "write a random weight-table file");
  gen->add_option("--family", gen_args.family, "flat|steep|mixture|shuffled")->required();
  gen->add_option("--n", gen_args.n, "ground set size")->required()->check(CLI::Range(1, 64));
  gen->add_option("--k", gen_args.k, "maximum subset size")->required()->check(CLI::Range(1, 64));
  gen->add_option("--seed", gen_args.seed, "random seed");
  gen->add_option("--out", gen_args.out, "output path")->required();

  QueryArgs query_args;
  auto* query = app.add_subcommand("query", "answer one counting query");
  query->add_option("--weights", query_args.weights, "weight-table file")->required();
  query->add_option("--engine", query_args.engine, "exact|sorted|treedy|ideal");
  query->add_option("--tolerance", query_args.tolerance, "relative error bound");
  query->add_option("--query", query_args.query, "comma-separated indices or '.'")->required();

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "draw subsets of the query set");
  sample->add_option("--weights", sample_args.weights)->required();
  sample->add_option("--engine", sample_args.engine, "exact|sorted|treedy|ideal");
  sample->add_option("--tolerance", sample_args.tolerance, "total variation bound");
  sample->add_option("--query", sample_args.query)->required();
  sample->add_option("--count", sample_args.count, "number of draws");
  sample->add_option("--seed", sample_args.seed, "random seed");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "run engines over query sweeps, emit CSV");
  bench->add_option("--weights", bench_args.weights, "weight-table file(s)");
  bench->add_option("--gen", bench_args.gens, "generated instance(s) <family>,<n>,<k>");
  bench->add_option("--engines", bench_args.engines, "comma-separated engine list");
  bench->add_option("--tolerances", bench_args.tolerances, "comma-separated tolerances");
  bench->add_option("--sizes", bench_args.sizes, "query sizes: 1..n or comma list");
  bench->add_option("--queries-per-size", bench_args.queries_per_size)->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_args.seed, "random seed");
  bench->add_option("--out", bench_args.out, "output CSV path")->required();
  bench->add_flag("--validate", bench_args.validate, "oracle-check every row (n <= 20)");

  OrderArgs order_args;
  auto* order = app.add_subcommand("order", "node-ordering scores, DAG draws, MCMC");
  order->add_option("--manifest", order_args.manifest, "ordertables manifest")->required();
  order->add_option("--mode", order_args.mode, "score|mcmc|dag");
  order->add_option("--ordering", order_args.ordering, "space-separated permutation");
  order->add_option("--steps", order_args.steps, "MCMC step count");
  order->add_option("--tolerance", order_args.tolerance, "total tolerance, split d/n");
  order->add_option("--engine", order_args.engine, "exact|sorted|treedy|ideal");
  order->add_option("--seed", order_args.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return run_generate(gen_args);
    if (query->parsed()) return run_query(query_args);
    if (sample->parsed()) return run_sample(sample_args);
    if (bench->parsed()) return run_bench_cmd(bench_args);
    if (order->parsed()) return run_order(order_args);
  } catch (const subcount::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad numeric argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: numeric argument out of range: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}
