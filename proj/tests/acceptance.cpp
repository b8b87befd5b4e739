// Acceptance suite: end-to-end checks of the library's headline guarantees,
// one pass/fail line per criterion. Returns the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "subcount/bench.hpp"
#include "subcount/collection.hpp"
#include "subcount/engines.hpp"
#include "subcount/generators.hpp"
#include "subcount/ordering.hpp"
#include "subcount/rng.hpp"
#include "subcount/sampling.hpp"
#include "testutil.hpp"

using namespace subcount;
using namespace testutil;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& text) { g_notes.push_back(text); }

void report(const char* name, bool ok) {
  std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name);
  for (const auto& n : g_notes) std::printf("       %s\n", n.c_str());
  g_notes.clear();
  if (!ok) ++g_failures;
}

bool expect(bool cond, const std::string& what) {
  if (!cond) note("violation: " + what);
  return cond;
}

std::vector<Subset> visit_sets(const VisitLog& log) {
  std::vector<Subset> out;
  for (const auto& e : log.events) out.push_back(e.set);
  return out;
}

std::string join_sets(const std::vector<Subset>& sets) {
  std::string out;
  for (Subset s : sets) {
    if (!out.empty()) out += " ";
    out += format_subset(s);
  }
  return out;
}

// --- Criterion 1: the worked reference example, all four engines ----------

bool table1_golden() {
  bool ok = true;
  EngineSet engines = EngineSet::build(example_collection());
  Subset q = mask({1, 2, 3});

  {
    VisitLog log;
    QueryInstrumentation instr;
    instr.visits = &log;
    CountResult r = exact_count(engines.collection, q, &instr);
    std::vector<Subset> want = {Subset{},     mask({0}), mask({1}),
                                mask({1, 2}), mask({1, 3}), mask({2}),
                                mask({2, 3}), mask({3})};
    ok &= expect(visit_sets(log) == want,
                 "exact visit order was " + join_sets(visit_sets(log)));
    ok &= expect(close_rel(r.log_total, std::log(250.0)), "exact total != 250");
  }
  {
    VisitLog log;
    QueryInstrumentation instr;
    instr.visits = &log;
    CountResult r = sorted_count(engines.sorted, engines.collection, q, 0.2, &instr);
    std::vector<Subset> want = {mask({0, 1}), mask({0, 3}), mask({0}), Subset{},
                                mask({1}),    mask({0, 2}), mask({3})};
    ok &= expect(visit_sets(log) == want,
                 "sorted scan order was " + join_sets(visit_sets(log)));
    ok &= expect(r.visited == 7, "sorted visited != 7");
    ok &= expect(!r.switched_to_exact, "sorted switched to exact");
    ok &= expect(close_rel(r.log_total, std::log(200.0)), "sorted W' != 200");
  }
  {
    VisitLog log;
    std::vector<Accumulation> pops;
    QueryInstrumentation instr;
    instr.visits = &log;
    instr.accumulation = &pops;
    CountResult r = treedy_count(engines.greedy, q, 0.2, &instr);
    std::vector<Subset> want = {Subset{},  mask({0}),    mask({1}),
                                mask({3}), mask({1, 3}), mask({2})};
    std::vector<Subset> want_pops = {Subset{}, mask({1}), mask({3})};
    std::vector<Subset> got_pops;
    for (const auto& a : pops) got_pops.push_back(a.set);
    ok &= expect(visit_sets(log) == want,
                 "treedy visit order was " + join_sets(visit_sets(log)));
    ok &= expect(got_pops == want_pops,
                 "treedy pop order was " + join_sets(got_pops));
    ok &= expect(close_rel(r.log_total, std::log(200.0)), "treedy W' != 200");
  }
  {
    std::vector<Accumulation> acc;
    QueryInstrumentation instr;
    instr.accumulation = &acc;
    CountResult r = ideal_count(engines.collection, q, 0.2, &instr);
    std::vector<Subset> want = {Subset{}, mask({1}), mask({3})};
    std::vector<Subset> got;
    for (const auto& a : acc) got.push_back(a.set);
    ok &= expect(r.visited == 3, "ideal r != 3");
    ok &= expect(got == want, "ideal accumulated " + join_sets(got));
    ok &= expect(close_rel(r.log_total, std::log(200.0)), "ideal W' != 200");
  }
  return ok;
}

// --- Criterion 2: oracle equivalence over random instances ----------------

struct OracleCase {
  EngineSet engines;
  ZetaTable zeta;
  std::vector<Subset> queries;
};

std::vector<OracleCase> build_oracle_suite() {
  std::vector<OracleCase> suite;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EngineSet engines = EngineSet::build(random_closed_collection(seed));
    ZetaTable zeta = zeta_all(engines.collection);
    std::vector<Subset> queries;
    Rng rng(split_seed(seed, 1000));
    for (int i = 0; i < 100; ++i)
      queries.push_back(random_query(engines.collection, rng));
    suite.push_back({std::move(engines), std::move(zeta), std::move(queries)});
  }
  return suite;
}

bool oracle_equivalence(const std::vector<OracleCase>& suite) {
  const double tolerances[] = {0.0, 0.01, 0.1, 0.5};
  std::uint64_t violations = 0, checks = 0;
  for (const auto& oc : suite) {
    for (Subset q : oc.queries) {
      double oracle = oc.zeta.log_weight(q);
      if (!close_rel(oc.engines.run(EngineKind::exact, q, 0.0).log_total, oracle))
        ++violations;
      ++checks;
      for (double d : tolerances) {
        for (EngineKind kind :
             {EngineKind::sorted, EngineKind::treedy, EngineKind::ideal}) {
          double got = oc.engines.run(kind, q, d).log_total;
          ++checks;
          if (got > oracle + 1e-9 || got < oracle + std::log1p(-d) - 1e-9) {
            ++violations;
            if (violations <= 3)
              note(std::string(to_string(kind)) + " d=" + std::to_string(d) +
                   " q=" + format_subset(q) + ": " + std::to_string(got) +
                   " vs oracle " + std::to_string(oracle));
          }
        }
      }
    }
  }
  note(std::to_string(checks) + " checks, " + std::to_string(violations) +
       " violations");
  return violations == 0;
}

// --- Criterion 3: stopping-rule invariants, instrumented ------------------

bool invariant_instrumentation() {
  std::uint64_t violations = 0, steps = 0;
  for (std::uint64_t seed = 300; seed < 310; ++seed) {
    WeightedCollection c = random_closed_collection(seed);
    EngineSet engines = EngineSet::build(std::move(c));
    Rng rng(split_seed(seed, 2000));
    for (int trial = 0; trial < 10; ++trial) {
      Subset q = random_query(engines.collection, rng);
      double w_linear = std::exp(brute_force_weight(engines.collection, q) -
                                 engines.collection.log_wmax());
      for (double d : {0.0, 0.01, 0.1, 0.5}) {
        QueryInstrumentation ti;
        ti.treedy_step = [&](double wprime, double psi) {
          ++steps;
          if (wprime + psi < w_linear * (1.0 - 1e-9)) ++violations;
        };
        treedy_count(engines.greedy, q, d, &ti);

        QueryInstrumentation si;
        si.sorted_step = [&](std::size_t, std::uint64_t, double wprime,
                             double residual) {
          ++steps;
          if (residual < (w_linear - wprime) - 1e-9 * std::max(1.0, w_linear))
            ++violations;
        };
        sorted_count(engines.sorted, engines.collection, q, d, &si);
      }
    }
  }
  note(std::to_string(steps) + " instrumented steps, " +
       std::to_string(violations) + " violations");
  return violations == 0;
}

// --- Criterion 4: sampling accuracy on the reference trace ----------------

bool sampling_tv() {
  bool ok = true;
  EngineSet engines = EngineSet::build(example_collection());
  CollectorTrace tr = collect_trace(engines, EngineKind::treedy, mask({1, 2, 3}), 0.2);

  Distribution approx = trace_distribution(tr);
  Distribution exact;
  const double weights[] = {80, 70, 50, 14, 13, 12, 11};
  const Subset supports[] = {Subset{},     mask({1}),    mask({3}),
                             mask({1, 3}), mask({2}),    mask({2, 3}),
                             mask({1, 2})};
  for (int i = 0; i < 7; ++i) exact[supports[i]] = weights[i] / 250.0;
  double tv = tv_distance(approx, exact);
  ok &= expect(std::abs(tv - 0.2) < 1e-9,
               "tv distance " + std::to_string(tv) + " != 0.2");

  const std::size_t draws = 1000000;
  auto samples = sample_many(tr, draws, 20130701);
  std::map<std::uint64_t, double> freq;
  for (Subset s : samples) freq[s.bits] += 1.0 / static_cast<double>(draws);
  const double expected[] = {0.40, 0.35, 0.25};
  const Subset atoms[] = {Subset{}, mask({1}), mask({3})};
  double empirical_tv = 0.0;
  for (int i = 0; i < 3; ++i) {
    double got = freq[atoms[i].bits];
    empirical_tv += std::abs(got - expected[i]) / 2.0;
    note("pi'(" + format_subset(atoms[i]) + ") empirical " + std::to_string(got) +
         " expected " + std::to_string(expected[i]));
    ok &= expect(std::abs(got - expected[i]) <= 0.005, "empirical frequency off");
  }
  ok &= expect(empirical_tv <= 0.005,
               "empirical tv " + std::to_string(empirical_tv) + " above 0.005");
  return ok;
}

// --- Criterion 5: ideal is a lower bound on accumulation ------------------

bool ideal_minimality(const std::vector<OracleCase>& suite) {
  const double tolerances[] = {0.0, 0.01, 0.1, 0.5};
  std::uint64_t violations = 0, checks = 0;
  for (const auto& oc : suite) {
    for (Subset q : oc.queries) {
      for (double d : tolerances) {
        auto ideal = oc.engines.run(EngineKind::ideal, q, d);
        auto sorted = oc.engines.run(EngineKind::sorted, q, d);
        auto treedy = oc.engines.run(EngineKind::treedy, q, d);
        checks += 2;
        if (ideal.relevant_accumulated > sorted.relevant_accumulated) ++violations;
        if (ideal.relevant_accumulated > treedy.relevant_accumulated) ++violations;
      }
    }
  }
  note(std::to_string(checks) + " comparisons, " + std::to_string(violations) +
       " violations");
  return violations == 0;
}

// --- Criterion 6: visit-count speedups on a steep instance ----------------

bool figure2_proxy() {
  BenchConfig cfg;
  cfg.instances.push_back(BenchInstance::from_gen(GenSpec{Family::steep, 20, 3, 11}));
  cfg.engines = {EngineKind::exact, EngineKind::sorted, EngineKind::treedy};
  cfg.tolerances = {0.01};
  cfg.queries_per_size = 200;
  cfg.seed = 2013;
  cfg.validate = true;  // every row checked against the brute-force oracle
  auto rows = run_bench(cfg);

  std::map<std::string, std::vector<double>> visits;
  for (const auto& r : rows)
    if (r.engine.rfind("build_", 0) != 0)
      visits[r.engine].push_back(static_cast<double>(r.visited));
  auto median = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    std::size_t half = v.size() / 2;
    return v.size() % 2 ? v[half] : (v[half - 1] + v[half]) / 2.0;
  };
  double exact_med = median(visits["exact"]);
  double sorted_med = median(visits["sorted"]);
  double treedy_med = median(visits["treedy"]);
  note("median visits over 4000 queries: exact " + std::to_string(exact_med) +
       ", sorted " + std::to_string(sorted_med) + ", treedy " +
       std::to_string(treedy_med));
  bool ok = expect(treedy_med <= 0.10 * exact_med, "treedy median above 10% of exact");
  ok &= expect(sorted_med <= 0.50 * exact_med, "sorted median above 50% of exact");
  return ok;
}

// --- Criterion 7: generator guarantees -------------------------------------

bool generator_checks() {
  bool ok = true;
  {
    Rng rng(9);
    WeightedCollection c = gen_component(12, 3, 200.0, 0.25, rng);
    ok &= expect(c.log_weight_at(*c.find(Subset{})) == 0.0,
                 "component empty-set weight != 1");
  }
  for (Family family : {Family::flat, Family::steep, Family::mixture}) {
    WeightedCollection c = gen_instance(GenSpec{family, 20, 3, 5});
    ok &= expect(c.size() == 1351, std::string(to_string(family)) + " size != 1351");
    ok &= expect(c.complete_upto_k(), "instance not complete");
  }
  {
    WeightedCollection a = gen_instance(GenSpec{Family::mixture, 10, 3, 21});
    WeightedCollection b = gen_instance(GenSpec{Family::shuffled, 10, 3, 21});
    std::map<int, std::multiset<double>> ma, mb;
    for (std::size_t i = 0; i < a.size(); ++i) {
      ma[a.set_at(i).cardinality()].insert(a.log_weight_at(i));
      mb[b.set_at(i).cardinality()].insert(b.log_weight_at(i));
    }
    ok &= expect(ma == mb, "shuffle changed a per-cardinality weight multiset");
  }
  {
    TempDir dir;
    WeightedCollection a = gen_instance(GenSpec{Family::shuffled, 12, 3, 77});
    WeightedCollection b = gen_instance(GenSpec{Family::shuffled, 12, 3, 77});
    save_weight_table(dir.file("a.wt"), a);
    save_weight_table(dir.file("b.wt"), b);
    ok &= expect(slurp(dir.file("a.wt")) == slurp(dir.file("b.wt")),
                 "same seed produced different files");
  }
  return ok;
}

// --- Criterion 8: ordering scores, DAG sampling, MCMC ----------------------

bool ordering_composition() {
  bool ok = true;

  std::vector<WeightedCollection> tables;
  for (int v = 0; v < 4; ++v) {
    Rng rng(split_seed(404, static_cast<std::uint64_t>(v)));
    tables.push_back(gen_component(3, 2, 2.5, 0.6, rng));
  }
  NodeTables t = make_node_tables(std::move(tables));

  auto oracle_score = [&](const Ordering& o) {
    double score = 0.0;
    std::uint64_t prefix = 0;
    for (int v : o) {
      score += brute_force_weight(t.node[v].collection,
                                  Subset(NodeTables::local_mask(v, prefix)));
      prefix |= std::uint64_t{1} << v;
    }
    return score;
  };

  Ordering o{0, 1, 2, 3};
  int bad_exact = 0, bad_band = 0;
  do {
    double oracle = oracle_score(o);
    for (EngineKind kind : {EngineKind::exact, EngineKind::sorted,
                            EngineKind::treedy, EngineKind::ideal})
      if (!close_rel(ordering_log_score(t, o, 0.0, kind), oracle)) ++bad_exact;
    double approx = ordering_log_score(t, o, 0.1, EngineKind::treedy);
    if (approx > oracle + 1e-9 || approx < oracle + std::log(0.9) - 1e-9) ++bad_band;
  } while (std::next_permutation(o.begin(), o.end()));
  note("24 orderings x 4 engines: " + std::to_string(bad_exact) +
       " exact-score mismatches, " + std::to_string(bad_band) +
       " tolerance-band misses");
  ok &= expect(bad_exact == 0, "d=0 scores disagree with the oracle product");
  ok &= expect(bad_band == 0, "d=0.1 score left [log 0.9, 0] band");

  // Parent distributions under d = 0, 1e5 draws.
  {
    Ordering order{2, 0, 1, 3};
    const int draws = 100000;
    std::map<int, std::map<std::uint64_t, double>> freq;
    Rng rng(606);
    for (int i = 0; i < draws; ++i) {
      auto parents = sample_dag(t, order, 0.0, EngineKind::treedy, rng);
      for (int v = 0; v < t.n; ++v) freq[v][parents[v].bits] += 1.0 / draws;
    }
    double worst = 0.0;
    std::uint64_t prefix = 0;
    for (int v : order) {
      const WeightedCollection& c = t.node[v].collection;
      Subset q(NodeTables::local_mask(v, prefix));
      double total = std::exp(brute_force_weight(c, q));
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c.set_at(i).is_subset_of(q)) continue;
        double expected = std::exp(c.log_weight_at(i)) / total;
        std::uint64_t global = NodeTables::global_mask(v, c.set_at(i).bits);
        worst = std::max(worst, std::abs(freq[v][global] - expected));
      }
      prefix |= std::uint64_t{1} << v;
    }
    note("worst parent-frequency deviation over 1e5 draws: " + std::to_string(worst));
    ok &= expect(worst <= 0.01, "parent distribution off by more than 0.01");
  }

  // Two-node chain with stationary ratio 2:1.
  {
    std::vector<WeightedEntry> none{{Subset{}, 0.0}};
    std::vector<WeightedEntry> both{{Subset{}, 0.0}, {mask({0}), 0.0}};
    std::vector<WeightedCollection> two;
    two.push_back(make_collection(1, none));
    two.push_back(make_collection(1, both));
    NodeTables pair = make_node_tables(std::move(two));
    const std::size_t steps = 100000;
    auto chain = mcmc_orderings(pair, steps, 0.0, EngineKind::treedy, 31337);
    double hi = 0.0, lo = 0.0;
    for (const auto& s : chain)
      (s.ordering == Ordering{0, 1} ? hi : lo) += 1.0;
    note("occupancy ratio over 1e5 steps: " + std::to_string(hi / lo));
    ok &= expect(std::abs(hi / lo - 2.0) <= 0.1, "occupancy ratio outside 2.0 +- 5%");
  }
  return ok;
}

// --- Criterion 9: scale invariance -----------------------------------------

bool scale_invariance() {
  bool ok = true;
  std::vector<std::vector<WeightedEntry>> bases;
  bases.push_back(example_entries());
  {
    WeightedCollection c = gen_instance(GenSpec{Family::mixture, 10, 3, 13});
    std::vector<WeightedEntry> entries;
    for (std::size_t i = 0; i < c.size(); ++i)
      entries.push_back({c.set_at(i), c.log_weight_at(i)});
    bases.push_back(std::move(entries));
  }
  for (std::size_t which = 0; which < bases.size(); ++which) {
    auto entries = bases[which];
    int n = 0;
    for (const auto& e : entries)
      if (!e.set.empty()) n = std::max(n, e.set.max_element() + 1);
    EngineSet base = EngineSet::build(make_collection(n, entries));
    for (auto& e : entries) e.log_weight += 50.0;
    EngineSet shifted = EngineSet::build(make_collection(n, entries));

    Rng rng(split_seed(900, which));
    for (int trial = 0; trial < 40; ++trial) {
      Subset q = random_query(base.collection, rng);
      for (double d : {0.0, 0.01, 0.2}) {
        for (EngineKind kind : {EngineKind::exact, EngineKind::sorted,
                                EngineKind::treedy, EngineKind::ideal}) {
          VisitLog la, lb;
          QueryInstrumentation ia, ib;
          ia.visits = &la;
          ib.visits = &lb;
          CountResult ra = base.run(kind, q, d, &ia);
          CountResult rb = shifted.run(kind, q, d, &ib);
          bool logs_equal = la.events.size() == lb.events.size();
          for (std::size_t i = 0; logs_equal && i < la.events.size(); ++i)
            logs_equal = la.events[i].set == lb.events[i].set &&
                         la.events[i].relevant == lb.events[i].relevant &&
                         la.events[i].accumulated == lb.events[i].accumulated;
          ok &= expect(logs_equal, "visit log changed under +50 shift");
          if (ra.log_total == kNegInf)
            ok &= expect(rb.log_total == kNegInf, "zero total changed");
          else
            ok &= expect(std::abs(rb.log_total - (ra.log_total + 50.0)) <=
                             1e-9 * std::max(1.0, std::abs(ra.log_total) + 50.0),
                         "log result did not shift by 50");
        }
      }
    }
  }
  return ok;
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");

  report("table1-golden", table1_golden());

  auto suite = build_oracle_suite();
  report("oracle-equivalence", oracle_equivalence(suite));
  report("invariant-instrumentation", invariant_instrumentation());
  report("sampling-tv", sampling_tv());
  report("ideal-minimality", ideal_minimality(suite));
  report("figure2-proxy", figure2_proxy());
  report("generator-checks", generator_checks());
  report("ordering-composition", ordering_composition());
  report("scale-invariance", scale_invariance());

  if (g_failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", g_failures);
  return g_failures;
}
