// Acceptance checks. Prints one PASS/FAIL/SKIP line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "fusegraph/baselines.hpp"
#include "fusegraph/commands.hpp"
#include "fusegraph/error.hpp"
#include "fusegraph/evaluation.hpp"
#include "fusegraph/fusion_graph.hpp"
#include "fusegraph/graph_similarity.hpp"
#include "fusegraph/io.hpp"
#include "fusegraph/parallel.hpp"
#include "fusegraph/rank_norm.hpp"
#include "fusegraph/retrieval.hpp"
#include "support/synthetic.hpp"

#ifndef FUSEGRAPH_FIXTURES
#define FUSEGRAPH_FIXTURES "tests/fixtures"
#endif

namespace fs = std::filesystem;
using namespace fusegraph;
using fusegraph::testing::labels;
using fusegraph::testing::make_synthetic_collection;
using fusegraph::testing::random_graph;
using fusegraph::testing::SyntheticSpec;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status = Status::Pass;
  std::string detail;
};

// Collects the first few failure messages of a check.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) messages_ << (failures_ > 1 ? "; " : "") << what;
  }
  bool ok() const { return failures_ == 0; }
  Outcome outcome(const std::string& summary) const {
    if (ok()) return {Status::Pass, summary};
    return {Status::Fail, std::to_string(failures_) + " failure(s): " + messages_.str()};
  }

 private:
  std::size_t failures_ = 0;
  std::ostringstream messages_;
};

std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

ScoredRank ranked(const ItemId& query, const std::string& ranker, const std::vector<ItemId>& items,
                  std::size_t depth) {
  std::vector<ScoredEntry> entries;
  for (std::size_t k = 0; k < items.size(); ++k) {
    entries.push_back({items[k], static_cast<double>(items.size() - k)});
  }
  return ScoredRank(query, ranker, std::move(entries), depth);
}

std::vector<ItemId> ids(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

// ---------------------------------------------------------------------------

Outcome mcs_oracle() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240501);
  const auto alphabet = labels("v", 9);
  Checker check;
  for (int k = 0; k < 500; ++k) {
    const auto a = random_graph(rng, alphabet, 6, 0.4, true);
    const auto b = random_graph(rng, alphabet, 6, 0.4, true);
    const double fast = graph_size(mcs(a, b)).value;
    const double brute = graph_size(brute_force_mcs(a, b)).value;
    check.expect(fast == brute, "pair " + std::to_string(k) + ": " + fmt(fast, 17) + " vs " + fmt(brute, 17));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.expect(seconds < 10.0, "runtime " + fmt(seconds) + " s");
  return check.outcome("500 pairs equal, " + fmt(seconds, 3) + " s");
}

Outcome distance_axioms() {
  std::mt19937_64 rng(77);
  const auto left = labels("a", 8);
  const auto right = labels("b", 8);
  std::vector<ItemId> mixed = left;
  mixed.insert(mixed.end(), right.begin(), right.begin() + 4);
  Checker check;
  for (int k = 0; k < 1000; ++k) {
    const auto a = random_graph(rng, mixed, 7, 0.35, true);
    const auto b = random_graph(rng, mixed, 7, 0.35, true);
    const std::string tag = "pair " + std::to_string(k);
    for (const auto cmp : {Comparator::MCS, Comparator::WGU}) {
      const double d = graph_distance(cmp, a, b);
      check.expect(d >= 0.0 && d <= 1.0, tag + " out of range");
      check.expect(d == graph_distance(cmp, b, a), tag + " asymmetric");
      check.expect(std::abs(graph_distance(cmp, a, a)) <= 1e-12, tag + " self distance");
    }
    check.expect(dist_wgu(a, b) >= dist_mcs(a, b), tag + " WGU < MCS");

    const auto c = random_graph(rng, left, 6, 0.35, true);
    const auto d = random_graph(rng, right, 6, 0.35, true);
    check.expect(dist_mcs(c, d) == 1.0 && dist_wgu(c, d) == 1.0, tag + " disjoint pair not at 1");
  }
  return check.outcome("1000 pairs");
}

Outcome worked_example() {
  const fs::path dir = fs::path(FUSEGRAPH_FIXTURES) / "worked";
  const auto params = NormalizationParams::for_depth(2);
  CollectionRankIndex index;
  for (const std::string r : {"r1", "r2"}) {
    for (auto& [q, rank] : parse_run_file(dir / (r + ".txt"), r, 2)) index.insert(rank);
  }
  const std::vector<std::string> rankers{"r1", "r2"};
  const auto rs = assemble_rank_set("q", index, rankers);
  const auto g = build_fusion_graph(rs, index, params);

  Checker check;
  const FusionGraph::VertexMap vertices{{"A", 1.0}, {"B", 0.05}, {"C", 0.05}};
  const FusionGraph::EdgeMap edges{{{"A", "B"}, 1.0}, {{"A", "C"}, 1.0}};
  check.expect(g.vertices() == vertices, "vertex weights differ");
  check.expect(g.edges() == edges, "edge weights differ");

  FusionGraph a("a");
  a.set_vertex("A", 1.0);
  a.set_vertex("B", 0.5);
  a.set_edge("A", "B", 1.0);
  FusionGraph b("b");
  b.set_vertex("A", 0.8);
  b.set_vertex("C", 0.3);
  const double dm = dist_mcs(a, b);
  const double dw = dist_wgu(a, b);
  check.expect(std::abs(dm - 0.68) <= 1e-9, "dist_mcs " + fmt(dm, 17));
  check.expect(std::abs(dw - (1.0 - 0.8 / 2.8)) <= 1e-9 && std::abs(dw - 0.714286) <= 5e-7, "dist_wgu " + fmt(dw, 17));
  return check.outcome("graph exact; dist_mcs " + fmt(dm, 9) + ", dist_wgu " + fmt(dw, 9));
}

// Positions read straight from the raw entries, sentinel when absent.
std::size_t raw_position(const CollectionRankIndex& index, const std::string& ranker, const ItemId& of,
                         const ItemId& item, const NormalizationParams& p) {
  const auto* rank = index.find(ranker, of);
  if (rank == nullptr) return p.missing_position;
  const auto entries = rank->entries();
  for (std::size_t k = 0; k < entries.size() && k < p.depth; ++k) {
    if (entries[k].item == item) return k + 1;
  }
  return p.missing_position;
}

Outcome normalization_contract() {
  std::mt19937_64 rng(4242);
  Checker check;
  std::size_t symmetric_pairs = 0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t depth = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    const auto pool = labels("x", depth + 8);
    const auto params = NormalizationParams::for_depth(depth);

    CollectionRankIndex index(pool.size());
    std::vector<std::string> rankers;
    for (std::size_t r = 0; r < m; ++r) {
      rankers.push_back("r" + std::to_string(r));
      for (const auto& q : pool) {
        if (q != pool.front() && std::bernoulli_distribution(0.1)(rng)) continue;  // missing rank
        auto shuffled = pool;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const std::size_t len = std::bernoulli_distribution(0.6)(rng)
                                    ? depth
                                    : std::uniform_int_distribution<std::size_t>(1, depth)(rng);
        shuffled.resize(len);
        index.insert(ranked(q, rankers.back(), shuffled, depth));
      }
    }
    const auto rs = assemble_rank_set(pool.front(), index, rankers);
    const auto normalized = normalize_rank_set(rs, index, params);
    const std::string tag = "set " + std::to_string(k);

    for (std::size_t r = 0; r < m; ++r) {
      const auto& in = rs.ranks()[r];
      const auto& out = normalized.ranks()[r];

      std::vector<std::pair<std::size_t, ItemId>> keyed;
      for (const auto& e : in.entries()) {
        const std::size_t a = raw_position(index, in.ranker(), in.query(), e.item, params);
        const std::size_t b = raw_position(index, in.ranker(), e.item, in.query(), params);
        keyed.emplace_back(a + b + std::max(a, b), e.item);
      }
      std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      if (keyed.size() > depth) keyed.resize(depth);
      std::vector<ItemId> expected;
      for (const auto& [_, item] : keyed) expected.push_back(item);
      std::vector<ItemId> got;
      for (const auto& e : out.entries()) got.push_back(e.item);
      check.expect(got == expected, tag + " order differs from stable sort");

      const auto entries = out.entries();
      check.expect(!entries.empty() && entries.front().score == 1.0, tag + " top score != 1");
      if (entries.size() == depth && depth > 1) check.expect(entries.back().score == 0.1, tag + " last score != 0.1");
      for (std::size_t p = 1; p < entries.size(); ++p) {
        check.expect(entries[p].score < entries[p - 1].score, tag + " scores not decreasing");
      }

      for (const auto& e : in.entries()) {
        const auto* back = index.find(in.ranker(), e.item);
        if (back == nullptr || !back->position_of(in.query())) continue;
        ++symmetric_pairs;
        check.expect(delta(in.query(), e.item, index, in.ranker(), params) ==
                         delta(e.item, in.query(), index, in.ranker(), params),
                     tag + " delta asymmetric");
      }
    }
  }
  return check.outcome("200 rank sets, " + std::to_string(symmetric_pairs) + " symmetric pairs");
}

Outcome self_retrieval() {
  const auto c = make_synthetic_collection(SyntheticSpec{});
  const auto params = NormalizationParams::for_depth(c.depth);
  const auto fg = index_collection(c.index, c.rankers, params, Comparator::WGU);
  Checker check;
  for (const auto& q : c.index.queries(c.rankers)) {
    const auto fused = fuse_query(assemble_rank_set(q, c.index, c.rankers), fg, c.index);
    check.expect(!fused.entries.empty() && fused.entries.front().item == q && fused.entries.front().value == 0.0,
                 q.str() + " not first at distance 0");
  }
  return check.outcome(std::to_string(fg.size()) + " queries");
}

double mean_ndcg(const std::vector<FusedRank>& runs, const Qrels& qrels) {
  double total = 0.0;
  for (const auto& r : runs) total += ndcg_at_k(r, qrels, 10);
  return total / static_cast<double>(runs.size());
}

Outcome fusion_benefit() {
  Checker check;
  std::ostringstream summary;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SyntheticSpec spec;
    spec.seed = seed;
    const auto c = make_synthetic_collection(spec);
    const auto qrels = Qrels::from_classes(c.labels);
    const auto params = NormalizationParams::for_depth(c.depth);
    const auto fg = index_collection(c.index, c.rankers, params, Comparator::WGU);
    const auto queries = c.index.queries(c.rankers);

    std::vector<FusedRank> fused;
    std::map<std::string, std::vector<FusedRank>> baseline;
    for (const auto& q : queries) {
      const auto rs = assemble_rank_set(q, c.index, c.rankers);
      fused.push_back(fuse_query(rs, fg, c.index));
      for (const auto m : {AggregationMethod::Borda, AggregationMethod::RRF, AggregationMethod::CombSUM}) {
        baseline[std::string(method_name(m))].push_back(aggregate(m, rs));
      }
    }
    const double fg_ndcg = mean_ndcg(fused, qrels);

    double best_single = 0.0;
    for (const auto& r : c.rankers) {
      double total = 0.0;
      for (const auto& q : queries) total += ndcg_at_k(*c.index.find(r, q), qrels, 10);
      const double mean = total / static_cast<double>(queries.size());
      best_single = std::max(best_single, mean);
      check.expect(fg_ndcg >= mean, "seed " + std::to_string(seed) + ": FG " + fmt(fg_ndcg) + " < " + r + " " +
                                        fmt(mean));
    }
    double best_baseline = 0.0;
    for (const auto& [name, runs] : baseline) {
      const double mean = mean_ndcg(runs, qrels);
      best_baseline = std::max(best_baseline, mean);
      check.expect(fg_ndcg >= mean - 0.005,
                   "seed " + std::to_string(seed) + ": FG " + fmt(fg_ndcg) + " < " + name + " " + fmt(mean));
    }
    summary << (seed > 1 ? "; " : "") << "seed " << seed << " FG " << fmt(fg_ndcg, 4) << " ranker "
            << fmt(best_single, 4) << " baseline " << fmt(best_baseline, 4);
  }
  return check.outcome(summary.str());
}

// Kendall discordance against one full ranking, computed pair by pair.
std::size_t discordance(const std::vector<ItemId>& order, const std::vector<ItemId>& rank) {
  std::size_t d = 0;
  for (std::size_t x = 0; x < order.size(); ++x) {
    for (std::size_t y = x + 1; y < order.size(); ++y) {
      const auto px = std::find(rank.begin(), rank.end(), order[x]);
      const auto py = std::find(rank.begin(), rank.end(), order[y]);
      if (py < px) ++d;
    }
  }
  return d;
}

Outcome baseline_sanity() {
  Checker check;
  const std::vector<AggregationMethod> methods{
      AggregationMethod::Borda,   AggregationMethod::RRF,     AggregationMethod::CombSUM,   AggregationMethod::CombMIN,
      AggregationMethod::CombMAX, AggregationMethod::CombMED, AggregationMethod::CombANZ,   AggregationMethod::CombMNZ,
      AggregationMethod::MRA,     AggregationMethod::Condorcet, AggregationMethod::RLSim, AggregationMethod::KemenyExact};

  const auto single = ids({"q5", "b1", "z0", "a9", "m3", "c2"});
  const RankSet one("q", {ranked("q", "r", single, 6)});
  for (const auto m : methods) {
    check.expect(aggregate(m, one).items() == single, std::string(method_name(m)) + " reorders a single rank");
  }

  const auto rs = [](std::vector<std::vector<ItemId>> lists) {
    std::vector<ScoredRank> ranks;
    std::size_t depth = 0;
    for (const auto& l : lists) depth = std::max(depth, l.size());
    for (std::size_t k = 0; k < lists.size(); ++k) ranks.push_back(ranked("q", "r" + std::to_string(k), lists[k], depth));
    return RankSet("q", std::move(ranks));
  };
  const auto abc = ids({"A", "B", "C"});

  const auto b = borda(rs({abc, ids({"B", "A", "C"})}));
  check.expect(b.items() == abc && b.entries[0].value == 5.0 && b.entries[1].value == 5.0 && b.entries[2].value == 2.0,
               "Borda fixture");
  check.expect(mra(rs({abc, ids({"B", "A", "C"}), ids({"A", "C", "B"})})).items() == abc, "MRA fixture");
  check.expect(condorcet(rs({abc, abc, abc})).items() == abc, "Condorcet unanimous fixture");
  check.expect(condorcet(rs({abc, ids({"B", "C", "A"}), ids({"C", "A", "B"})})).items() == abc,
               "Condorcet cycle fixture");
  check.expect(kemeny_exact(rs({abc, abc})).items() == abc, "Kemeny identical fixture");
  check.expect(kemeny_exact(rs({ids({"A", "B"}), ids({"B", "A"})})).items() == ids({"A", "B"}), "Kemeny 2-item fixture");

  auto perm = ids({"A", "B", "C", "D"});
  std::vector<std::vector<ItemId>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::size_t instances = 0;
  for (const auto& x : perms) {
    for (const auto& y : perms) {
      ++instances;
      const auto result = kemeny_exact(rs({x, y})).items();
      std::size_t best = SIZE_MAX;
      for (const auto& candidate : perms) best = std::min(best, discordance(candidate, x) + discordance(candidate, y));
      check.expect(discordance(result, x) + discordance(result, y) == best, "Kemeny not minimal");
    }
  }
  return check.outcome("12 methods, fixtures, " + std::to_string(instances) + " Kemeny instances");
}

Outcome metric_fixtures() {
  Checker check;
  const auto qrels = Qrels::from_grades({{"q", {{"d1", 1}, {"d3", 1}}}});
  const auto ranking = ids({"d1", "d2", "d3"});
  const double ndcg = ndcg_at_k(ranking, "q", qrels, 3);
  const double ndcg_oracle = 1.5 / (1.0 + 1.0 / std::log2(3.0));
  check.expect(std::abs(ndcg - 0.91972) <= 1e-5 && std::abs(ndcg - ndcg_oracle) <= 1e-12, "NDCG " + fmt(ndcg, 10));

  const auto abc = ids({"A", "B", "C"});
  const auto cba = ids({"C", "B", "A"});
  check.expect(kendall_corr(abc, cba) == 0.0, "Kendall reversed");
  check.expect(std::abs(spearman_corr(abc, cba) - 2.0 / 3.0) <= 1e-12, "Spearman reversed");

  const auto left = labels("d", 10);
  std::vector<ItemId> right(left.begin() + 5, left.end());
  for (const auto& x : labels("e", 5)) right.push_back(x);
  check.expect(jaccard_corr(left, right) == 1.0 / 3.0, "Jaccard 5 of 15");

  check.expect(std::abs(selection_measure(0.9, 0.8, 0.5) - 1.14667) <= 1e-5, "selection measure");

  const std::map<std::string, double> eff{{"LAS", 0.8505}, {"CCOM", 0.7262}, {"LBP", 0.6528}};
  CorrelationMatrix cor;
  cor.set("LAS", "CCOM", 0.38);
  cor.set("LAS", "LBP", 0.30);
  cor.set("CCOM", "LBP", 0.25);
  const auto as_set = [](const std::vector<std::string>& v) { return std::set<std::string>(v.begin(), v.end()); };
  check.expect(as_set(select_rankers(eff, cor, SelectionStrategy::TopTwoEffective)) ==
                   std::set<std::string>{"LAS", "CCOM"},
               "top-two selection");
  check.expect(as_set(select_rankers(eff, cor, SelectionStrategy::BestPair)) ==
                   std::set<std::string>{"LAS", "LBP"},
               "best-pair selection");
  return check.outcome("NDCG " + fmt(ndcg, 7));
}

Outcome complexity_guard() {
  std::mt19937_64 rng(99);
  Checker check;
  std::size_t builds = 0;
  double worst_ratio = 0.0;
  for (int k = 0; k < 120; ++k) {
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const std::size_t depth = std::uniform_int_distribution<std::size_t>(1, 50)(rng);
    const auto pool = labels("y", depth + std::uniform_int_distribution<std::size_t>(0, depth)(rng));
    const auto params = NormalizationParams::for_depth(depth);
    CollectionRankIndex index(pool.size());
    std::vector<std::string> rankers;
    for (std::size_t r = 0; r < m; ++r) {
      rankers.push_back("r" + std::to_string(r));
      for (const auto& q : pool) {
        auto shuffled = pool;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        shuffled.resize(std::min(depth, shuffled.size()));
        index.insert(ranked(q, rankers.back(), shuffled, depth));
      }
    }
    const auto normalized = normalize_index(index, rankers, params);
    const auto rs = normalize_rank_set(assemble_rank_set(pool.front(), index, rankers), index, params);
    BuildStats stats;
    const auto g = build_fusion_graph(rs, normalized, params, BuildOptions{MissingRankPolicy::Lenient, &stats});
    const double bound = 4.0 * static_cast<double>(m * m * depth * depth);
    worst_ratio = std::max(worst_ratio, static_cast<double>(stats.entries_visited) / bound);
    check.expect(static_cast<double>(stats.entries_visited) <= bound, "m=" + std::to_string(m) + " L=" +
                                                                          std::to_string(depth) + " visits " +
                                                                          std::to_string(stats.entries_visited));
    ++builds;
  }

  const auto alphabet = labels("v", 12);
  for (int k = 0; k < 500; ++k) {
    const auto a = random_graph(rng, alphabet, 10, 0.3, true);
    const auto b = random_graph(rng, alphabet, 10, 0.3, true);
    McsStats stats;
    mcs(a, b, &stats);
    const std::size_t bound =
        a.vertices().size() * b.vertices().size() + a.edges().size() + b.edges().size();
    check.expect(stats.comparisons <= bound, "mcs comparisons " + std::to_string(stats.comparisons));
  }
  return check.outcome(std::to_string(builds) + " builds, max visits/(4m^2L^2) " + fmt(worst_ratio, 3) +
                       "; 500 mcs pairs");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const fs::path work = fs::temp_directory_path() / ("fusegraph_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(work);
  const auto config = fusegraph::testing::write_synthetic_fixture(make_synthetic_collection(SyntheticSpec{}), work);

  std::vector<std::string> runs;
  std::vector<std::string> stores;
  std::ostringstream log;
  int n = 0;
  for (const std::size_t threads : {1, 1, 8, 8}) {
    const fs::path index = work / ("index" + std::to_string(n));
    const fs::path out = work / ("run" + std::to_string(n) + ".txt");
    ++n;
    cli::run_extract({config, index, std::nullopt, threads}, log);
    cli::SearchArgs search;
    search.config = config;
    search.index_dir = index;
    search.out = out;
    search.threads = threads;
    cli::run_search(search, log);
    runs.push_back(slurp(out));
    stores.push_back(slurp(index / "graphs.jsonl"));
  }
  fs::remove_all(work);

  Checker check;
  check.expect(!runs.front().empty(), "empty run output");
  for (std::size_t k = 1; k < runs.size(); ++k) {
    check.expect(runs[k] == runs.front(), "run " + std::to_string(k) + " differs");
    check.expect(stores[k] == stores.front(), "graph store " + std::to_string(k) + " differs");
  }
  return check.outcome("4 runs (1,1,8,8 workers), " + std::to_string(runs.front().size()) + " bytes each");
}

// Runs the pipeline on externally supplied UKBench runs, if any.
Outcome dataset_hook() {
  const char* config = std::getenv("FUSEGRAPH_UKBENCH_CONFIG");
  const char* classes = std::getenv("FUSEGRAPH_UKBENCH_CLASSES");
  if (config == nullptr || classes == nullptr || !fs::exists(config) || !fs::exists(classes)) {
    return {Status::Skip, "set FUSEGRAPH_UKBENCH_CONFIG and FUSEGRAPH_UKBENCH_CLASSES to run"};
  }
  const auto cfg = load_config(config);
  const auto index = load_collection(cfg, default_thread_count());
  const auto names = cfg.ranker_names();
  const auto fg = index_collection(index, names, NormalizationParams::for_depth(cfg.depth), cfg.comparator,
                                   IndexOptions{cfg.missing_ranks, default_thread_count(), std::nullopt});
  std::ifstream in(classes);
  const auto qrels = parse_class_labels(in);
  const auto queries = index.queries(names);
  double total = 0.0;
  for (const auto& q : queries) total += ns_score(fuse_query(assemble_rank_set(q, index, names), fg, index), qrels);
  const double ns = total / static_cast<double>(queries.size());
  Checker check;
  check.expect(std::abs(ns - 3.90) <= 0.05, "N-S " + fmt(ns));
  return check.outcome("N-S " + fmt(ns, 4));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"mcs oracle equivalence", mcs_oracle},
      {"distance axioms", distance_axioms},
      {"worked-example fixture", worked_example},
      {"normalization contract", normalization_contract},
      {"self-retrieval", self_retrieval},
      {"fusion benefit", fusion_benefit},
      {"baseline sanity", baseline_sanity},
      {"metric fixtures", metric_fixtures},
      {"complexity guard", complexity_guard},
      {"determinism", determinism},
      {"dataset hook (UKBench)", dataset_hook},
  };

  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const char* label = o.status == Status::Pass ? "PASS" : o.status == Status::Skip ? "SKIP" : "FAIL";
    if (o.status == Status::Fail) ++failed;
    std::cout << label << "  " << name << "  (" << o.detail << ")\n";
  }
  std::cout << (failed == 0 ? "all criteria met" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
