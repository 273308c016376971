// Command-line front end for fusion-graph rank aggregation.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fusegraph/commands.hpp"
#include "fusegraph/error.hpp"
#include "fusegraph/parallel.hpp"

int main(int argc, char** argv) {
  using namespace fusegraph::cli;

  CLI::App app{"fusegraph: rank fusion with fusion graphs, baselines and evaluation"};
  app.require_subcommand(1);

  const std::size_t default_threads = fusegraph::default_thread_count();

  ExtractArgs extract;
  extract.threads = default_threads;
  auto* ex = app.add_subcommand("extract", "Build the fusion-graph index of a collection (offline stage)");
  ex->add_option("-c,--config", extract.config, "Pipeline configuration (JSON)")->required()->check(CLI::ExistingFile);
  ex->add_option("-i,--index", extract.index_dir, "Index directory (overrides output.index)");
  ex->add_option("--items", extract.items, "Restrict indexing to the item ids listed in this file");
  ex->add_option("-j,--threads", extract.threads, "Worker threads (default: FUSEGRAPH_THREADS or all cores)");

  SearchArgs search;
  search.threads = default_threads;
  auto* se = app.add_subcommand("search", "Fuse query ranks against a fusion-graph index (online stage)");
  se->add_option("-c,--config", search.config, "Pipeline configuration (JSON)")->required()->check(CLI::ExistingFile);
  se->add_option("-i,--index", search.index_dir, "Index directory (overrides output.index)");
  se->add_option("-o,--out", search.out, "Output run file, '-' for stdout (overrides output.run)");
  se->add_option("-q,--query", search.queries, "Query id (repeatable; default: every query in the runs)");
  se->add_flag("--exclude-self", search.exclude_self, "Drop the query itself from its fused rank");
  se->add_flag("--no-scope", search.no_scope, "Compare against every indexed graph instead of the candidate scope");
  se->add_option("-j,--threads", search.threads, "Worker threads (default: FUSEGRAPH_THREADS or all cores)");

  BaselineArgs baseline;
  auto* ba = app.add_subcommand("baseline", "Fuse runs with a classical aggregation method");
  ba->add_option("method", baseline.method,
                 "Borda, RRF, CombSUM, CombMIN, CombMAX, CombMED, CombANZ, CombMNZ, MRA, Condorcet, RLSim, Kemeny")
      ->required();
  ba->add_option("-c,--config", baseline.config, "Pipeline configuration (JSON)")->required()->check(CLI::ExistingFile);
  ba->add_option("-o,--out", baseline.out, "Output run file, '-' for stdout (overrides output.run)");
  ba->add_option("--rrf-k", baseline.rrf_k, "RRF constant")->capture_default_str();
  ba->add_option("--kemeny-cap", baseline.kemeny_cap, "Largest item union for exact Kemeny")->capture_default_str();

  EvalArgs eval;
  auto* ev = app.add_subcommand("eval", "NDCG@k and N-S score of a run");
  ev->add_option("-r,--run", eval.run, "Run file")->required()->check(CLI::ExistingFile);
  auto* qrels_opt = ev->add_option("--qrels", eval.qrels, "Qrels file (qid 0 docid grade)");
  auto* classes_opt = ev->add_option("--classes", eval.classes, "Class-label file (docid label)");
  qrels_opt->excludes(classes_opt);
  ev->add_option("-k", eval.k, "NDCG cutoff")->capture_default_str();
  ev->add_flag("--per-query", eval.per_query, "Print one row per query before the mean");

  CorrelateArgs correlate;
  auto* co = app.add_subcommand("correlate", "Mean per-query correlation matrix between rankers");
  co->add_option("-r,--run", correlate.runs, "NAME=PATH[:distance] (repeat, at least two)")->required();
  co->add_option("-m,--measure", correlate.measure, "jaccard, kendall or spearman")->capture_default_str();
  co->add_option("-L,--depth", correlate.depth, "Rank cut-off")->capture_default_str();

  SelectArgs select;
  auto* sl = app.add_subcommand("select", "Choose rankers to fuse");
  sl->add_option("-e,--effectiveness", select.effectiveness, "Ranker effectiveness file (name value)")
      ->required()
      ->check(CLI::ExistingFile);
  sl->add_option("-x,--correlations", select.correlations, "Correlation matrix file")->required()->check(CLI::ExistingFile);
  sl->add_option("-s,--strategy", select.strategy, "all, top-two, best-pair or top-three")->capture_default_str();

  WinnersArgs winners;
  auto* wi = app.add_subcommand("winners", "Winning numbers from an effectiveness table");
  wi->add_option("-t,--table", winners.table, "Table file (dataset config method value)")
      ->required()
      ->check(CLI::ExistingFile);

  TTestArgs ttest;
  auto* tt = app.add_subcommand("ttest", "Paired two-sided t-test on per-query metric files");
  tt->add_option("-a", ttest.a, "Per-query metrics of system A (qid value)")->required()->check(CLI::ExistingFile);
  tt->add_option("-b", ttest.b, "Per-query metrics of system B (qid value)")->required()->check(CLI::ExistingFile);
  tt->add_option("--alpha", ttest.alpha, "Significance level")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ex) run_extract(extract, std::cerr);
    if (*se) run_search(search, std::cout);
    if (*ba) run_baseline(baseline, std::cout);
    if (*ev) run_eval(eval, std::cout);
    if (*co) run_correlate(correlate, std::cout);
    if (*sl) run_select(select, std::cout);
    if (*wi) run_winners(winners, std::cout);
    if (*tt) run_ttest(ttest, std::cout);
  } catch (const fusegraph::Error& e) {
    std::cerr << "error\t" << fusegraph::error_code_name(e.code()) << '\t' << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error\tInternal\t" << e.what() << '\n';
    return 1;
  }
  return 0;
}
