#include "fusegraph/commands.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "fusegraph/baselines.hpp"
#include "fusegraph/error.hpp"
#include "fusegraph/evaluation.hpp"
#include "fusegraph/io.hpp"
#include "fusegraph/parallel.hpp"
#include "fusegraph/retrieval.hpp"

namespace fusegraph::cli {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return in;
}

// Writes `text` to `path`, or to `fallback` when the path is empty or "-".
void emit(const std::filesystem::path& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

std::string fixed6(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << v;
  return s.str();
}

// Rank set of `query` from whichever configured rankers have a rank for it;
// strict mode demands all of them.
std::optional<RankSet> rank_set_for(const ItemId& query, const CollectionRankIndex& index,
                                    const std::vector<std::string>& rankers, MissingRankPolicy policy) {
  if (policy == MissingRankPolicy::Strict) return assemble_rank_set(query, index, rankers);
  std::vector<ScoredRank> ranks;
  for (const auto& name : rankers) {
    if (const auto* r = index.find(name, query); r != nullptr && !r->empty()) ranks.push_back(*r);
  }
  if (ranks.empty()) return std::nullopt;
  return RankSet(query, std::move(ranks));
}

}  // namespace

void run_extract(const ExtractArgs& args, std::ostream& log) {
  const auto cfg = load_config(args.config);
  const auto dir = args.index_dir.empty() ? cfg.index_dir : args.index_dir;
  if (dir.empty()) throw Error(ErrorCode::InvalidArgument, "no index directory given (--index or output.index)");

  const auto index = load_collection(cfg, args.threads);
  IndexOptions options{cfg.missing_ranks, args.threads, std::nullopt};
  if (args.items) {
    auto in = open_in(*args.items);
    std::vector<ItemId> items;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] != '#') items.emplace_back(line);
    }
    options.items = std::move(items);
  }

  const auto names = cfg.ranker_names();
  const auto fg = index_collection(index, names, NormalizationParams::for_depth(cfg.depth), cfg.comparator, options);
  save_index(fg, dir);
  log << "indexed " << fg.size() << " fusion graphs into " << dir.string() << '\n';
}

void run_search(const SearchArgs& args, std::ostream& out) {
  const auto cfg = load_config(args.config);
  const auto dir = args.index_dir.empty() ? cfg.index_dir : args.index_dir;
  if (dir.empty()) throw Error(ErrorCode::InvalidArgument, "no index directory given (--index or output.index)");

  const auto fg = load_index(dir);
  if (fg.rankers() != cfg.ranker_names() || fg.params().depth != cfg.depth) {
    throw Error(ErrorCode::RankerMismatch, "configuration rankers or depth differ from the index manifest");
  }
  const auto index = load_collection(cfg, args.threads);

  std::vector<ItemId> queries;
  if (args.queries.empty()) {
    queries = index.queries(fg.rankers());
  } else {
    for (const auto& q : args.queries) queries.emplace_back(q);
  }

  SearchOptions options{args.exclude_self || cfg.exclude_self, !args.no_scope, 1};
  std::vector<std::optional<FusedRank>> results(queries.size());
  parallel_for(queries.size(), args.threads, [&](std::size_t k) {
    auto rs = rank_set_for(queries[k], index, fg.rankers(), fg.missing_ranks());
    if (!rs) throw Error(ErrorCode::MissingRank, "query " + queries[k].str() + " has no rank under any ranker");
    results[k] = fuse_query(*rs, fg, index, options);
  });

  std::vector<FusedRank> fused;
  fused.reserve(results.size());
  for (auto& r : results) fused.push_back(std::move(*r));
  std::ostringstream text;
  write_fused_run(text, fused, "FG", true);
  emit(args.out.empty() ? cfg.output_run : args.out, text.str(), out);
}

void run_baseline(const BaselineArgs& args, std::ostream& out) {
  const auto method = parse_method(args.method);
  const auto cfg = load_config(args.config);
  const auto index = load_collection(cfg);
  const auto names = cfg.ranker_names();
  const AggregationParams params{args.rrf_k, args.kemeny_cap};

  std::vector<FusedRank> fused;
  for (const auto& q : index.queries(names)) {
    auto rs = rank_set_for(q, index, names, cfg.missing_ranks);
    if (rs) fused.push_back(aggregate(method, *rs, params));
  }
  std::ostringstream text;
  write_fused_run(text, fused, std::string(method_name(method)), false);
  emit(args.out.empty() ? cfg.output_run : args.out, text.str(), out);
}

void run_eval(const EvalArgs& args, std::ostream& out) {
  if (args.qrels.has_value() == args.classes.has_value()) {
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --qrels or --classes");
  }
  auto run_in = open_in(args.run);
  const auto run = read_run_items(run_in);
  auto judg_in = open_in(args.qrels ? *args.qrels : *args.classes);
  const Qrels qrels = args.qrels ? parse_qrels(judg_in) : parse_class_labels(judg_in);
  if (run.empty()) throw Error(ErrorCode::InvalidArgument, "run file has no rows");

  const std::string ndcg_col = "ndcg@" + std::to_string(args.k);
  out << "query\t" << ndcg_col << "\tns\n";
  double ndcg_total = 0.0;
  double ns_total = 0.0;
  for (const auto& [q, items] : run) {
    const double n = ndcg_at_k(items, q, qrels, args.k);
    const double s = ns_score(items, q, qrels);
    ndcg_total += n;
    ns_total += s;
    if (args.per_query) out << q.str() << '\t' << fixed6(n) << '\t' << fixed6(s) << '\n';
  }
  const auto count = static_cast<double>(run.size());
  out << "mean\t" << fixed6(ndcg_total / count) << '\t' << fixed6(ns_total / count) << '\n';
}

void run_correlate(const CorrelateArgs& args, std::ostream& out) {
  const auto measure = parse_measure(args.measure);
  if (args.runs.size() < 2) throw Error(ErrorCode::NotEnoughRankers, "correlate needs at least two runs");

  std::vector<std::string> names;
  std::vector<RunRanks> runs;
  for (const auto& spec : args.runs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::InvalidArgument, "expected NAME=PATH, got " + spec);
    std::string path = spec.substr(eq + 1);
    Polarity polarity = Polarity::Similarity;
    if (const auto colon = path.rfind(':'); colon != std::string::npos) {
      polarity = parse_polarity(path.substr(colon + 1));
      path.resize(colon);
    }
    names.push_back(spec.substr(0, eq));
    runs.push_back(parse_run_file(path, names.back(), args.depth, polarity));
  }

  CorrelationMatrix m;
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i; j < names.size(); ++j) m.set(names[i], names[j], ranker_correlation(runs[i], runs[j], measure));
  }
  write_correlation_matrix(out, names, m);
}

void run_select(const SelectArgs& args, std::ostream& out) {
  auto eff_in = open_in(args.effectiveness);
  const auto eff = parse_metric_file(eff_in);
  auto cor_in = open_in(args.correlations);
  const auto cor = parse_correlation_matrix(cor_in);
  for (const auto& name : select_rankers(eff, cor, parse_strategy(args.strategy))) out << name << '\n';
}

void run_winners(const WinnersArgs& args, std::ostream& out) {
  auto in = open_in(args.table);
  const auto table = parse_effectiveness_table(in);
  out << "method\twins\n";
  for (const auto& [method, w] : winning_numbers(table)) out << method << '\t' << w << '\n';
}

void run_ttest(const TTestArgs& args, std::ostream& out) {
  auto ain = open_in(args.a);
  auto bin = open_in(args.b);
  const auto a = parse_metric_file(ain);
  const auto b = parse_metric_file(bin);
  std::vector<double> va;
  std::vector<double> vb;
  for (const auto& [q, v] : a) {
    auto it = b.find(q);
    if (it == b.end()) throw Error(ErrorCode::LengthMismatch, "query " + q + " missing from " + args.b.string());
    va.push_back(v);
    vb.push_back(it->second);
  }
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "metric files cover different queries");

  const auto r = paired_t_test(va, vb, args.alpha);
  out << "verdict\tt\tp_value\tn\tmean_diff\n";
  out << verdict_name(r.verdict) << '\t' << r.t << '\t' << r.p_value << '\t' << va.size() << '\t' << r.mean_difference
      << '\n';
}

}  // namespace fusegraph::cli
