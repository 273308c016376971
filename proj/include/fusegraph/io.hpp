#pragma once

/** \file io.hpp
 *  \brief Text formats: TREC run files, qrels, class labels, pipeline
 *  configuration and the small delimited tables the CLI reads and writes.
 *
 * Run file line:   qid Q0 docid rank score tag      (whitespace separated)
 * Qrels line:      qid 0 docid grade
 * Class labels:    docid label
 * Metric files:    key value                        (ttest, effectiveness)
 * Table file:      dataset config method value      (winners)
 * Matrix file:     header "ranker<TAB>n1<TAB>n2...", then one row per name
 * Blank lines and lines starting with '#' are ignored by every reader.
 */

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fusegraph/baselines.hpp"
#include "fusegraph/core_model.hpp"
#include "fusegraph/evaluation.hpp"
#include "fusegraph/graph_similarity.hpp"
#include "fusegraph/fusion_graph.hpp"

namespace fusegraph {

enum class Polarity { Similarity, Distance };
Polarity parse_polarity(std::string_view name);

/// Parses a run file into one rank per qid, ordered by the rank column and
/// truncated to `depth`. Distance scores d become similarities 1 / (1 + d).
/// Throws ParseError (with line number), DuplicateDoc, or RankGap.
RunRanks parse_run(std::istream& in, const std::string& ranker, std::size_t depth,
                   Polarity polarity = Polarity::Similarity);
RunRanks parse_run_file(const std::filesystem::path& path, const std::string& ranker, std::size_t depth,
                        Polarity polarity = Polarity::Similarity);

/// Writes ranks with their stored scores, in qid order.
void write_run(std::ostream& out, const RunRanks& ranks, const std::string& tag);

/// Writes aggregated ranks. With `distances` set, the score column holds
/// 1 - distance so that descending score order matches the fused order.
void write_fused_run(std::ostream& out, std::span<const FusedRank> ranks, const std::string& tag, bool distances);

/// Reads a run back as plain item lists (for evaluation), keyed by qid and
/// ordered by the rank column. No depth limit.
std::map<ItemId, std::vector<ItemId>> read_run_items(std::istream& in);

Qrels parse_qrels(std::istream& in);
Qrels parse_class_labels(std::istream& in);

std::map<std::string, double> parse_metric_file(std::istream& in);
EffectivenessTable parse_effectiveness_table(std::istream& in);
CorrelationMatrix parse_correlation_matrix(std::istream& in);
void write_correlation_matrix(std::ostream& out, const std::vector<std::string>& names, const CorrelationMatrix& m);

struct RankerSpec {
  std::string name;
  std::filesystem::path run;
  Polarity polarity = Polarity::Similarity;
};

struct PipelineConfig {
  std::vector<RankerSpec> rankers;
  std::size_t depth = 10;
  Comparator comparator = Comparator::WGU;
  SelectionStrategy selection = SelectionStrategy::All;
  MissingRankPolicy missing_ranks = MissingRankPolicy::Lenient;
  bool exclude_self = false;
  std::filesystem::path index_dir;
  std::filesystem::path output_run;

  std::vector<std::string> ranker_names() const;
};

/// Loads a JSON configuration; relative paths resolve against the file's
/// directory. Throws ParseError or InvalidArgument.
PipelineConfig load_config(const std::filesystem::path& path);

/// Parses every configured run file (in parallel) into one index.
CollectionRankIndex load_collection(const PipelineConfig& config, std::size_t threads = 1);

}  // namespace fusegraph
