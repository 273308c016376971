#pragma once

/** \file evaluation.hpp
 *  \brief Retrieval effectiveness, rank correlations, ranker selection,
 *  winning numbers and the paired t-test.
 */

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "fusegraph/core_model.hpp"

namespace fusegraph {

/// Relevance judgments, either explicit per (query, item) grades or derived
/// from class labels (relevant, grade 1, iff same class as the query).
class Qrels {
 public:
  static Qrels from_grades(std::map<ItemId, std::map<ItemId, int>> grades);
  static Qrels from_classes(std::map<ItemId, std::string> labels);

  bool has_query(const ItemId& query) const;
  /// Throws UnknownQuery for a query without judgments.
  int grade(const ItemId& query, const ItemId& item) const;
  /// Positive grades of `query` in descending order.
  std::vector<int> ideal_grades(const ItemId& query) const;
  std::vector<ItemId> queries() const;

 private:
  std::map<ItemId, std::map<ItemId, int>> grades_;
  std::map<ItemId, std::string> labels_;
  std::map<std::string, std::size_t> class_sizes_;
  bool by_class_ = false;
};

/// DCG@k / IDCG@k with gain = grade and discount log2(p + 1); 0 when the
/// query has no relevant item.
double ndcg_at_k(std::span<const ItemId> ranked, const ItemId& query, const Qrels& qrels, std::size_t k = 10);
double ndcg_at_k(const FusedRank& rank, const Qrels& qrels, std::size_t k = 10);
double ndcg_at_k(const ScoredRank& rank, const Qrels& qrels, std::size_t k = 10);

/// Number of relevant items among the first four (fewer if the rank is
/// shorter).
double ns_score(std::span<const ItemId> ranked, const ItemId& query, const Qrels& qrels);
double ns_score(const FusedRank& rank, const Qrels& qrels);
double ns_score(const ScoredRank& rank, const Qrels& qrels);

enum class CorrelationMeasure { Jaccard, Kendall, Spearman };
std::string_view measure_name(CorrelationMeasure m) noexcept;
CorrelationMeasure parse_measure(std::string_view name);

/// |A ∩ B| / |A ∪ B| over the item sets (1 when both are empty).
double jaccard_corr(std::span<const ItemId> a, std::span<const ItemId> b);
/// 1 - discordant / (n(n-1)/2) over the items both ranks share; 1 when they
/// share a single item, 0 when they share none.
double kendall_corr(std::span<const ItemId> a, std::span<const ItemId> b);
/// 1 - sum |pos_a - pos_b| / (n(n+1)) with positions renumbered within the
/// shared items; 0 when they share none.
double spearman_corr(std::span<const ItemId> a, std::span<const ItemId> b);

double jaccard_corr(const ScoredRank& a, const ScoredRank& b);
double kendall_corr(const ScoredRank& a, const ScoredRank& b);
double spearman_corr(const ScoredRank& a, const ScoredRank& b);
double correlation(CorrelationMeasure measure, const ScoredRank& a, const ScoredRank& b);

using RunRanks = std::map<ItemId, ScoredRank>;

/// Mean per-query correlation. Throws QuerySetMismatch unless both runs
/// cover exactly the same queries.
double ranker_correlation(const RunRanks& a, const RunRanks& b, CorrelationMeasure measure);

/// Symmetric matrix of ranker correlations keyed by ranker name.
class CorrelationMatrix {
 public:
  void set(const std::string& x, const std::string& y, double value);
  /// Diagonal entries default to 1. Throws InvalidArgument for an unknown pair.
  double at(const std::string& x, const std::string& y) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::pair<std::string, std::string>, double> values_;
};

/// (1 + ef_x * ef_y) / (1 + cor).
double selection_measure(double ef_x, double ef_y, double cor);

enum class SelectionStrategy { All, TopTwoEffective, BestPair, TopThreeEffective };
std::string_view strategy_name(SelectionStrategy s) noexcept;
SelectionStrategy parse_strategy(std::string_view name);

/// Chosen rankers ordered by descending effectiveness (ties by name).
/// Pair strategies need two rankers and TopThreeEffective three, otherwise
/// NotEnoughRankers. BestPair breaks ties on the measure by the
/// lexicographically smallest (name, name) pair.
std::vector<std::string> select_rankers(const std::map<std::string, double>& effectiveness,
                                        const CorrelationMatrix& correlations, SelectionStrategy strategy);

/// P_m(d, c) cells keyed by (dataset, configuration, method).
class EffectivenessTable {
 public:
  void set(const std::string& dataset, const std::string& configuration, const std::string& method, double value);
  std::optional<double> get(const std::string& dataset, const std::string& configuration,
                            const std::string& method) const;
  std::vector<std::string> methods() const;
  std::vector<std::pair<std::string, std::string>> cells() const;

 private:
  std::map<std::tuple<std::string, std::string, std::string>, double> values_;
};

/// W_m = number of (dataset, configuration, rival) triples where m is
/// strictly better. Throws IncompleteTable if a cell lacks a method.
std::map<std::string, std::size_t> winning_numbers(const EffectivenessTable& table);

enum class Verdict { ABetter, BBetter, Tie };
std::string_view verdict_name(Verdict v) noexcept;

struct TTestResult {
  Verdict verdict = Verdict::Tie;
  double mean_difference = 0.0;
  double t = 0.0;
  double p_value = 1.0;
  std::size_t degrees_of_freedom = 0;
  bool degenerate = false;  ///< all differences equal; decided by exact comparison
};

/// Two-sided paired t-test on a - b. p-values come from Boost.Math's
/// Student-t distribution (regularized incomplete beta, accurate to double
/// precision). Throws LengthMismatch for different or < 2 lengths.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b, double alpha = 0.01);

}  // namespace fusegraph
