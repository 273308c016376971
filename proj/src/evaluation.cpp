#include "fusegraph/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <boost/math/distributions/students_t.hpp>

#include "fusegraph/error.hpp"

namespace fusegraph {

namespace {

std::string lowered(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

// ---------------------------------------------------------------- qrels

Qrels Qrels::from_grades(std::map<ItemId, std::map<ItemId, int>> grades) {
  for (const auto& [q, row] : grades) {
    for (const auto& [d, g] : row) {
      if (g < 0) throw Error(ErrorCode::InvalidArgument, "negative grade for " + q.str() + "/" + d.str());
    }
  }
  Qrels out;
  out.grades_ = std::move(grades);
  return out;
}

Qrels Qrels::from_classes(std::map<ItemId, std::string> labels) {
  Qrels out;
  out.by_class_ = true;
  for (const auto& [_, label] : labels) ++out.class_sizes_[label];
  out.labels_ = std::move(labels);
  return out;
}

bool Qrels::has_query(const ItemId& query) const {
  return by_class_ ? labels_.contains(query) : grades_.contains(query);
}

int Qrels::grade(const ItemId& query, const ItemId& item) const {
  if (by_class_) {
    auto q = labels_.find(query);
    if (q == labels_.end()) throw Error(ErrorCode::UnknownQuery, "no class label for query " + query.str());
    auto d = labels_.find(item);
    return d != labels_.end() && d->second == q->second ? 1 : 0;
  }
  auto q = grades_.find(query);
  if (q == grades_.end()) throw Error(ErrorCode::UnknownQuery, "no judgments for query " + query.str());
  auto d = q->second.find(item);
  return d == q->second.end() ? 0 : d->second;
}

std::vector<int> Qrels::ideal_grades(const ItemId& query) const {
  if (by_class_) {
    auto q = labels_.find(query);
    if (q == labels_.end()) throw Error(ErrorCode::UnknownQuery, "no class label for query " + query.str());
    return std::vector<int>(class_sizes_.at(q->second), 1);
  }
  auto q = grades_.find(query);
  if (q == grades_.end()) throw Error(ErrorCode::UnknownQuery, "no judgments for query " + query.str());
  std::vector<int> out;
  for (const auto& [_, g] : q->second) {
    if (g > 0) out.push_back(g);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<ItemId> Qrels::queries() const {
  std::vector<ItemId> out;
  if (by_class_) {
    for (const auto& [q, _] : labels_) out.push_back(q);
  } else {
    for (const auto& [q, _] : grades_) out.push_back(q);
  }
  return out;
}

// ------------------------------------------------------------- metrics

double ndcg_at_k(std::span<const ItemId> ranked, const ItemId& query, const Qrels& qrels, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "NDCG cutoff must be at least 1");
  const auto ideal = qrels.ideal_grades(query);
  double idcg = 0.0;
  for (std::size_t p = 0; p < std::min(k, ideal.size()); ++p) idcg += ideal[p] / std::log2(p + 2.0);
  if (idcg == 0.0) return 0.0;
  double dcg = 0.0;
  for (std::size_t p = 0; p < std::min(k, ranked.size()); ++p) dcg += qrels.grade(query, ranked[p]) / std::log2(p + 2.0);
  return dcg / idcg;
}

double ndcg_at_k(const FusedRank& rank, const Qrels& qrels, std::size_t k) {
  const auto items = rank.items();
  return ndcg_at_k(items, rank.query, qrels, k);
}

double ndcg_at_k(const ScoredRank& rank, const Qrels& qrels, std::size_t k) {
  std::vector<ItemId> items;
  for (const auto& e : rank.entries()) items.push_back(e.item);
  return ndcg_at_k(items, rank.query(), qrels, k);
}

double ns_score(std::span<const ItemId> ranked, const ItemId& query, const Qrels& qrels) {
  if (!qrels.has_query(query)) throw Error(ErrorCode::UnknownQuery, "no judgments for query " + query.str());
  double hits = 0.0;
  for (std::size_t p = 0; p < std::min<std::size_t>(4, ranked.size()); ++p) {
    if (qrels.grade(query, ranked[p]) > 0) hits += 1.0;
  }
  return hits;
}

double ns_score(const FusedRank& rank, const Qrels& qrels) {
  const auto items = rank.items();
  return ns_score(items, rank.query, qrels);
}

double ns_score(const ScoredRank& rank, const Qrels& qrels) {
  std::vector<ItemId> items;
  for (const auto& e : rank.entries()) items.push_back(e.item);
  return ns_score(items, rank.query(), qrels);
}

// -------------------------------------------------------- correlations

std::string_view measure_name(CorrelationMeasure m) noexcept {
  switch (m) {
    case CorrelationMeasure::Jaccard: return "jaccard";
    case CorrelationMeasure::Kendall: return "kendall";
    case CorrelationMeasure::Spearman: return "spearman";
  }
  return "unknown";
}

CorrelationMeasure parse_measure(std::string_view name) {
  const auto n = lowered(name);
  if (n == "jaccard") return CorrelationMeasure::Jaccard;
  if (n == "kendall") return CorrelationMeasure::Kendall;
  if (n == "spearman") return CorrelationMeasure::Spearman;
  throw Error(ErrorCode::InvalidArgument, "unknown correlation measure '" + std::string(name) + "'");
}

double jaccard_corr(std::span<const ItemId> a, std::span<const ItemId> b) {
  std::set<ItemId> sa(a.begin(), a.end());
  std::set<ItemId> sb(b.begin(), b.end());
  std::size_t shared = 0;
  for (const auto& x : sa) shared += sb.count(x);
  const std::size_t united = sa.size() + sb.size() - shared;
  if (united == 0) return 1.0;
  return static_cast<double>(shared) / static_cast<double>(united);
}

namespace {

// Items of `a` that also occur in `b`, each list in its own rank order.
std::pair<std::vector<ItemId>, std::vector<ItemId>> shared_orders(std::span<const ItemId> a,
                                                                  std::span<const ItemId> b) {
  std::unordered_set<ItemId> in_a(a.begin(), a.end());
  std::unordered_set<ItemId> in_b(b.begin(), b.end());
  std::pair<std::vector<ItemId>, std::vector<ItemId>> out;
  for (const auto& x : a) {
    if (in_b.contains(x)) out.first.push_back(x);
  }
  for (const auto& x : b) {
    if (in_a.contains(x)) out.second.push_back(x);
  }
  return out;
}

std::vector<ItemId> items_of(const ScoredRank& r) {
  std::vector<ItemId> out;
  out.reserve(r.size());
  for (const auto& e : r.entries()) out.push_back(e.item);
  return out;
}

}  // namespace

double kendall_corr(std::span<const ItemId> a, std::span<const ItemId> b) {
  const auto [sa, sb] = shared_orders(a, b);
  const std::size_t n = sa.size();
  if (n == 0) return 0.0;
  if (n == 1) return 1.0;
  std::unordered_map<ItemId, std::size_t> pos_b;
  for (std::size_t k = 0; k < n; ++k) pos_b.emplace(sb[k], k);
  std::size_t discordant = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pos_b.at(sa[i]) > pos_b.at(sa[j])) ++discordant;
    }
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return 1.0 - static_cast<double>(discordant) / pairs;
}

double spearman_corr(std::span<const ItemId> a, std::span<const ItemId> b) {
  const auto [sa, sb] = shared_orders(a, b);
  const std::size_t n = sa.size();
  if (n == 0) return 0.0;
  std::unordered_map<ItemId, std::size_t> pos_b;
  for (std::size_t k = 0; k < n; ++k) pos_b.emplace(sb[k], k);
  double disparity = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto pb = pos_b.at(sa[k]);
    disparity += static_cast<double>(k > pb ? k - pb : pb - k);
  }
  return 1.0 - disparity / (static_cast<double>(n) * static_cast<double>(n + 1));
}

double jaccard_corr(const ScoredRank& a, const ScoredRank& b) { return jaccard_corr(items_of(a), items_of(b)); }
double kendall_corr(const ScoredRank& a, const ScoredRank& b) { return kendall_corr(items_of(a), items_of(b)); }
double spearman_corr(const ScoredRank& a, const ScoredRank& b) { return spearman_corr(items_of(a), items_of(b)); }

double correlation(CorrelationMeasure measure, const ScoredRank& a, const ScoredRank& b) {
  switch (measure) {
    case CorrelationMeasure::Jaccard: return jaccard_corr(a, b);
    case CorrelationMeasure::Kendall: return kendall_corr(a, b);
    case CorrelationMeasure::Spearman: return spearman_corr(a, b);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown correlation measure");
}

double ranker_correlation(const RunRanks& a, const RunRanks& b, CorrelationMeasure measure) {
  if (a.size() != b.size() ||
      !std::equal(a.begin(), a.end(), b.begin(), [](const auto& x, const auto& y) { return x.first == y.first; })) {
    throw Error(ErrorCode::QuerySetMismatch, "rankers cover different query sets");
  }
  if (a.empty()) throw Error(ErrorCode::QuerySetMismatch, "rankers cover no queries");
  double total = 0.0;
  auto ib = b.begin();
  for (const auto& [_, rank] : a) total += correlation(measure, rank, (ib++)->second);
  return total / static_cast<double>(a.size());
}

void CorrelationMatrix::set(const std::string& x, const std::string& y, double value) {
  values_[{x, y}] = value;
  values_[{y, x}] = value;
}

double CorrelationMatrix::at(const std::string& x, const std::string& y) const {
  auto it = values_.find({x, y});
  if (it != values_.end()) return it->second;
  if (x == y) return 1.0;
  throw Error(ErrorCode::InvalidArgument, "no correlation between " + x + " and " + y);
}

std::vector<std::string> CorrelationMatrix::names() const {
  std::set<std::string> all;
  for (const auto& [key, _] : values_) {
    all.insert(key.first);
    all.insert(key.second);
  }
  return {all.begin(), all.end()};
}

// ------------------------------------------------------------ selection

double selection_measure(double ef_x, double ef_y, double cor) { return (1.0 + ef_x * ef_y) / (1.0 + cor); }

std::string_view strategy_name(SelectionStrategy s) noexcept {
  switch (s) {
    case SelectionStrategy::All: return "all";
    case SelectionStrategy::TopTwoEffective: return "top-two";
    case SelectionStrategy::BestPair: return "best-pair";
    case SelectionStrategy::TopThreeEffective: return "top-three";
  }
  return "unknown";
}

SelectionStrategy parse_strategy(std::string_view name) {
  const auto n = lowered(name);
  if (n == "all") return SelectionStrategy::All;
  if (n == "top-two" || n == "toptwoeffective") return SelectionStrategy::TopTwoEffective;
  if (n == "best-pair") return SelectionStrategy::BestPair;
  if (n == "top-three" || n == "topthreeeffective") return SelectionStrategy::TopThreeEffective;
  throw Error(ErrorCode::InvalidArgument, "unknown selection strategy '" + std::string(name) + "'");
}

std::vector<std::string> select_rankers(const std::map<std::string, double>& effectiveness,
                                        const CorrelationMatrix& correlations, SelectionStrategy strategy) {
  std::vector<std::string> by_eff;
  for (const auto& [name, _] : effectiveness) by_eff.push_back(name);
  std::stable_sort(by_eff.begin(), by_eff.end(),
                   [&](const auto& x, const auto& y) { return effectiveness.at(x) > effectiveness.at(y); });

  auto need = [&](std::size_t n) {
    if (by_eff.size() < n) {
      throw Error(ErrorCode::NotEnoughRankers, std::string(strategy_name(strategy)) + " needs " + std::to_string(n) +
                                                   " rankers, got " + std::to_string(by_eff.size()));
    }
  };

  switch (strategy) {
    case SelectionStrategy::All:
      need(1);
      return by_eff;
    case SelectionStrategy::TopTwoEffective:
      need(2);
      return {by_eff[0], by_eff[1]};
    case SelectionStrategy::TopThreeEffective:
      need(3);
      return {by_eff[0], by_eff[1], by_eff[2]};
    case SelectionStrategy::BestPair: {
      need(2);
      std::optional<std::pair<std::string, std::string>> best;
      double best_value = 0.0;
      // effectiveness is a sorted map, so pairs are visited in lexicographic
      // order and only a strict improvement replaces the incumbent.
      for (auto x = effectiveness.begin(); x != effectiveness.end(); ++x) {
        for (auto y = std::next(x); y != effectiveness.end(); ++y) {
          const double v = selection_measure(x->second, y->second, correlations.at(x->first, y->first));
          if (!best || v > best_value) {
            best = {x->first, y->first};
            best_value = v;
          }
        }
      }
      std::vector<std::string> out{best->first, best->second};
      std::stable_sort(out.begin(), out.end(),
                       [&](const auto& a, const auto& b) { return effectiveness.at(a) > effectiveness.at(b); });
      return out;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown selection strategy");
}

// ------------------------------------------------------ winning numbers

void EffectivenessTable::set(const std::string& dataset, const std::string& configuration, const std::string& method,
                             double value) {
  values_[{dataset, configuration, method}] = value;
}

std::optional<double> EffectivenessTable::get(const std::string& dataset, const std::string& configuration,
                                              const std::string& method) const {
  auto it = values_.find({dataset, configuration, method});
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> EffectivenessTable::methods() const {
  std::set<std::string> all;
  for (const auto& [key, _] : values_) all.insert(std::get<2>(key));
  return {all.begin(), all.end()};
}

std::vector<std::pair<std::string, std::string>> EffectivenessTable::cells() const {
  std::set<std::pair<std::string, std::string>> all;
  for (const auto& [key, _] : values_) all.emplace(std::get<0>(key), std::get<1>(key));
  return {all.begin(), all.end()};
}

std::map<std::string, std::size_t> winning_numbers(const EffectivenessTable& table) {
  const auto methods = table.methods();
  std::map<std::string, std::size_t> wins;
  for (const auto& m : methods) wins[m] = 0;
  for (const auto& [dataset, config] : table.cells()) {
    std::vector<double> perf;
    for (const auto& m : methods) {
      auto v = table.get(dataset, config, m);
      if (!v) throw Error(ErrorCode::IncompleteTable, "no value for " + m + " on " + dataset + "/" + config);
      perf.push_back(*v);
    }
    for (std::size_t i = 0; i < methods.size(); ++i) {
      for (std::size_t j = 0; j < methods.size(); ++j) {
        if (perf[i] > perf[j]) ++wins[methods[i]];
      }
    }
  }
  return wins;
}

// --------------------------------------------------------------- t-test

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::ABetter: return "ABetter";
    case Verdict::BBetter: return "BBetter";
    case Verdict::Tie: return "Tie";
  }
  return "Unknown";
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch, "paired samples of sizes " + std::to_string(a.size()) + " and " +
                                               std::to_string(b.size()));
  }
  if (a.size() < 2) throw Error(ErrorCode::LengthMismatch, "paired t-test needs at least two pairs");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");

  const std::size_t n = a.size();
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];

  TTestResult out;
  out.degrees_of_freedom = n - 1;
  double sum = 0.0;
  for (double d : diff) sum += d;
  out.mean_difference = sum / static_cast<double>(n);

  if (std::all_of(diff.begin(), diff.end(), [&](double d) { return d == diff[0]; })) {
    out.degenerate = true;
    if (diff[0] == 0.0) {
      out.verdict = Verdict::Tie;
      out.p_value = 1.0;
    } else {
      out.verdict = diff[0] > 0.0 ? Verdict::ABetter : Verdict::BBetter;
      out.t = diff[0] > 0.0 ? HUGE_VAL : -HUGE_VAL;
      out.p_value = 0.0;
    }
    return out;
  }

  double ss = 0.0;
  for (double d : diff) ss += (d - out.mean_difference) * (d - out.mean_difference);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  out.t = out.mean_difference / (sd / std::sqrt(static_cast<double>(n)));

  const boost::math::students_t dist(static_cast<double>(n - 1));
  out.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(out.t)));
  if (out.p_value < alpha) out.verdict = out.mean_difference > 0.0 ? Verdict::ABetter : Verdict::BBetter;
  return out;
}

}  // namespace fusegraph
