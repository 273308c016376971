#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>

#include "fusegraph/error.hpp"
#include "fusegraph/evaluation.hpp"

using namespace fusegraph;

namespace {

using Items = std::vector<ItemId>;

ScoredRank ranked(const ItemId& query, const Items& items, std::size_t depth = 10) {
  std::vector<ScoredEntry> entries;
  for (std::size_t k = 0; k < items.size(); ++k) entries.push_back({items[k], 1.0 / static_cast<double>(k + 1)});
  return ScoredRank(query, "r", std::move(entries), depth);
}

Items seq(const std::string& prefix, std::size_t from, std::size_t to) {
  Items out;
  for (std::size_t k = from; k < to; ++k) out.emplace_back(prefix + std::to_string(k));
  return out;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("ndcg") {
  const auto qrels = Qrels::from_grades({{"q", {{"d1", 1}, {"d3", 1}, {"d9", 0}}}, {"empty", {{"x", 0}}}});
  const Items hand{"d1", "d2", "d3"};
  CHECK(ndcg_at_k(hand, "q", qrels, 3) == doctest::Approx(1.5 / (1.0 + 1.0 / std::log2(3.0))).epsilon(1e-14));
  CHECK(ndcg_at_k(hand, "q", qrels, 3) == doctest::Approx(0.91972).epsilon(1e-5));
  CHECK(ndcg_at_k(Items{"d3", "d1", "d7"}, "q", qrels, 3) == 1.0);
  CHECK(ndcg_at_k(Items{"d1", "d3"}, "q", qrels, 10) == 1.0);
  CHECK(ndcg_at_k(Items{"x"}, "empty", qrels, 10) == 0.0);
  CHECK(code_of([&] { ndcg_at_k(hand, "nobody", qrels, 3); }) == ErrorCode::UnknownQuery);
  // equal-relevance items below the cutoff do not matter
  CHECK(ndcg_at_k(Items{"d1", "d2", "d3", "d4"}, "q", qrels, 2) == ndcg_at_k(Items{"d1", "d2", "d4", "d3"}, "q", qrels, 2));

  const auto graded = Qrels::from_grades({{"q", {{"a", 2}, {"b", 1}}}});
  const double dcg = 1.0 + 2.0 / std::log2(3.0);
  const double idcg = 2.0 + 1.0 / std::log2(3.0);
  CHECK(ndcg_at_k(Items{"b", "a"}, "q", graded, 10) == doctest::Approx(dcg / idcg).epsilon(1e-14));

  FusedRank fr{"q", {{"d1", 0.0}, {"d2", 0.1}, {"d3", 0.2}}, 3};
  CHECK(ndcg_at_k(fr, qrels, 3) == ndcg_at_k(hand, "q", qrels, 3));
  CHECK(ndcg_at_k(ranked("q", hand), qrels, 3) == ndcg_at_k(hand, "q", qrels, 3));
}

TEST_CASE("class-derived qrels") {
  const auto qrels = Qrels::from_classes({{"a1", "a"}, {"a2", "a"}, {"a3", "a"}, {"b1", "b"}});
  CHECK(qrels.grade("a1", "a2") == 1);
  CHECK(qrels.grade("a1", "a1") == 1);
  CHECK(qrels.grade("a1", "b1") == 0);
  CHECK(qrels.grade("a1", "zz") == 0);
  CHECK(qrels.ideal_grades("a2") == std::vector<int>{1, 1, 1});
  CHECK(ndcg_at_k(Items{"a1", "a2", "a3"}, "a1", qrels, 10) == 1.0);
  CHECK(code_of([&] { qrels.grade("zz", "a1"); }) == ErrorCode::UnknownQuery);
}

TEST_CASE("ns score") {
  const auto qrels = Qrels::from_classes(
      {{"q", "c"}, {"a", "c"}, {"b", "c"}, {"x", "d"}, {"y", "d"}, {"z", "d"}, {"w", "c"}});
  CHECK(ns_score(Items{"q", "x", "a", "b", "w"}, "q", qrels) == 3.0);
  CHECK(ns_score(Items{"q", "a", "b", "w"}, "q", qrels) == 4.0);
  CHECK(ns_score(Items{"x", "a"}, "q", qrels) == 1.0);
  CHECK(code_of([&] { ns_score(Items{"q"}, "nobody", qrels); }) == ErrorCode::UnknownQuery);
}

TEST_CASE("correlations") {
  const Items abc{"A", "B", "C"};
  const Items cba{"C", "B", "A"};
  CHECK(jaccard_corr(abc, abc) == 1.0);
  CHECK(kendall_corr(abc, abc) == 1.0);
  CHECK(spearman_corr(abc, abc) == 1.0);
  CHECK(jaccard_corr(abc, Items{"X", "Y"}) == 0.0);
  CHECK(jaccard_corr(seq("d", 0, 10), [] {
          auto v = seq("d", 5, 10);
          for (auto& x : seq("e", 0, 5)) v.push_back(x);
          return v;
        }()) == 1.0 / 3.0);
  CHECK(kendall_corr(abc, cba) == 0.0);
  CHECK(kendall_corr(abc, Items{"A", "C", "B"}) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(spearman_corr(abc, cba) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(spearman_corr(Items{"A", "X"}, Items{"Y", "A"}) == 1.0);
  CHECK(kendall_corr(Items{"A", "X"}, Items{"Y", "Z"}) == 0.0);
  CHECK(spearman_corr(Items{"A"}, Items{"B"}) == 0.0);
  // unequal item sets are restricted to the intersection
  CHECK(kendall_corr(Items{"A", "X", "B"}, Items{"B", "A", "Y"}) == 0.0);

  const Items p{"A", "B", "C", "D", "E"};
  const Items q{"D", "A", "E", "B", "X"};
  for (const auto m : {CorrelationMeasure::Jaccard, CorrelationMeasure::Kendall, CorrelationMeasure::Spearman}) {
    CHECK(correlation(m, ranked("q", p), ranked("q", q)) == correlation(m, ranked("q", q), ranked("q", p)));
    CHECK(correlation(m, ranked("q", p), ranked("q", p)) == 1.0);
    CHECK(parse_measure(measure_name(m)) == m);
  }
  CHECK_THROWS_AS(parse_measure("pearson"), Error);
}

TEST_CASE("ranker correlation") {
  RunRanks a{{"q1", ranked("q1", {"A", "B"})}, {"q2", ranked("q2", {"C", "D"})}};
  RunRanks b{{"q1", ranked("q1", {"A", "B"})}, {"q2", ranked("q2", {"E", "F"})}};
  CHECK(ranker_correlation(a, a, CorrelationMeasure::Jaccard) == 1.0);
  CHECK(ranker_correlation(a, b, CorrelationMeasure::Jaccard) == 0.5);
  RunRanks c{{"q1", ranked("q1", {"A", "B"})}};
  CHECK(code_of([&] { ranker_correlation(a, c, CorrelationMeasure::Jaccard); }) == ErrorCode::QuerySetMismatch);
}

TEST_CASE("selection measure") {
  CHECK(selection_measure(0.9, 0.8, 0.5) == doctest::Approx(1.72 / 1.5).epsilon(1e-15));
  CHECK(selection_measure(0.9, 0.8, 0.5) == doctest::Approx(1.14667).epsilon(1e-5));
  CHECK(selection_measure(0.3, 0.7, 0.2) == selection_measure(0.7, 0.3, 0.2));
  CHECK(selection_measure(0.0, 0.0, 0.0) == 1.0);
}

TEST_CASE("select rankers") {
  const std::map<std::string, double> eff{{"LAS", 0.8505}, {"CCOM", 0.7262}, {"LBP", 0.6528}};
  CorrelationMatrix cor;
  cor.set("LAS", "CCOM", 0.38);
  cor.set("LAS", "LBP", 0.30);
  cor.set("CCOM", "LBP", 0.25);
  CHECK(cor.at("CCOM", "LAS") == 0.38);
  CHECK(cor.at("LBP", "LBP") == 1.0);

  const auto as_set = [](const std::vector<std::string>& v) { return std::set<std::string>(v.begin(), v.end()); };
  using S = std::set<std::string>;
  CHECK(as_set(select_rankers(eff, cor, SelectionStrategy::TopTwoEffective)) == S{"LAS", "CCOM"});
  CHECK(as_set(select_rankers(eff, cor, SelectionStrategy::BestPair)) == S{"LAS", "LBP"});
  CHECK(as_set(select_rankers(eff, cor, SelectionStrategy::All)) == S{"LAS", "CCOM", "LBP"});
  CHECK(as_set(select_rankers(eff, cor, SelectionStrategy::TopThreeEffective)) == S{"LAS", "CCOM", "LBP"});

  const std::map<std::string, double> one{{"LAS", 0.8}};
  CHECK(select_rankers(one, cor, SelectionStrategy::All) == std::vector<std::string>{"LAS"});
  CHECK(code_of([&] { select_rankers(one, cor, SelectionStrategy::BestPair); }) == ErrorCode::NotEnoughRankers);

  const std::map<std::string, double> two{{"LAS", 0.8}, {"LBP", 0.6}};
  CHECK(as_set(select_rankers(two, cor, SelectionStrategy::TopTwoEffective)) ==
        as_set(select_rankers(two, cor, SelectionStrategy::All)));

  // rescaled correlations: the pick follows the argmax, not the scale
  const auto best_pair = [&](double factor) {
    CorrelationMatrix m;
    m.set("LAS", "CCOM", 0.38 * factor);
    m.set("LAS", "LBP", 0.30 * factor);
    m.set("CCOM", "LBP", 0.25 * factor);
    return as_set(select_rankers(eff, m, SelectionStrategy::BestPair));
  };
  CHECK(best_pair(1.0) == S{"LAS", "LBP"});
  CHECK(best_pair(0.5) == S{"LAS", "CCOM"});
  // (1 + 0.7262 * 0.6528) / 1.5 > (1 + 0.8505 * 0.6528) / 1.6
  CHECK(best_pair(2.0) == S{"CCOM", "LBP"});

  for (const auto s : {SelectionStrategy::All, SelectionStrategy::TopTwoEffective, SelectionStrategy::BestPair,
                       SelectionStrategy::TopThreeEffective}) {
    CHECK(parse_strategy(strategy_name(s)) == s);
  }
}

TEST_CASE("winning numbers") {
  SUBCASE("split wins") {
    EffectivenessTable t;
    t.set("d", "c1", "X", 0.6);
    t.set("d", "c1", "Y", 0.5);
    t.set("d", "c2", "X", 0.4);
    t.set("d", "c2", "Y", 0.7);
    const auto w = winning_numbers(t);
    CHECK(w.at("X") == 1);
    CHECK(w.at("Y") == 1);
  }
  SUBCASE("dominant method") {
    EffectivenessTable t;
    for (const char* d : {"d1", "d2"}) {
      for (const char* c : {"c1", "c2", "c3"}) {
        t.set(d, c, "FG", 0.9);
        t.set(d, c, "Borda", 0.5);
        t.set(d, c, "RRF", 0.6);
      }
    }
    const auto w = winning_numbers(t);
    CHECK(w.at("FG") == 2 * 3 * 2);
    CHECK(w.at("RRF") == 6);
    CHECK(w.at("Borda") == 0);
  }
  SUBCASE("ties score nothing") {
    EffectivenessTable t;
    t.set("d", "c", "X", 0.5);
    t.set("d", "c", "Y", 0.5);
    const auto w = winning_numbers(t);
    CHECK(w.at("X") == 0);
    CHECK(w.at("Y") == 0);
  }
  SUBCASE("incomplete") {
    EffectivenessTable t;
    t.set("d", "c1", "X", 0.5);
    t.set("d", "c1", "Y", 0.4);
    t.set("d", "c2", "X", 0.5);
    CHECK(code_of([&] { winning_numbers(t); }) == ErrorCode::IncompleteTable);
  }
}

TEST_CASE("paired t-test") {
  SUBCASE("identical") {
    const std::vector<double> a{0.1, 0.2, 0.3};
    const auto r = paired_t_test(a, a);
    CHECK(r.verdict == Verdict::Tie);
    CHECK(r.degenerate);
  }
  SUBCASE("constant shift") {
    std::vector<double> b(30);
    for (std::size_t k = 0; k < b.size(); ++k) b[k] = 0.01 * static_cast<double>(k);
    std::vector<double> a;
    for (double x : b) a.push_back(x + 1.0);
    const auto r = paired_t_test(a, b);
    CHECK(r.verdict == Verdict::ABetter);
    CHECK(paired_t_test(b, a).verdict == Verdict::BBetter);
  }
  SUBCASE("small perturbation") {
    // reference statistic and p-value from an independent implementation
    const std::vector<double> a{0.61, 0.72, 0.55, 0.80, 0.67};
    const std::vector<double> b{0.62, 0.70, 0.5650000000000001, 0.795, 0.682};
    const auto r = paired_t_test(a, b);
    CHECK(r.verdict == Verdict::Tie);
    CHECK(r.t == doctest::Approx(-0.36489506024755275).epsilon(1e-9));
    CHECK(r.p_value == doctest::Approx(0.733663947446419).epsilon(1e-7));
    CHECK(r.degrees_of_freedom == 4);
  }
  SUBCASE("clear difference") {
    const std::vector<double> a{0.5, 0.6, 0.7, 0.8, 0.9, 0.55, 0.65, 0.75};
    const std::vector<double> b{0.3, 0.35, 0.5, 0.52, 0.6, 0.3, 0.4, 0.5};
    const auto r = paired_t_test(a, b);
    CHECK(r.verdict == Verdict::ABetter);
    CHECK(r.t == doctest::Approx(20.268703936893367).epsilon(1e-9));
    CHECK(r.p_value == doctest::Approx(1.7830405988853228e-07).epsilon(1e-6));
  }
  SUBCASE("errors") {
    const std::vector<double> a{0.1, 0.2};
    const std::vector<double> b{0.1};
    CHECK(code_of([&] { paired_t_test(a, b); }) == ErrorCode::LengthMismatch);
    CHECK(code_of([&] { paired_t_test(b, b); }) == ErrorCode::LengthMismatch);
  }
}
