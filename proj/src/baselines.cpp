#include "fusegraph/baselines.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <unordered_map>

#include "fusegraph/error.hpp"

namespace fusegraph {

std::string_view method_name(AggregationMethod m) noexcept {
  switch (m) {
    case AggregationMethod::Borda: return "Borda";
    case AggregationMethod::RRF: return "RRF";
    case AggregationMethod::CombSUM: return "CombSUM";
    case AggregationMethod::CombMIN: return "CombMIN";
    case AggregationMethod::CombMAX: return "CombMAX";
    case AggregationMethod::CombMED: return "CombMED";
    case AggregationMethod::CombANZ: return "CombANZ";
    case AggregationMethod::CombMNZ: return "CombMNZ";
    case AggregationMethod::MRA: return "MRA";
    case AggregationMethod::Condorcet: return "Condorcet";
    case AggregationMethod::RLSim: return "RLSim";
    case AggregationMethod::KemenyExact: return "KemenyExact";
  }
  return "Unknown";
}

AggregationMethod parse_method(std::string_view name) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
  };
  const std::string wanted = lower(name);
  if (wanted == "kemeny" || wanted == "bordacount") {
    return wanted == "kemeny" ? AggregationMethod::KemenyExact : AggregationMethod::Borda;
  }
  for (int k = 0; k <= static_cast<int>(AggregationMethod::KemenyExact); ++k) {
    const auto m = static_cast<AggregationMethod>(k);
    if (lower(method_name(m)) == wanted) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown aggregation method '" + std::string(name) + "'");
}

namespace {

void require_ranks(const RankSet& rs) {
  if (rs.empty()) throw Error(ErrorCode::EmptyRankSet, "rank set for " + rs.query().str() + " has no ranks");
}

// Orders by descending value then ascending id, truncated to the depth.
FusedRank finalize(const RankSet& rs, const std::map<ItemId, double>& values) {
  std::vector<FusedEntry> entries;
  entries.reserve(values.size());
  for (const auto& [item, v] : values) entries.push_back({item, v});
  // `values` iterates in id order, so a stable sort keeps the id tie rule.
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.value > b.value; });
  const std::size_t depth = rs.depth();
  if (entries.size() > depth) entries.resize(depth);
  return FusedRank{rs.query(), std::move(entries), depth};
}

// Per-rank min-max normalization of scores onto [floor, 1].
std::vector<std::vector<double>> minmax_scores(const RankSet& rs, double floor) {
  std::vector<std::vector<double>> out;
  out.reserve(rs.size());
  for (const auto& r : rs.ranks()) {
    if (r.empty()) {
      throw Error(ErrorCode::MissingScores, "rank of " + r.ranker() + " for " + rs.query().str() + " has no scores");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& e : r.entries()) {
      lo = std::min(lo, e.score);
      hi = std::max(hi, e.score);
    }
    std::vector<double> scaled;
    scaled.reserve(r.size());
    for (const auto& e : r.entries()) {
      const double unit = hi > lo ? (e.score - lo) / (hi - lo) : 1.0;
      scaled.push_back(floor + (1.0 - floor) * unit);
    }
    out.push_back(std::move(scaled));
  }
  return out;
}

// Ranks in ranker-name order, so that floating-point accumulation does not
// depend on the order the rank set lists them in.
std::vector<std::size_t> canonical_order(const RankSet& rs) {
  std::vector<std::size_t> idx(rs.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return rs.ranks()[a].ranker() < rs.ranks()[b].ranker(); });
  return idx;
}

std::vector<ItemId> item_union(const RankSet& rs) {
  std::vector<ItemId> items;
  for (const auto& r : rs.ranks()) {
    for (const auto& e : r.entries()) items.push_back(e.item);
  }
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

// position[rank][item]; missing items are absent from the map.
std::vector<std::unordered_map<ItemId, std::size_t>> position_maps(const RankSet& rs) {
  std::vector<std::unordered_map<ItemId, std::size_t>> out;
  out.reserve(rs.size());
  for (const auto& r : rs.ranks()) {
    std::unordered_map<ItemId, std::size_t> pos;
    const auto entries = r.entries();
    for (std::size_t k = 0; k < entries.size(); ++k) pos.emplace(entries[k].item, k + 1);
    out.push_back(std::move(pos));
  }
  return out;
}

}  // namespace

FusedRank borda(const RankSet& rs) {
  require_ranks(rs);
  std::map<ItemId, double> points;
  for (auto k : canonical_order(rs)) {
    const auto& r = rs.ranks()[k];
    const auto entries = r.entries();
    for (std::size_t p = 0; p < entries.size(); ++p) {
      points[entries[p].item] += static_cast<double>(r.depth() - p);
    }
  }
  return finalize(rs, points);
}

FusedRank rrf(const RankSet& rs, double k) {
  require_ranks(rs);
  if (!(k > 0.0)) throw Error(ErrorCode::InvalidArgument, "RRF constant k must be positive");
  std::map<ItemId, double> scores;
  for (auto idx : canonical_order(rs)) {
    const auto entries = rs.ranks()[idx].entries();
    for (std::size_t p = 0; p < entries.size(); ++p) {
      scores[entries[p].item] += 1.0 / (k + static_cast<double>(p + 1));
    }
  }
  return finalize(rs, scores);
}

FusedRank comb(const RankSet& rs, CombVariant variant) {
  require_ranks(rs);
  const auto scaled = minmax_scores(rs, 0.0);
  std::map<ItemId, std::vector<double>> seen;
  for (auto idx : canonical_order(rs)) {
    const auto entries = rs.ranks()[idx].entries();
    for (std::size_t p = 0; p < entries.size(); ++p) seen[entries[p].item].push_back(scaled[idx][p]);
  }

  std::map<ItemId, double> values;
  for (auto& [item, s] : seen) {
    double sum = 0.0;
    for (double v : s) sum += v;
    const auto count = static_cast<double>(s.size());
    double value = 0.0;
    switch (variant) {
      case CombVariant::Sum: value = sum; break;
      case CombVariant::Min: value = *std::min_element(s.begin(), s.end()); break;
      case CombVariant::Max: value = *std::max_element(s.begin(), s.end()); break;
      case CombVariant::Med: {
        std::sort(s.begin(), s.end());
        const std::size_t n = s.size();
        value = n % 2 == 1 ? s[n / 2] : (s[n / 2 - 1] + s[n / 2]) / 2.0;
        break;
      }
      case CombVariant::Anz: value = sum / count; break;
      case CombVariant::Mnz: value = sum * count; break;
    }
    values.emplace(item, value);
  }
  return finalize(rs, values);
}

FusedRank mra(const RankSet& rs) {
  require_ranks(rs);
  const std::size_t m = rs.size();
  const std::size_t depth = rs.depth();
  std::size_t longest = 0;
  for (const auto& r : rs.ranks()) longest = std::max(longest, r.size());

  struct Tally {
    std::size_t count = 0;
    std::size_t first_depth = 0;
    bool placed = false;
  };
  std::map<ItemId, Tally> tally;
  std::vector<ItemId> placed;

  for (std::size_t d = 1; d <= longest && placed.size() < depth; ++d) {
    for (const auto& r : rs.ranks()) {
      if (r.size() < d) continue;
      auto& t = tally[r.entries()[d - 1].item];
      if (t.count++ == 0) t.first_depth = d;
    }
    std::vector<std::pair<ItemId, const Tally*>> ready;
    for (const auto& [item, t] : tally) {
      if (!t.placed && 2 * t.count > m) ready.emplace_back(item, &t);
    }
    std::stable_sort(ready.begin(), ready.end(), [](const auto& a, const auto& b) {
      if (a.second->count != b.second->count) return a.second->count > b.second->count;
      return a.second->first_depth < b.second->first_depth;
    });
    for (const auto& [item, _] : ready) {
      if (placed.size() == depth) break;
      tally[item].placed = true;
      placed.push_back(item);
    }
  }

  if (placed.size() < depth) {
    // Items that never reached a majority: by total occurrences, then id.
    std::map<ItemId, std::size_t> totals;
    for (const auto& r : rs.ranks()) {
      for (const auto& e : r.entries()) ++totals[e.item];
    }
    std::vector<std::pair<ItemId, std::size_t>> rest;
    for (const auto& [item, n] : totals) {
      auto it = tally.find(item);
      if (it == tally.end() || !it->second.placed) rest.emplace_back(item, n);
    }
    std::stable_sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    for (const auto& [item, _] : rest) {
      if (placed.size() == depth) break;
      placed.push_back(item);
    }
  }

  FusedRank out{rs.query(), {}, depth};
  out.entries.reserve(placed.size());
  for (std::size_t k = 0; k < placed.size(); ++k) {
    out.entries.push_back({placed[k], static_cast<double>(placed.size() - k)});
  }
  return out;
}

FusedRank condorcet(const RankSet& rs) {
  require_ranks(rs);
  const auto items = item_union(rs);
  const auto positions = position_maps(rs);
  constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
  auto pos = [&](std::size_t r, const ItemId& item) {
    auto it = positions[r].find(item);
    return it == positions[r].end() ? kAbsent : it->second;
  };

  std::vector<std::size_t> wins(items.size(), 0);
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      std::size_t contested = 0;
      std::size_t i_better = 0;
      std::size_t j_better = 0;
      for (std::size_t r = 0; r < positions.size(); ++r) {
        const auto pi = pos(r, items[i]);
        const auto pj = pos(r, items[j]);
        if (pi == kAbsent && pj == kAbsent) continue;
        ++contested;
        if (pi < pj) ++i_better;
        if (pj < pi) ++j_better;
      }
      if (2 * i_better > contested) ++wins[i];
      if (2 * j_better > contested) ++wins[j];
    }
  }

  std::map<ItemId, double> values;
  for (std::size_t i = 0; i < items.size(); ++i) values.emplace(items[i], static_cast<double>(wins[i]));
  return finalize(rs, values);
}

FusedRank rlsim(const RankSet& rs) {
  require_ranks(rs);
  const auto scaled = minmax_scores(rs, kRlsimFloor);
  const auto items = item_union(rs);
  std::map<ItemId, double> values;
  for (const auto& item : items) values.emplace(item, 1.0);
  for (auto idx : canonical_order(rs)) {
    const auto& r = rs.ranks()[idx];
    std::unordered_map<ItemId, double> score_of;
    const auto entries = r.entries();
    for (std::size_t p = 0; p < entries.size(); ++p) score_of.emplace(entries[p].item, scaled[idx][p]);
    for (auto& [item, v] : values) {
      auto it = score_of.find(item);
      v *= it == score_of.end() ? kRlsimFloor : it->second;
    }
  }
  return finalize(rs, values);
}

std::size_t kendall_discordance(const std::vector<ItemId>& order, const RankSet& rs) {
  const auto positions = position_maps(rs);
  constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
  std::size_t total = 0;
  for (const auto& pos : positions) {
    auto at = [&](const ItemId& item) {
      auto it = pos.find(item);
      return it == pos.end() ? kAbsent : it->second;
    };
    for (std::size_t a = 0; a < order.size(); ++a) {
      const auto pa = at(order[a]);
      for (std::size_t b = a + 1; b < order.size(); ++b) {
        // `order` puts a before b; the rank disagrees if it puts b strictly first.
        if (at(order[b]) < pa) ++total;
      }
    }
  }
  return total;
}

FusedRank kemeny_exact(const RankSet& rs, std::size_t cap) {
  require_ranks(rs);
  auto perm = item_union(rs);
  if (perm.size() > cap) {
    throw Error(ErrorCode::TooManyItems, "Kemeny search over " + std::to_string(perm.size()) +
                                             " items exceeds the cap of " + std::to_string(cap));
  }
  // next_permutation from the sorted union visits permutations in
  // lexicographic order; keeping only strict improvements retains the
  // smallest optimal permutation.
  std::vector<ItemId> best = perm;
  std::size_t best_cost = kendall_discordance(perm, rs);
  while (std::next_permutation(perm.begin(), perm.end())) {
    const auto cost = kendall_discordance(perm, rs);
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  }

  const std::size_t depth = rs.depth();
  if (best.size() > depth) best.resize(depth);
  FusedRank out{rs.query(), {}, depth};
  for (std::size_t k = 0; k < best.size(); ++k) out.entries.push_back({best[k], static_cast<double>(best.size() - k)});
  return out;
}

FusedRank aggregate(AggregationMethod method, const RankSet& rs, const AggregationParams& params) {
  switch (method) {
    case AggregationMethod::Borda: return borda(rs);
    case AggregationMethod::RRF: return rrf(rs, params.rrf_k);
    case AggregationMethod::CombSUM: return comb(rs, CombVariant::Sum);
    case AggregationMethod::CombMIN: return comb(rs, CombVariant::Min);
    case AggregationMethod::CombMAX: return comb(rs, CombVariant::Max);
    case AggregationMethod::CombMED: return comb(rs, CombVariant::Med);
    case AggregationMethod::CombANZ: return comb(rs, CombVariant::Anz);
    case AggregationMethod::CombMNZ: return comb(rs, CombVariant::Mnz);
    case AggregationMethod::MRA: return mra(rs);
    case AggregationMethod::Condorcet: return condorcet(rs);
    case AggregationMethod::RLSim: return rlsim(rs);
    case AggregationMethod::KemenyExact: return kemeny_exact(rs, params.kemeny_cap);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown aggregation method");
}

}  // namespace fusegraph
