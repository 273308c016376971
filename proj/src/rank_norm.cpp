#include "fusegraph/rank_norm.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "fusegraph/error.hpp"
#include "fusegraph/parallel.hpp"

namespace fusegraph {

NormalizationParams NormalizationParams::for_depth(std::size_t depth) {
  NormalizationParams p{depth, depth + 1};
  p.validate();
  return p;
}

void NormalizationParams::validate() const {
  if (depth == 0) throw Error(ErrorCode::InvalidArgument, "depth L must be at least 1");
  if (missing_position <= depth) {
    throw Error(ErrorCode::InvalidArgument, "missing-position sentinel must exceed L");
  }
}

namespace {

std::size_t bounded_position(const ScoredRank* rank, const ItemId& item, const NormalizationParams& params) {
  if (rank == nullptr) return params.missing_position;
  auto pos = rank->position_of(item);
  if (!pos || *pos > params.depth) return params.missing_position;
  return *pos;
}

}  // namespace

double delta(const ScoredRank& query_rank, const ItemId& item, const CollectionRankIndex& index,
             const NormalizationParams& params) {
  const std::size_t forward = bounded_position(&query_rank, item, params);
  const std::size_t backward = bounded_position(index.find(query_rank.ranker(), item), query_rank.query(), params);
  return static_cast<double>(forward + backward + std::max(forward, backward));
}

double delta(const ItemId& i, const ItemId& j, const CollectionRankIndex& index, const std::string& ranker,
             const NormalizationParams& params) {
  const auto* rank_i = index.find(ranker, i);
  if (rank_i == nullptr) {
    throw Error(ErrorCode::MissingRank, "no rank for query " + i.str() + " under ranker " + ranker);
  }
  return delta(*rank_i, j, index, params);
}

ScoredRank reposition_rank(const ScoredRank& rank, const CollectionRankIndex& index,
                           const NormalizationParams& params) {
  params.validate();
  const auto entries = rank.entries();
  std::vector<double> deltas(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) deltas[k] = delta(rank, entries[k].item, index, params);

  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return deltas[a] < deltas[b]; });
  if (order.size() > params.depth) order.resize(params.depth);

  std::vector<ScoredEntry> out;
  out.reserve(order.size());
  for (auto k : order) out.push_back(entries[k]);
  return ScoredRank(rank.query(), rank.ranker(), std::move(out), params.depth);
}

ScoredRank rescale_scores(const ScoredRank& rank, const NormalizationParams& params) {
  params.validate();
  if (rank.empty()) {
    throw Error(ErrorCode::EmptyRank, "cannot rescale the empty rank of " + rank.query().str() + " (" +
                                          rank.ranker() + ")");
  }
  const std::size_t depth = params.depth;
  const auto entries = rank.entries();
  const std::size_t kept = std::min(entries.size(), depth);

  std::vector<ScoredEntry> out;
  out.reserve(kept);
  for (std::size_t k = 0; k < kept; ++k) {
    const std::size_t pos = k + 1;
    double score = 1.0;
    // Written from the 0.1 end so that position L lands on 0.1 exactly.
    if (depth > 1 && pos > 1) {
      score = 0.1 + 0.9 * static_cast<double>(depth - pos) / static_cast<double>(depth - 1);
    }
    out.push_back({entries[k].item, score});
  }
  return ScoredRank(rank.query(), rank.ranker(), std::move(out), depth);
}

RankSet normalize_rank_set(const RankSet& rs, const CollectionRankIndex& index, const NormalizationParams& params) {
  if (rs.empty()) throw Error(ErrorCode::InvalidRankSet, "rank set for " + rs.query().str() + " has no ranks");
  std::vector<ScoredRank> ranks;
  ranks.reserve(rs.size());
  for (const auto& r : rs.ranks()) ranks.push_back(rescale_scores(reposition_rank(r, index, params), params));
  return RankSet(rs.query(), std::move(ranks));
}

CollectionRankIndex normalize_index(const CollectionRankIndex& index, std::span<const std::string> rankers,
                                    const NormalizationParams& params, std::size_t threads) {
  std::vector<const ScoredRank*> sources;
  for (const auto& name : rankers) {
    for (const auto& q : index.queries(name)) {
      const auto* rank = index.find(name, q);
      if (!rank->empty()) sources.push_back(rank);
    }
  }
  std::vector<std::optional<ScoredRank>> normalized(sources.size());
  parallel_for(sources.size(), threads, [&](std::size_t k) {
    normalized[k] = rescale_scores(reposition_rank(*sources[k], index, params), params);
  });

  CollectionRankIndex out(index.collection_size());
  for (auto& r : normalized) out.insert(std::move(*r));
  return out;
}

}  // namespace fusegraph
