#include "fusegraph/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "fusegraph/error.hpp"

namespace fusegraph {

ItemId::ItemId(std::string value) : value_(std::move(value)) {
  if (value_.empty()) throw Error(ErrorCode::InvalidArgument, "item id must be non-empty");
}

ScoredRank::ScoredRank(ItemId query, std::string ranker, std::vector<ScoredEntry> entries, std::size_t depth)
    : query_(std::move(query)), ranker_(std::move(ranker)), entries_(std::move(entries)), depth_(depth) {
  if (query_.empty()) throw Error(ErrorCode::InvalidArgument, "rank has an empty query id");
  if (depth_ == 0) throw Error(ErrorCode::InvalidArgument, "rank depth must be positive");
  if (entries_.size() > depth_) {
    throw Error(ErrorCode::InvalidArgument, "rank for " + query_.str() + " has " + std::to_string(entries_.size()) +
                                                " entries, more than depth " + std::to_string(depth_));
  }
  std::unordered_set<ItemId> seen;
  seen.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (e.item.empty()) throw Error(ErrorCode::InvalidArgument, "rank entry with empty item id");
    if (!std::isfinite(e.score) || e.score < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "score of " + e.item.str() + " must be finite and non-negative");
    }
    if (!seen.insert(e.item).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate item " + e.item.str() + " in rank for " + query_.str());
    }
  }
}

std::optional<std::size_t> ScoredRank::position_of(const ItemId& item) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].item == item) return i + 1;
  }
  return std::nullopt;
}

std::optional<std::size_t> position_of(const ScoredRank& rank, const ItemId& item) { return rank.position_of(item); }

RankSet::RankSet(ItemId query, std::vector<ScoredRank> ranks) : query_(std::move(query)), ranks_(std::move(ranks)) {
  std::set<std::string, std::less<>> names;
  for (const auto& r : ranks_) {
    if (r.query() != query_) {
      throw Error(ErrorCode::InvalidRankSet, "rank for " + r.query().str() + " placed in rank set of " + query_.str());
    }
    if (!names.insert(r.ranker()).second) {
      throw Error(ErrorCode::InvalidRankSet, "ranker " + r.ranker() + " appears twice for " + query_.str());
    }
  }
}

std::vector<std::string> RankSet::ranker_names() const {
  std::vector<std::string> names;
  names.reserve(ranks_.size());
  for (const auto& r : ranks_) names.push_back(r.ranker());
  return names;
}

std::size_t RankSet::depth() const noexcept {
  std::size_t d = 0;
  for (const auto& r : ranks_) d = std::max(d, r.depth());
  return d;
}

void CollectionRankIndex::insert(ScoredRank rank) {
  auto& by_query = ranks_[rank.ranker()];
  auto key = rank.query();
  by_query.insert_or_assign(std::move(key), std::move(rank));
}

const ScoredRank* CollectionRankIndex::find(const std::string& ranker, const ItemId& query) const {
  auto r = ranks_.find(ranker);
  if (r == ranks_.end()) return nullptr;
  auto q = r->second.find(query);
  return q == r->second.end() ? nullptr : &q->second;
}

std::vector<std::string> CollectionRankIndex::rankers() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : ranks_) out.push_back(name);
  return out;
}

std::vector<ItemId> CollectionRankIndex::queries(const std::string& ranker) const {
  std::vector<ItemId> out;
  auto r = ranks_.find(ranker);
  if (r == ranks_.end()) return out;
  out.reserve(r->second.size());
  for (const auto& [q, _] : r->second) out.push_back(q);
  return out;
}

std::vector<ItemId> CollectionRankIndex::queries(std::span<const std::string> rankers) const {
  std::set<ItemId> all;
  for (const auto& name : rankers) {
    auto r = ranks_.find(name);
    if (r == ranks_.end()) continue;
    for (const auto& [q, _] : r->second) all.insert(q);
  }
  return {all.begin(), all.end()};
}

std::vector<ItemId> FusedRank::items() const {
  std::vector<ItemId> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.item);
  return out;
}

RankSet assemble_rank_set(const ItemId& query, const CollectionRankIndex& index,
                          std::span<const std::string> rankers) {
  std::vector<ScoredRank> ranks;
  ranks.reserve(rankers.size());
  for (const auto& name : rankers) {
    const auto* rank = index.find(name, query);
    if (rank == nullptr) {
      throw Error(ErrorCode::MissingRank, "no rank for query " + query.str() + " under ranker " + name);
    }
    ranks.push_back(*rank);
  }
  return RankSet(query, std::move(ranks));
}

}  // namespace fusegraph
