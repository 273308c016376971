#pragma once

/** \file core_model.hpp
 *  \brief Items, scored ranks, rank sets and the collection-wide rank index.
 *
 * Positions are 1-based throughout the library. A rank may be shorter than
 * its depth (run files truncate), but never longer.
 */

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fusegraph {

/// Opaque identifier of a collection object (document, image, ...).
/// Identity is exact string equality.
class ItemId {
 public:
  ItemId() = default;
  explicit ItemId(std::string value);
  ItemId(const char* value) : ItemId(std::string(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend bool operator==(const ItemId&, const ItemId&) = default;
  friend std::strong_ordering operator<=>(const ItemId& a, const ItemId& b) {
    return a.value_.compare(b.value_) <=> 0;
  }

 private:
  std::string value_;
};

struct ScoredEntry {
  ItemId item;
  double score = 0.0;

  friend bool operator==(const ScoredEntry&, const ScoredEntry&) = default;
};

/// Ordered (item, score) list produced by one ranker for one query.
class ScoredRank {
 public:
  /// Throws InvalidArgument on duplicate items, more entries than `depth`,
  /// negative or non-finite scores, or an empty query id.
  ScoredRank(ItemId query, std::string ranker, std::vector<ScoredEntry> entries, std::size_t depth);

  const ItemId& query() const noexcept { return query_; }
  const std::string& ranker() const noexcept { return ranker_; }
  std::span<const ScoredEntry> entries() const noexcept { return entries_; }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// 1-based position of `item`, or nullopt when it is not ranked.
  std::optional<std::size_t> position_of(const ItemId& item) const;

  friend bool operator==(const ScoredRank&, const ScoredRank&) = default;

 private:
  ItemId query_;
  std::string ranker_;
  std::vector<ScoredEntry> entries_;
  std::size_t depth_;
};

std::optional<std::size_t> position_of(const ScoredRank& rank, const ItemId& item);

/// The m ranks retrieved for one query, one per ranker.
class RankSet {
 public:
  RankSet() = default;
  /// Throws InvalidRankSet if a rank belongs to another query or a ranker
  /// name repeats.
  RankSet(ItemId query, std::vector<ScoredRank> ranks);

  const ItemId& query() const noexcept { return query_; }
  std::span<const ScoredRank> ranks() const noexcept { return ranks_; }
  std::size_t size() const noexcept { return ranks_.size(); }
  bool empty() const noexcept { return ranks_.empty(); }
  std::vector<std::string> ranker_names() const;
  /// Largest depth among the ranks (0 for an empty set).
  std::size_t depth() const noexcept;

  friend bool operator==(const RankSet&, const RankSet&) = default;

 private:
  ItemId query_;
  std::vector<ScoredRank> ranks_;
};

/// Precomputed ranks for every collection item used as a query, keyed by
/// ranker name then query id. Built once, then read-only.
class CollectionRankIndex {
 public:
  CollectionRankIndex() = default;
  explicit CollectionRankIndex(std::size_t collection_size) : collection_size_(collection_size) {}

  /// Stores `rank` under (rank.ranker(), rank.query()), replacing any
  /// previous rank for that key.
  void insert(ScoredRank rank);

  const ScoredRank* find(const std::string& ranker, const ItemId& query) const;
  bool contains(const std::string& ranker, const ItemId& query) const { return find(ranker, query) != nullptr; }

  std::vector<std::string> rankers() const;
  /// Queries with a rank under `ranker`, in ascending id order.
  std::vector<ItemId> queries(const std::string& ranker) const;
  /// Union of queries across `rankers`, ascending.
  std::vector<ItemId> queries(std::span<const std::string> rankers) const;

  std::size_t collection_size() const noexcept { return collection_size_; }
  void set_collection_size(std::size_t n) noexcept { collection_size_ = n; }

 private:
  std::map<std::string, std::map<ItemId, ScoredRank>, std::less<>> ranks_;
  std::size_t collection_size_ = 0;
};

/// One entry of an aggregated rank. `value` is a distance for fusion-graph
/// retrieval (ascending) and an aggregate score for the baselines
/// (descending).
struct FusedEntry {
  ItemId item;
  double value = 0.0;

  friend bool operator==(const FusedEntry&, const FusedEntry&) = default;
};

/// Output of a rank aggregation function for one query.
struct FusedRank {
  ItemId query;
  std::vector<FusedEntry> entries;
  std::size_t depth = 0;

  std::vector<ItemId> items() const;

  friend bool operator==(const FusedRank&, const FusedRank&) = default;
};

/// Collects the ranks of `query` under `rankers`, in the given order.
/// Throws MissingRank naming the first ranker without a rank for `query`.
RankSet assemble_rank_set(const ItemId& query, const CollectionRankIndex& index,
                          std::span<const std::string> rankers);

}  // namespace fusegraph

template <>
struct std::hash<fusegraph::ItemId> {
  std::size_t operator()(const fusegraph::ItemId& id) const noexcept { return std::hash<std::string>{}(id.str()); }
};
