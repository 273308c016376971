#pragma once

/** \file retrieval.hpp
 *  \brief Fusion-graph retrieval: an offline index holding one fusion graph
 *  per collection item, and the online query path that ranks the
 *  collection by graph distance to the query's own fusion graph.
 */

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fusegraph/core_model.hpp"
#include "fusegraph/fusion_graph.hpp"
#include "fusegraph/graph_similarity.hpp"
#include "fusegraph/rank_norm.hpp"

namespace fusegraph {

std::string_view comparator_name(Comparator c) noexcept;
/// Accepts "MCS" / "WGU" in any case. Throws InvalidArgument otherwise.
Comparator parse_comparator(std::string_view name);

/// Immutable map from collection item to its normalized fusion graph, with
/// an inverted vertex -> graph map for candidate scoping.
class FusionGraphIndex {
 public:
  /// Throws InvalidArgument if a graph is not normalized or empty.
  FusionGraphIndex(std::map<ItemId, FusionGraph> graphs, NormalizationParams params,
                   std::vector<std::string> rankers, Comparator comparator,
                   MissingRankPolicy missing_ranks = MissingRankPolicy::Lenient);

  const std::map<ItemId, FusionGraph>& graphs() const noexcept { return graphs_; }
  const NormalizationParams& params() const noexcept { return params_; }
  const std::vector<std::string>& rankers() const noexcept { return rankers_; }
  Comparator comparator() const noexcept { return comparator_; }
  MissingRankPolicy missing_ranks() const noexcept { return missing_ranks_; }
  std::size_t size() const noexcept { return graphs_.size(); }

  const FusionGraph* find(const ItemId& item) const;

  /// Items whose graphs share at least one vertex label with `query_graph`,
  /// ascending. Every other item is at distance exactly 1.
  std::vector<ItemId> candidate_scope(const FusionGraph& query_graph) const;

  /// Records in item order, ready for write_graph_store.
  std::vector<GraphRecord> records() const;

 private:
  std::map<ItemId, FusionGraph> graphs_;
  NormalizationParams params_;
  std::vector<std::string> rankers_;
  Comparator comparator_;
  MissingRankPolicy missing_ranks_;
  std::unordered_map<ItemId, std::vector<ItemId>> holders_;
};

struct IndexOptions {
  MissingRankPolicy missing_ranks = MissingRankPolicy::Lenient;
  std::size_t threads = 1;
  /// Restricts the indexed items; defaults to every query in the index.
  std::optional<std::vector<ItemId>> items;
};

/// Offline stage: normalizes the collection's ranks and builds one fusion
/// graph per collection item. In strict mode an item missing any ranker's
/// rank raises MissingRank; in lenient mode its graph uses the ranks it has.
FusionGraphIndex index_collection(const CollectionRankIndex& index, std::span<const std::string> rankers,
                                  const NormalizationParams& params, Comparator comparator,
                                  const IndexOptions& options = {});

struct SearchOptions {
  bool exclude_self = false;
  bool use_scope = true;
  std::size_t threads = 1;
};

/// Normalizes the query's ranks against `index` and builds its fusion graph
/// (the query need not be a collection item).
FusionGraph query_graph(const RankSet& query_ranks, const FusionGraphIndex& fg_index,
                        const CollectionRankIndex& index);

/// Online stage: ranks every indexed item by ascending distance between its
/// graph and the query's graph, ties by ascending item id, truncated to L.
/// Throws RankerMismatch when the rankers or depth differ from the index.
FusedRank fuse_query(const RankSet& query_ranks, const FusionGraphIndex& fg_index, const CollectionRankIndex& index,
                     const SearchOptions& options = {});

inline constexpr int kIndexFormatVersion = 1;

/// Writes `manifest.json` and `graphs.jsonl` under `dir` (created if needed).
void save_index(const FusionGraphIndex& fg_index, const std::filesystem::path& dir);

/// Loads an index directory. Throws UnsupportedVersion for an unknown
/// manifest version and RankerMismatch if a graph record disagrees with the
/// manifest's rankers or depth.
FusionGraphIndex load_index(const std::filesystem::path& dir);

}  // namespace fusegraph
