#pragma once

/** \file rank_norm.hpp
 *  \brief Rank normalization: neighborhood-aware repositioning followed by
 *  uniform score rescaling to [0.1, 1].
 *
 * The repositioning distance between a query i and a ranked item j is
 *
 *     delta(i, j) = pos(rank_i, j) + pos(rank_j, i) + max(pos(rank_i, j), pos(rank_j, i))
 *
 * where a position that is undefined (item past the cut-off, or no rank
 * for j) takes the sentinel value, L + 1 by default. All positions are read
 * from the original index of the same ranker; the index is never mutated,
 * so normalizing one query does not affect another.
 */

#include <cstddef>
#include <span>
#include <string>

#include "fusegraph/core_model.hpp"

namespace fusegraph {

struct NormalizationParams {
  std::size_t depth = 10;
  std::size_t missing_position = 11;

  /// Params for cut-off L with the default sentinel L + 1.
  static NormalizationParams for_depth(std::size_t depth);

  /// Throws InvalidArgument unless depth >= 1 and missing_position > depth.
  void validate() const;
};

/// Delta between the query of `query_rank` and `item`, where the reverse
/// position is looked up in `index` under the same ranker.
double delta(const ScoredRank& query_rank, const ItemId& item, const CollectionRankIndex& index,
             const NormalizationParams& params);

/// Delta between indexed query `i` and item `j` for `ranker`.
/// Throws MissingRank when `i` has no rank under `ranker`.
double delta(const ItemId& i, const ItemId& j, const CollectionRankIndex& index, const std::string& ranker,
             const NormalizationParams& params);

/// Stable sort of the entries by ascending delta to the rank's query,
/// truncated to the top-L. Scores are carried over unchanged.
ScoredRank reposition_rank(const ScoredRank& rank, const CollectionRankIndex& index,
                           const NormalizationParams& params);

/// Assigns 1 to position 1 down to 0.1 at position L in uniform steps.
/// Throws EmptyRank for a rank without entries.
ScoredRank rescale_scores(const ScoredRank& rank, const NormalizationParams& params);

/// Repositions then rescales every rank of `rs`.
/// Throws InvalidRankSet for an empty rank set.
RankSet normalize_rank_set(const RankSet& rs, const CollectionRankIndex& index, const NormalizationParams& params);

/// Normalized copy of every rank stored under `rankers`. The result is what
/// fusion-graph construction consumes when it follows references from a
/// query's ranked items into their own ranks.
CollectionRankIndex normalize_index(const CollectionRankIndex& index, std::span<const std::string> rankers,
                                    const NormalizationParams& params, std::size_t threads = 1);

}  // namespace fusegraph
