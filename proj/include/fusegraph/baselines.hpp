#pragma once

/** \file baselines.hpp
 *  \brief Classical unsupervised rank aggregation functions.
 *
 * Every method returns items by descending aggregate value, ties broken by
 * ascending item id, truncated to the largest depth among the input ranks.
 * How each method treats an item missing from a rank:
 *  - Borda: the rank awards it 0 points.
 *  - RRF: the rank contributes nothing.
 *  - Comb*: the rank contributes nothing and does not count as an occurrence.
 *  - Condorcet: the item is ranked below every item the rank contains.
 *  - RLSim: the rank contributes the factor kRlsimFloor.
 *  - Kemeny: the item is tied last in that rank.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fusegraph/core_model.hpp"

namespace fusegraph {

enum class CombVariant { Sum, Min, Max, Med, Anz, Mnz };

enum class AggregationMethod {
  Borda,
  RRF,
  CombSUM,
  CombMIN,
  CombMAX,
  CombMED,
  CombANZ,
  CombMNZ,
  MRA,
  Condorcet,
  RLSim,
  KemenyExact,
};

std::string_view method_name(AggregationMethod m) noexcept;
/// Case-insensitive; also accepts "kemeny" for KemenyExact.
AggregationMethod parse_method(std::string_view name);

struct AggregationParams {
  double rrf_k = 60.0;
  std::size_t kemeny_cap = 8;
};

inline constexpr double kRlsimFloor = 0.01;

/// Sum over ranks of (L - position + 1), L being that rank's depth.
FusedRank borda(const RankSet& rs);

/// Sum over ranks of 1 / (k + position).
FusedRank rrf(const RankSet& rs, double k = 60.0);

/// Score fusion over per-rank min-max normalized scores (a rank whose
/// scores are all equal maps them to 1).
FusedRank comb(const RankSet& rs, CombVariant variant);

/// Median rank aggregation: sweeps depth d = 1, 2, ... and places an item
/// once it has been seen at depth <= d in more than half of the ranks.
FusedRank mra(const RankSet& rs);

/// Copeland-style Condorcet count. Pairwise majority cycles leave items
/// with equal win counts, which fall back to id order.
FusedRank condorcet(const RankSet& rs);

/// Product of per-rank scores min-max normalized to [kRlsimFloor, 1].
FusedRank rlsim(const RankSet& rs);

/// Total number of (rank, pair) disagreements between `order` and the ranks
/// of `rs`, with absent items tied last in a rank.
std::size_t kendall_discordance(const std::vector<ItemId>& order, const RankSet& rs);

/// Exhaustive Kemeny consensus over all permutations of the item union,
/// keeping the lexicographically smallest optimum. Throws TooManyItems when
/// the union exceeds `cap`.
FusedRank kemeny_exact(const RankSet& rs, std::size_t cap = 8);

FusedRank aggregate(AggregationMethod method, const RankSet& rs, const AggregationParams& params = {});

}  // namespace fusegraph
