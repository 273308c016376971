#pragma once

/** \file fusion_graph.hpp
 *  \brief Weighted directed fusion graphs built from a query's normalized
 *  ranks and the ranks of the items they retrieve.
 *
 * For a query q with normalized ranks F_q:
 *  - every item A ranked in F_q is a vertex weighted by the sum of its
 *    scores across F_q;
 *  - for every occurrence of A at position p in some rank of F_q and every
 *    item B != A that is a vertex and appears in a rank of A (same rankers),
 *    score(rank_A, B) / p is accumulated onto edge A -> B.
 * Vertex and edge weights are then divided by their respective maxima.
 */

#include <compare>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fusegraph/core_model.hpp"
#include "fusegraph/rank_norm.hpp"

namespace fusegraph {

struct EdgeKey {
  ItemId source;
  ItemId target;

  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

/// Graph with uniquely labeled vertices. Vertices and edges are kept in
/// label order, which fixes the summation order of every weight total.
class FusionGraph {
 public:
  using VertexMap = std::map<ItemId, double>;
  using EdgeMap = std::map<EdgeKey, double>;

  FusionGraph() = default;
  explicit FusionGraph(ItemId query) : query_(std::move(query)) {}

  const ItemId& query() const noexcept { return query_; }
  const VertexMap& vertices() const noexcept { return vertices_; }
  const EdgeMap& edges() const noexcept { return edges_; }
  bool normalized() const noexcept { return normalized_; }
  bool empty() const noexcept { return vertices_.empty(); }

  bool has_vertex(const ItemId& item) const { return vertices_.contains(item); }

  /// Sets (or replaces) a vertex weight. Clears the normalized flag.
  void set_vertex(const ItemId& item, double weight);
  /// Sets (or replaces) an edge weight. Throws InvalidArgument for a
  /// self-edge or a missing endpoint. Clears the normalized flag.
  void set_edge(const ItemId& source, const ItemId& target, double weight);

  void mark_normalized() noexcept { normalized_ = true; }

  friend bool operator==(const FusionGraph&, const FusionGraph&) = default;

 private:
  ItemId query_;
  VertexMap vertices_;
  EdgeMap edges_;
  bool normalized_ = false;
};

enum class MissingRankPolicy {
  Lenient,  ///< a vertex without indexed ranks emits no edges
  Strict,   ///< a vertex without an indexed rank is an error
};

/// Counters filled during construction when requested.
struct BuildStats {
  std::size_t entries_visited = 0;
};

struct BuildOptions {
  MissingRankPolicy missing_ranks = MissingRankPolicy::Lenient;
  BuildStats* stats = nullptr;
};

/// Builds and normalizes the fusion graph of `rs`.
///
/// `rs` must already be normalized and `normalized_index` must hold the
/// normalized ranks of the items it contains (see normalize_index). Ranks
/// are processed in ranker-name order, so permuting the rankers of `rs`
/// leaves every weight bit-identical.
FusionGraph build_fusion_graph(const RankSet& rs, const CollectionRankIndex& normalized_index,
                               const NormalizationParams& params, const BuildOptions& options = {});

/// Divides vertex weights by their maximum and edge weights by theirs.
/// Throws EmptyGraph for a graph without vertices.
FusionGraph normalize_graph_weights(const FusionGraph& g);

/// A fusion graph together with the settings it was built with, which is
/// what the graph store persists.
struct GraphRecord {
  FusionGraph graph;
  std::size_t depth = 0;
  std::vector<std::string> rankers;

  friend bool operator==(const GraphRecord&, const GraphRecord&) = default;
};

inline constexpr int kGraphRecordVersion = 1;

/// One JSON object on a single line, without the trailing newline.
std::string serialize_graph(const GraphRecord& record);

/// Parses a record produced by serialize_graph. Throws
/// MalformedGraphRecord, UnsupportedVersion, or EmptyGraph.
GraphRecord deserialize_graph(std::string_view line);

void write_graph_store(std::ostream& out, const std::vector<GraphRecord>& records);
std::vector<GraphRecord> read_graph_store(std::istream& in);

}  // namespace fusegraph
