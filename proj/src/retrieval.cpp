#include "fusegraph/retrieval.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "fusegraph/error.hpp"
#include "fusegraph/parallel.hpp"

namespace fusegraph {

std::string_view comparator_name(Comparator c) noexcept { return c == Comparator::MCS ? "MCS" : "WGU"; }

Comparator parse_comparator(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char ch) { return std::toupper(ch); });
  if (upper == "MCS") return Comparator::MCS;
  if (upper == "WGU") return Comparator::WGU;
  throw Error(ErrorCode::InvalidArgument, "unknown comparator '" + std::string(name) + "' (expected MCS or WGU)");
}

FusionGraphIndex::FusionGraphIndex(std::map<ItemId, FusionGraph> graphs, NormalizationParams params,
                                   std::vector<std::string> rankers, Comparator comparator,
                                   MissingRankPolicy missing_ranks)
    : graphs_(std::move(graphs)),
      params_(params),
      rankers_(std::move(rankers)),
      comparator_(comparator),
      missing_ranks_(missing_ranks) {
  params_.validate();
  for (const auto& [item, g] : graphs_) {
    if (g.empty()) throw Error(ErrorCode::InvalidArgument, "indexed graph of " + item.str() + " is empty");
    if (!g.normalized()) throw Error(ErrorCode::InvalidArgument, "indexed graph of " + item.str() + " is not normalized");
    for (const auto& [v, _] : g.vertices()) holders_[v].push_back(item);
  }
}

const FusionGraph* FusionGraphIndex::find(const ItemId& item) const {
  auto it = graphs_.find(item);
  return it == graphs_.end() ? nullptr : &it->second;
}

std::vector<ItemId> FusionGraphIndex::candidate_scope(const FusionGraph& query_graph) const {
  std::set<ItemId> scope;
  for (const auto& [v, _] : query_graph.vertices()) {
    auto it = holders_.find(v);
    if (it != holders_.end()) scope.insert(it->second.begin(), it->second.end());
  }
  return {scope.begin(), scope.end()};
}

std::vector<GraphRecord> FusionGraphIndex::records() const {
  std::vector<GraphRecord> out;
  out.reserve(graphs_.size());
  for (const auto& [_, g] : graphs_) out.push_back(GraphRecord{g, params_.depth, rankers_});
  return out;
}

FusionGraphIndex index_collection(const CollectionRankIndex& index, std::span<const std::string> rankers,
                                  const NormalizationParams& params, Comparator comparator,
                                  const IndexOptions& options) {
  params.validate();
  if (rankers.empty()) throw Error(ErrorCode::InvalidArgument, "at least one ranker is required");

  const auto items = options.items ? *options.items : index.queries(rankers);
  const auto normalized = normalize_index(index, rankers, params, options.threads);

  std::vector<std::optional<FusionGraph>> built(items.size());
  parallel_for(items.size(), options.threads, [&](std::size_t k) {
    const ItemId& item = items[k];
    std::vector<ScoredRank> ranks;
    for (const auto& name : rankers) {
      const auto* rank = normalized.find(name, item);
      if (rank == nullptr) {
        if (options.missing_ranks == MissingRankPolicy::Strict) {
          throw Error(ErrorCode::MissingRank, "no rank for item " + item.str() + " under ranker " + name);
        }
        continue;
      }
      ranks.push_back(*rank);
    }
    if (ranks.empty()) {
      throw Error(ErrorCode::MissingRank, "item " + item.str() + " has no usable rank under any chosen ranker");
    }
    built[k] = build_fusion_graph(RankSet(item, std::move(ranks)), normalized, params, {options.missing_ranks});
  });

  std::map<ItemId, FusionGraph> graphs;
  for (std::size_t k = 0; k < items.size(); ++k) graphs.emplace(items[k], std::move(*built[k]));
  return FusionGraphIndex(std::move(graphs), params, {rankers.begin(), rankers.end()}, comparator,
                          options.missing_ranks);
}

namespace {

void check_compatible(const RankSet& query_ranks, const FusionGraphIndex& fg_index) {
  const auto& indexed = fg_index.rankers();
  auto names = query_ranks.ranker_names();
  for (const auto& name : names) {
    if (std::find(indexed.begin(), indexed.end(), name) == indexed.end()) {
      throw Error(ErrorCode::RankerMismatch, "ranker " + name + " is not part of the fusion-graph index");
    }
  }
  if (fg_index.missing_ranks() == MissingRankPolicy::Strict && names.size() != indexed.size()) {
    throw Error(ErrorCode::RankerMismatch, "query " + query_ranks.query().str() + " has " +
                                               std::to_string(names.size()) + " ranks, index expects " +
                                               std::to_string(indexed.size()));
  }
  for (const auto& r : query_ranks.ranks()) {
    if (r.depth() != fg_index.params().depth) {
      throw Error(ErrorCode::RankerMismatch, "rank depth " + std::to_string(r.depth()) + " of ranker " + r.ranker() +
                                                 " differs from index depth " +
                                                 std::to_string(fg_index.params().depth));
    }
  }
}

}  // namespace

FusionGraph query_graph(const RankSet& query_ranks, const FusionGraphIndex& fg_index,
                        const CollectionRankIndex& index) {
  check_compatible(query_ranks, fg_index);
  const auto& params = fg_index.params();
  const RankSet normalized = normalize_rank_set(query_ranks, index, params);

  // Only the ranks of the query's own vertices are consulted while building
  // its graph, so normalize just those.
  std::set<ItemId> vertices;
  for (const auto& r : normalized.ranks()) {
    for (const auto& e : r.entries()) vertices.insert(e.item);
  }
  CollectionRankIndex referenced(index.collection_size());
  for (const auto& name : normalized.ranker_names()) {
    for (const auto& v : vertices) {
      const auto* rank = index.find(name, v);
      if (rank == nullptr || rank->empty()) continue;
      referenced.insert(rescale_scores(reposition_rank(*rank, index, params), params));
    }
  }
  return build_fusion_graph(normalized, referenced, params, {fg_index.missing_ranks()});
}

FusedRank fuse_query(const RankSet& query_ranks, const FusionGraphIndex& fg_index, const CollectionRankIndex& index,
                     const SearchOptions& options) {
  const FusionGraph g = query_graph(query_ranks, fg_index, index);

  std::vector<const std::pair<const ItemId, FusionGraph>*> slots;
  slots.reserve(fg_index.size());
  for (const auto& entry : fg_index.graphs()) slots.push_back(&entry);

  std::vector<double> distances(slots.size(), 1.0);
  std::vector<std::size_t> to_compare;
  if (options.use_scope) {
    const auto scope = fg_index.candidate_scope(g);
    std::size_t k = 0;
    for (const auto& item : scope) {
      while (slots[k]->first < item) ++k;
      to_compare.push_back(k);
    }
  } else {
    to_compare.resize(slots.size());
    for (std::size_t k = 0; k < slots.size(); ++k) to_compare[k] = k;
  }

  parallel_for(to_compare.size(), options.threads, [&](std::size_t t) {
    const std::size_t k = to_compare[t];
    try {
      distances[k] = graph_distance(fg_index.comparator(), g, slots[k]->second);
    } catch (const Error& e) {
      // Two empty graphs have no defined distance; rank them last.
      if (e.code() != ErrorCode::BothEmpty) throw;
      distances[k] = 1.0;
    }
  });

  std::vector<std::size_t> order;
  order.reserve(slots.size());
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (options.exclude_self && slots[k]->first == query_ranks.query()) continue;
    order.push_back(k);
  }
  // Slots are already in item order, so a stable sort by distance applies
  // the ascending-id tie rule.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return distances[a] < distances[b]; });
  if (order.size() > fg_index.params().depth) order.resize(fg_index.params().depth);

  FusedRank out{query_ranks.query(), {}, fg_index.params().depth};
  out.entries.reserve(order.size());
  for (auto k : order) out.entries.push_back({slots[k]->first, distances[k]});
  return out;
}

void save_index(const FusionGraphIndex& fg_index, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json manifest;
  manifest["format"] = "fusegraph-index";
  manifest["version"] = kIndexFormatVersion;
  manifest["rankers"] = fg_index.rankers();
  manifest["L"] = fg_index.params().depth;
  manifest["missing_position"] = fg_index.params().missing_position;
  manifest["comparator"] = comparator_name(fg_index.comparator());
  manifest["missing_ranks"] = fg_index.missing_ranks() == MissingRankPolicy::Strict ? "strict" : "lenient";
  manifest["n"] = fg_index.size();
  manifest["graph_store"] = "graphs.jsonl";

  std::ofstream m(dir / "manifest.json", std::ios::binary);
  if (!m) throw Error(ErrorCode::IoError, "cannot write " + (dir / "manifest.json").string());
  m << manifest.dump(2) << '\n';

  std::ofstream g(dir / "graphs.jsonl", std::ios::binary);
  if (!g) throw Error(ErrorCode::IoError, "cannot write " + (dir / "graphs.jsonl").string());
  write_graph_store(g, fg_index.records());
  if (!g) throw Error(ErrorCode::IoError, "failed writing " + (dir / "graphs.jsonl").string());
}

FusionGraphIndex load_index(const std::filesystem::path& dir) {
  std::ifstream m(dir / "manifest.json", std::ios::binary);
  if (!m) throw Error(ErrorCode::IoError, "cannot read " + (dir / "manifest.json").string());
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(m);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("manifest: ") + e.what());
  }

  NormalizationParams params;
  std::vector<std::string> rankers;
  Comparator comparator{};
  MissingRankPolicy policy{};
  std::string store;
  try {
    if (manifest.at("format").get<std::string>() != "fusegraph-index") {
      throw Error(ErrorCode::ParseError, "manifest is not a fusegraph index");
    }
    if (manifest.at("version").get<int>() != kIndexFormatVersion) {
      throw Error(ErrorCode::UnsupportedVersion, "index version " + manifest.at("version").dump());
    }
    rankers = manifest.at("rankers").get<std::vector<std::string>>();
    params.depth = manifest.at("L").get<std::size_t>();
    params.missing_position = manifest.value("missing_position", params.depth + 1);
    comparator = parse_comparator(manifest.at("comparator").get<std::string>());
    policy = manifest.value("missing_ranks", std::string("lenient")) == "strict" ? MissingRankPolicy::Strict
                                                                                   : MissingRankPolicy::Lenient;
    store = manifest.value("graph_store", std::string("graphs.jsonl"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("manifest: ") + e.what());
  }

  std::ifstream g(dir / store, std::ios::binary);
  if (!g) throw Error(ErrorCode::IoError, "cannot read " + (dir / store).string());
  std::map<ItemId, FusionGraph> graphs;
  for (auto& rec : read_graph_store(g)) {
    if (rec.depth != params.depth || rec.rankers != rankers) {
      throw Error(ErrorCode::RankerMismatch,
                  "graph of " + rec.graph.query().str() + " was built with different rankers or depth");
    }
    auto key = rec.graph.query();
    graphs.insert_or_assign(std::move(key), std::move(rec.graph));
  }
  if (manifest.contains("n") && manifest["n"].get<std::size_t>() != graphs.size()) {
    throw Error(ErrorCode::MalformedGraphRecord, "manifest declares " + manifest["n"].dump() + " graphs, store has " +
                                                     std::to_string(graphs.size()));
  }
  return FusionGraphIndex(std::move(graphs), params, std::move(rankers), comparator, policy);
}

}  // namespace fusegraph
