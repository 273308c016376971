#include "fusegraph/fusion_graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "fusegraph/error.hpp"

namespace fusegraph {

void FusionGraph::set_vertex(const ItemId& item, double weight) {
  vertices_.insert_or_assign(item, weight);
  normalized_ = false;
}

void FusionGraph::set_edge(const ItemId& source, const ItemId& target, double weight) {
  if (source == target) throw Error(ErrorCode::InvalidArgument, "self-edge on " + source.str());
  if (!has_vertex(source) || !has_vertex(target)) {
    throw Error(ErrorCode::InvalidArgument, "edge " + source.str() + " -> " + target.str() + " has a missing endpoint");
  }
  edges_.insert_or_assign(EdgeKey{source, target}, weight);
  normalized_ = false;
}

namespace {

std::vector<const ScoredRank*> ranks_by_name(const RankSet& rs) {
  std::vector<const ScoredRank*> out;
  out.reserve(rs.size());
  for (const auto& r : rs.ranks()) out.push_back(&r);
  std::sort(out.begin(), out.end(), [](const auto* a, const auto* b) { return a->ranker() < b->ranker(); });
  return out;
}

}  // namespace

FusionGraph build_fusion_graph(const RankSet& rs, const CollectionRankIndex& normalized_index,
                               const NormalizationParams& params, const BuildOptions& options) {
  params.validate();
  if (rs.empty()) throw Error(ErrorCode::InvalidRankSet, "rank set for " + rs.query().str() + " has no ranks");

  const auto ranks = ranks_by_name(rs);
  std::size_t visited = 0;

  FusionGraph::VertexMap vertices;
  for (const auto* rank : ranks) {
    for (const auto& e : rank->entries()) {
      ++visited;
      vertices[e.item] += e.score;
    }
  }

  FusionGraph::EdgeMap edges;
  for (const auto* rank : ranks) {
    const auto entries = rank->entries();
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const ItemId& a = entries[k].item;
      const double position = static_cast<double>(k + 1);
      for (const auto* peer : ranks) {
        const auto* rank_a = normalized_index.find(peer->ranker(), a);
        if (rank_a == nullptr) {
          if (options.missing_ranks == MissingRankPolicy::Strict) {
            throw Error(ErrorCode::MissingRank, "no rank for item " + a.str() + " under ranker " + peer->ranker());
          }
          continue;
        }
        for (const auto& b : rank_a->entries()) {
          ++visited;
          if (b.item == a || !vertices.contains(b.item)) continue;
          edges[EdgeKey{a, b.item}] += b.score / position;
        }
      }
    }
  }

  FusionGraph g(rs.query());
  for (const auto& [item, w] : vertices) g.set_vertex(item, w);
  for (const auto& [key, w] : edges) g.set_edge(key.source, key.target, w);

  if (options.stats != nullptr) options.stats->entries_visited += visited;
  return normalize_graph_weights(g);
}

FusionGraph normalize_graph_weights(const FusionGraph& g) {
  if (g.empty()) throw Error(ErrorCode::EmptyGraph, "graph of " + g.query().str() + " has no vertices");

  double max_vertex = 0.0;
  for (const auto& [_, w] : g.vertices()) max_vertex = std::max(max_vertex, w);
  double max_edge = 0.0;
  for (const auto& [_, w] : g.edges()) max_edge = std::max(max_edge, w);
  if (!(max_vertex > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "graph of " + g.query().str() + " has no positive vertex weight");
  }

  FusionGraph out(g.query());
  for (const auto& [item, w] : g.vertices()) out.set_vertex(item, w / max_vertex);
  for (const auto& [key, w] : g.edges()) out.set_edge(key.source, key.target, max_edge > 0.0 ? w / max_edge : w);
  out.mark_normalized();
  return out;
}

std::string serialize_graph(const GraphRecord& record) {
  nlohmann::ordered_json j;
  j["version"] = kGraphRecordVersion;
  j["query"] = record.graph.query().str();
  j["L"] = record.depth;
  j["rankers"] = record.rankers;
  j["normalized"] = record.graph.normalized();
  auto vertices = nlohmann::ordered_json::object();
  for (const auto& [item, w] : record.graph.vertices()) vertices[item.str()] = w;
  j["vertices"] = std::move(vertices);
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [key, w] : record.graph.edges()) {
    edges.push_back(nlohmann::ordered_json::array({key.source.str(), key.target.str(), w}));
  }
  j["edges"] = std::move(edges);
  return j.dump();
}

namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::MalformedGraphRecord, why); }

double weight_of(const nlohmann::json& v, const std::string& what) {
  if (!v.is_number()) malformed(what + " weight is not a number");
  const double w = v.get<double>();
  if (!std::isfinite(w) || w < 0.0) malformed(what + " weight must be finite and non-negative");
  return w;
}

}  // namespace

GraphRecord deserialize_graph(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(std::string("unparsable graph record: ") + e.what());
  }
  if (!j.is_object()) malformed("graph record is not an object");
  for (const char* field : {"version", "query", "L", "rankers", "vertices", "edges"}) {
    if (!j.contains(field)) malformed(std::string("graph record lacks field '") + field + "'");
  }
  if (!j["version"].is_number_integer()) malformed("version is not an integer");
  if (j["version"].get<int>() != kGraphRecordVersion) {
    throw Error(ErrorCode::UnsupportedVersion, "graph record version " + j["version"].dump());
  }
  if (!j["query"].is_string() || !j["L"].is_number_unsigned() || !j["rankers"].is_array() ||
      !j["vertices"].is_object() || !j["edges"].is_array()) {
    malformed("graph record field has the wrong type");
  }

  GraphRecord rec;
  rec.depth = j["L"].get<std::size_t>();
  for (const auto& r : j["rankers"]) {
    if (!r.is_string()) malformed("ranker name is not a string");
    rec.rankers.push_back(r.get<std::string>());
  }
  const auto query = j["query"].get<std::string>();
  if (query.empty()) malformed("empty query id");
  if (j["vertices"].empty()) throw Error(ErrorCode::EmptyGraph, "graph record of " + query + " has no vertices");

  try {
    FusionGraph g{ItemId(query)};
    for (const auto& [item, w] : j["vertices"].items()) g.set_vertex(ItemId(item), weight_of(w, "vertex"));
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string()) malformed("bad edge entry");
      g.set_edge(ItemId(e[0].get<std::string>()), ItemId(e[1].get<std::string>()), weight_of(e[2], "edge"));
    }
    if (j.value("normalized", true)) g.mark_normalized();
    rec.graph = std::move(g);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) malformed(e.what());
    throw;
  }
  return rec;
}

void write_graph_store(std::ostream& out, const std::vector<GraphRecord>& records) {
  for (const auto& r : records) out << serialize_graph(r) << '\n';
}

std::vector<GraphRecord> read_graph_store(std::istream& in) {
  std::vector<GraphRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(deserialize_graph(line));
    } catch (const Error& e) {
      throw Error(e.code(), "graph store line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace fusegraph
