#include "fusegraph/graph_similarity.hpp"

#include <algorithm>
#include <vector>

#include "fusegraph/error.hpp"

namespace fusegraph {

namespace {

// Sorted-merge intersection of two ordered maps, keeping the min weight.
template <typename Map, typename Emit>
void merge_min(const Map& a, const Map& b, std::size_t& steps, Emit emit) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    ++steps;
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      emit(ia->first, std::min(ia->second, ib->second));
      ++ia;
      ++ib;
    }
  }
}

}  // namespace

FusionGraph mcs(const FusionGraph& a, const FusionGraph& b, McsStats* stats) {
  FusionGraph out(a.query());
  std::size_t steps = 0;
  merge_min(a.vertices(), b.vertices(), steps, [&](const ItemId& v, double w) { out.set_vertex(v, w); });
  merge_min(a.edges(), b.edges(), steps,
            [&](const EdgeKey& e, double w) { out.set_edge(e.source, e.target, w); });
  if (stats != nullptr) stats->comparisons += steps;
  return out;
}

GraphSize graph_size(const FusionGraph& g) {
  double vertices = 0.0;
  for (const auto& [_, w] : g.vertices()) vertices += w;
  double edges = 0.0;
  for (const auto& [_, w] : g.edges()) edges += w;
  return {vertices + edges};
}

namespace {

void require_nonempty_pair(const FusionGraph& a, const FusionGraph& b) {
  if (a.empty() && b.empty()) throw Error(ErrorCode::BothEmpty, "cannot compare two empty graphs");
}

struct Sizes {
  double common;
  double a;
  double b;
};

// |mcs| is clamped to the smaller graph so rounding cannot push a distance below 0.
Sizes sizes(const FusionGraph& a, const FusionGraph& b) {
  const double sa = graph_size(a).value;
  const double sb = graph_size(b).value;
  return {std::min(graph_size(mcs(a, b)).value, std::min(sa, sb)), sa, sb};
}

}  // namespace

double dist_mcs(const FusionGraph& a, const FusionGraph& b) {
  require_nonempty_pair(a, b);
  const auto [common, sa, sb] = sizes(a, b);
  return 1.0 - common / std::max(sa, sb);
}

double dist_wgu(const FusionGraph& a, const FusionGraph& b) {
  require_nonempty_pair(a, b);
  const auto [common, sa, sb] = sizes(a, b);
  // rounding in sa + sb - common must not undercut the larger graph
  const double united = std::max(sa + sb - common, std::max(sa, sb));
  return 1.0 - common / united;
}

double graph_distance(Comparator comparator, const FusionGraph& a, const FusionGraph& b) {
  return comparator == Comparator::MCS ? dist_mcs(a, b) : dist_wgu(a, b);
}

FusionGraph brute_force_mcs(const FusionGraph& a, const FusionGraph& b) {
  constexpr std::size_t kMaxVertices = 8;
  constexpr std::size_t kMaxSharedEdges = 20;
  if (a.vertices().size() > kMaxVertices) {
    throw Error(ErrorCode::TooLarge, "brute-force mcs is capped at " + std::to_string(kMaxVertices) + " vertices");
  }

  std::vector<std::pair<ItemId, double>> va(a.vertices().begin(), a.vertices().end());
  const std::size_t n = va.size();

  FusionGraph best(a.query());
  double best_size = 0.0;

  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::pair<ItemId, double>> chosen;
    bool common = true;
    for (std::size_t i = 0; i < n && common; ++i) {
      if ((mask >> i & 1U) == 0) continue;
      auto it = b.vertices().find(va[i].first);
      if (it == b.vertices().end()) {
        common = false;
      } else {
        chosen.emplace_back(va[i].first, std::min(va[i].second, it->second));
      }
    }
    if (!common) continue;

    auto in_subset = [&](const ItemId& v) {
      return std::any_of(chosen.begin(), chosen.end(), [&](const auto& c) { return c.first == v; });
    };
    std::vector<std::pair<EdgeKey, double>> shared;
    for (const auto& [key, w] : a.edges()) {
      if (!in_subset(key.source) || !in_subset(key.target)) continue;
      auto it = b.edges().find(key);
      if (it != b.edges().end()) shared.emplace_back(key, std::min(w, it->second));
    }
    if (shared.size() > kMaxSharedEdges) {
      throw Error(ErrorCode::TooLarge, "brute-force mcs is capped at " + std::to_string(kMaxSharedEdges) +
                                           " shared edges per vertex subset");
    }

    for (std::size_t emask = 0; emask < (std::size_t{1} << shared.size()); ++emask) {
      FusionGraph candidate(a.query());
      for (const auto& [v, w] : chosen) candidate.set_vertex(v, w);
      for (std::size_t k = 0; k < shared.size(); ++k) {
        if ((emask >> k & 1U) != 0) candidate.set_edge(shared[k].first.source, shared[k].first.target, shared[k].second);
      }
      const double size = graph_size(candidate).value;
      if (size > best_size) {
        best_size = size;
        best = std::move(candidate);
      }
    }
  }
  return best;
}

}  // namespace fusegraph
