#pragma once

/** \file graph_similarity.hpp
 *  \brief Common-subgraph size and the MCS / WGU graph distances.
 *
 * Vertices are uniquely labeled, so the maximum-weight common subgraph of
 * two fusion graphs is their label intersection: shared vertices, plus
 * shared edges (whose endpoints are then necessarily shared). A shared
 * element contributes the smaller of its two weights. The literature calls
 * this construct the "minimum common subgraph" even though its size is
 * maximized.
 */

#include <cstddef>

#include "fusegraph/fusion_graph.hpp"

namespace fusegraph {

/// Sum of vertex weights plus sum of edge weights.
struct GraphSize {
  double value = 0.0;
};

/// Counts merge steps performed by mcs when requested.
struct McsStats {
  std::size_t comparisons = 0;
};

/// Label intersection of `a` and `b` with min weights. Runs a sorted merge
/// over vertices then edges: at most |V_a| + |V_b| + |E_a| + |E_b| steps.
FusionGraph mcs(const FusionGraph& a, const FusionGraph& b, McsStats* stats = nullptr);

GraphSize graph_size(const FusionGraph& g);

/// 1 - |mcs| / max(|a|, |b|). Throws BothEmpty when both graphs are empty.
double dist_mcs(const FusionGraph& a, const FusionGraph& b);

/// 1 - |mcs| / (|a| + |b| - |mcs|). Throws BothEmpty when both are empty.
double dist_wgu(const FusionGraph& a, const FusionGraph& b);

/// Exhaustive search over every common subgraph of `a` and `b`. Test
/// oracle for mcs: enumerates vertex subsets of `a`, keeps those whose
/// labels all exist in `b`, then every subset of the edges shared by both
/// graphs inside each vertex subset. Throws TooLarge when `a` has more
/// than 8 vertices or a vertex subset admits more than 20 shared edges.
FusionGraph brute_force_mcs(const FusionGraph& a, const FusionGraph& b);

enum class Comparator { MCS, WGU };

double graph_distance(Comparator comparator, const FusionGraph& a, const FusionGraph& b);

}  // namespace fusegraph
