#pragma once

#include "seplab/sep_edges.hpp"

namespace seplab {

// Total order on all C(n,2) potential arcs of the n-node complete graph, stored as a
// rank bijection. Ranking every potential arc (not just present ones) keeps the order
// reusable across replicates and arc toggles.
class ArcOrder {
public:
    static ArcOrder identity(int n);
    // Ranks taken from a permutation: ranks[arc_index] = position in the order.
    static ArcOrder from_ranks(int n, std::vector<int> ranks);

    int node_count() const { return n_; }
    int rank(int u, int v) const { return ranks_[arc_index(n_, u < v ? u : v, u < v ? v : u)]; }
    int rank(const Arc& a) const { return ranks_[arc_index(n_, a.u, a.v)]; }

    // Order with the arcs at ranks r and r+1 exchanged.
    ArcOrder with_adjacent_ranks_swapped(int r) const;

private:
    ArcOrder(int n, std::vector<int> ranks) : n_(n), ranks_(std::move(ranks)) {}
    int n_;
    std::vector<int> ranks_;
};

// Uniformly random order, deterministic in (n, seed).
ArcOrder random_arc_order(int n, std::uint64_t seed);

// Edge tally of the pulling triangulation of the polytope refined at the origin.
// Every polytope vertex is joined to the origin, hence origin_edges == 2 * arc_count.
struct TriEdgeReport {
    long long total = 0;
    long long origin_edges = 0;
    long long pair_edges = 0;
};

// Two non-antipodal vertices are joined by a triangulation edge iff no directed
// 3-cycle of g contains both arcs and every directed 4-cycle of g containing both
// has its order-minimal arc among the pair. The total count is invariant under the
// choice of order; only which pairs realise it varies.
bool is_tri_edge(const Graph& g, const ArcOrder& order, const DirectedArcPair& pair);

// Reference implementation enumerating all directed 4-cycles; for tests.
bool is_tri_edge_naive(const Graph& g, const ArcOrder& order, const DirectedArcPair& pair);

TriEdgeReport count_tri_edges(const Graph& g, const ArcOrder& order);

}  // namespace seplab
