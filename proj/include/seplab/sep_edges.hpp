#pragma once

#include "seplab/graph.hpp"

namespace seplab {

// Unordered pair of distinct directed arcs. Antipodal pairs (one arc and its
// reversal) are rejected at construction: the segment between antipodal vertices
// passes through the origin and is never an edge of the polytope, and it is
// subdivided by the origin in the triangulation.
class DirectedArcPair {
public:
    DirectedArcPair(DirectedArc first, DirectedArc second) : x_(first), y_(second) {
        if (first == second)
            throw std::invalid_argument("DirectedArcPair: arcs must be distinct");
        if (first == second.reversed())
            throw std::invalid_argument("DirectedArcPair: antipodal pair is not admissible");
        if (y_ < x_) std::swap(x_, y_);
    }

    const DirectedArc& first() const { return x_; }
    const DirectedArc& second() const { return y_; }

    // Underlying undirected arcs are always distinct (the coinciding cases are the
    // rejected identical/antipodal ones), so the pair shares either 0 or 1 node.
    bool adjacent() const {
        const Arc a = x_.arc(), b = y_.arc();
        return a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
    }

    friend bool operator==(const DirectedArcPair&, const DirectedArcPair&) = default;

private:
    DirectedArc x_, y_;
};

// Edge tally for the polytope spanned by +-(e_tail - e_head) over the graph's arcs,
// split by how the two underlying arcs of the vertex pair interact.
struct EdgeCountReport {
    long long total = 0;
    long long disjoint_pairs = 0;
    long long adjacent_same_direction = 0;
    long long adjacent_opposite = 0;
};

// Literal rule: the two vertices are joined by a polytope edge iff no directed
// 3-cycle and no directed 4-cycle of g contains both arcs as traversal steps.
// Enumerates candidate completion nodes directly; reference implementation for tests.
bool is_edge_naive(const Graph& g, const DirectedArcPair& pair);

// O(1)-adjacency form of the same predicate (see sep_edges.cpp for the case split).
bool is_edge_fast(const Graph& g, const DirectedArcPair& pair);

// Total polytope edge count over all admissible directed arc pairs of g.
EdgeCountReport count_edges(const Graph& g);

}  // namespace seplab
