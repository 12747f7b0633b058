#pragma once

#include <utility>
#include <vector>

#include "seplab/graph.hpp"
#include "seplab/rational.hpp"

namespace seplab {

using RationalVector = std::vector<Rational>;

// Embedded vertex set of the polytope: for the k-th arc {u, v} (u < v, lexicographic
// order), index 2k carries e_u - e_v and index 2k + 1 carries e_v - e_u.
std::vector<RationalVector> embed_vertices(const Graph& g);

// True iff point i is a vertex of conv(points): some functional separates it from all
// other points with margin 1 (margins are scale-free, so 1 is no loss).
bool is_geometric_vertex(const std::vector<RationalVector>& points, std::size_t i);

// True iff [points_i, points_j] is an edge: some functional is equal on i, j and at
// least 1 larger there than on every other point. With no other point the segment is
// the whole polytope, an improper face, hence not an edge.
bool is_geometric_edge(const std::vector<RationalVector>& points, std::size_t i,
                       std::size_t j);

struct OracleResult {
    int n = 0;
    std::vector<DirectedArc> generators;           // index-aligned with the embedding
    std::vector<std::pair<int, int>> edge_pairs;   // geometric edges, generator indices
    long long geometric_edge_count = 0;
    long long combinatorial_edge_count = 0;
    bool combinatorial_match = false;
    // Vertex pairs where the geometric and combinatorial verdicts differ.
    std::vector<std::pair<int, int>> mismatches;
};

// Full exact edge enumeration plus comparison against the combinatorial rule.
// Rational LPs over all C(2m,2) pairs get expensive quickly, so n is capped at 7
// unless allow_large is set.
OracleResult enumerate_edges(const Graph& g, bool allow_large = false);

enum class ExhaustiveModel {
    polytope_combinatorial,
    triangulation_combinatorial,  // identity arc order; the total is order-invariant
    polytope_oracle,
};

// Exact expected edge count: sum of p^|S| q^(C(n,2)-|S|) K(S) over all arc sets S.
// Degenerate p in {0, 1} is allowed and weights the empty/complete graph only.
// Capped at n <= 5 (2^10 graphs) unless allow_large is set.
Rational exhaustive_expectation(int n, const Rational& p, ExhaustiveModel model,
                                bool allow_large = false);

}  // namespace seplab
