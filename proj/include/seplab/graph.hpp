#pragma once

#include <cassert>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "seplab/rng.hpp"

namespace seplab {

// Which random polytope statistic is being counted.
enum class Model { polytope, triangulation };

std::string to_string(Model m);
Model model_from_string(const std::string& s);

// Undirected arc {u, v}, 0-indexed internally. Normalised so u < v.
struct Arc {
    int u;
    int v;

    Arc(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {
        if (a == b) throw std::invalid_argument("Arc: loops are not allowed");
        if (a < 0 || b < 0) throw std::invalid_argument("Arc: negative node");
    }
    friend bool operator==(const Arc&, const Arc&) = default;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Directed arc tail -> head. The two orientations of one undirected arc form the
// antipodal vertex pair of the polytope.
struct DirectedArc {
    int tail;
    int head;

    DirectedArc(int t, int h) : tail(t), head(h) {
        if (t == h) throw std::invalid_argument("DirectedArc: loops are not allowed");
        if (t < 0 || h < 0) throw std::invalid_argument("DirectedArc: negative node");
    }
    Arc arc() const { return Arc(tail, head); }
    DirectedArc reversed() const { return DirectedArc(head, tail); }
    friend bool operator==(const DirectedArc&, const DirectedArc&) = default;
    friend auto operator<=>(const DirectedArc&, const DirectedArc&) = default;
};

// Triangular index of arc {u, v} (u < v) among all C(n,2) node pairs, row-major.
inline int arc_index(int n, int u, int v) {
    assert(0 <= u && u < v && v < n);
    return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

inline int arc_pair_count(int n) { return n * (n - 1) / 2; }

// Sampling parameters for G(n, p). q is stored explicitly so every consumer uses
// exactly 1 - p rather than re-deriving it.
struct SimParams {
    int n;
    double p;
    double q;
    std::uint64_t seed;

    SimParams(int n_, double p_, std::uint64_t seed_) : n(n_), p(p_), q(1.0 - p_), seed(seed_) {
        if (n < 1) throw std::invalid_argument("SimParams: n must be >= 1");
        if (!(p > 0.0 && p < 1.0))
            throw std::invalid_argument("SimParams: p must lie strictly inside (0, 1)");
    }
};

// Simple undirected graph on n nodes, adjacency stored as bit-packed rows.
// Value semantics throughout: mutation always returns a modified copy, so cached
// per-replicate graphs can be shared across threads without locks.
class Graph {
public:
    explicit Graph(int n)
        : n_(n), words_((n + 63) / 64), m_(0), bits_(static_cast<std::size_t>(n) * words_, 0) {
        if (n < 1) throw std::invalid_argument("Graph: n must be >= 1");
    }

    int node_count() const { return n_; }
    int arc_count() const { return m_; }
    int words_per_row() const { return words_; }
    const std::uint64_t* row(int u) const { return bits_.data() + static_cast<std::size_t>(u) * words_; }

    bool has_arc(int u, int v) const {
        check_node(u);
        check_node(v);
        if (u == v) return false;
        return (row(u)[v >> 6] >> (v & 63)) & 1u;
    }
    bool has_arc(const Arc& a) const { return has_arc(a.u, a.v); }

    // Copy with the arc forced present/absent.
    Graph with_arc_state(const Arc& a, bool present) const {
        Graph g(*this);
        g.set(a.u, a.v, present);
        return g;
    }
    // Copy with the arc's presence flipped.
    Graph toggle_arc(const Arc& a) const { return with_arc_state(a, !has_arc(a)); }

    int degree(int u) const;
    std::vector<Arc> arcs() const;

    friend bool operator==(const Graph&, const Graph&) = default;

    // Only erdos_renyi and the parser build graphs in place.
    void set(int u, int v, bool present);

private:
    void check_node(int u) const {
        if (u < 0 || u >= n_) throw std::out_of_range("Graph: node index out of range");
    }

    int n_;
    int words_;
    int m_;
    std::vector<std::uint64_t> bits_;
};

// One G(n, p) draw from an explicit stream: the C(n,2) potential arcs consume one
// uniform each in lexicographic order.
Graph sample_erdos_renyi(int n, double p, SplitMix64& rng);

// One G(n, p) draw whose stream depends only on (params.seed, replicate_index).
Graph erdos_renyi(const SimParams& params, std::uint64_t replicate_index);

// Number of common neighbours of u and v, optionally ignoring one node.
// Single AND+popcount pass over the packed rows.
int common_neighbor_count(const Graph& g, int u, int v, int excluded = -1);

// Number of s-t paths with `len` arcs (len 2 or 3) through pairwise distinct nodes.
long long path_count(const Graph& g, int s, int t, int len);

// Text format: header "n=<count>", then one "u v" line per arc, 1-indexed.
// '#' starts a comment; blank lines are skipped. A repeated arc is idempotent and
// reported through `warnings`; loops and out-of-range nodes are errors.
Graph from_edge_list(std::istream& in, std::vector<std::string>* warnings = nullptr);
void to_edge_list(const Graph& g, std::ostream& out);

}  // namespace seplab
