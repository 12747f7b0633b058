#include "seplab/tri_edges.hpp"

#include <algorithm>
#include <numeric>

namespace seplab {

ArcOrder ArcOrder::identity(int n) {
    std::vector<int> ranks(arc_pair_count(n));
    std::iota(ranks.begin(), ranks.end(), 0);
    return ArcOrder(n, std::move(ranks));
}

ArcOrder ArcOrder::from_ranks(int n, std::vector<int> ranks) {
    if (static_cast<int>(ranks.size()) != arc_pair_count(n))
        throw std::invalid_argument("ArcOrder: need one rank per potential arc");
    std::vector<char> seen(ranks.size(), 0);
    for (int r : ranks) {
        if (r < 0 || r >= static_cast<int>(ranks.size()) || seen[r])
            throw std::invalid_argument("ArcOrder: ranks must form a permutation");
        seen[r] = 1;
    }
    return ArcOrder(n, std::move(ranks));
}

ArcOrder ArcOrder::with_adjacent_ranks_swapped(int r) const {
    if (r < 0 || r + 1 >= static_cast<int>(ranks_.size()))
        throw std::invalid_argument("ArcOrder: rank out of range");
    std::vector<int> ranks = ranks_;
    for (int& x : ranks) {
        if (x == r)
            x = r + 1;
        else if (x == r + 1)
            x = r;
    }
    return ArcOrder(n_, std::move(ranks));
}

ArcOrder random_arc_order(int n, std::uint64_t seed) {
    const int m = arc_pair_count(n);
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    SplitMix64 rng(derive_stream(seed, StreamPurpose::arc_order, 0));
    for (int i = m - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
    // perm maps rank -> arc; invert to arc -> rank.
    std::vector<int> ranks(m);
    for (int r = 0; r < m; ++r) ranks[perm[r]] = r;
    return ArcOrder::from_ranks(n, std::move(ranks));
}

namespace {

void require_present(const Graph& g, const DirectedArcPair& pair) {
    if (!g.has_arc(pair.first().arc()) || !g.has_arc(pair.second().arc()))
        throw std::invalid_argument("triangulation edge test: both arcs must be present");
}

struct OppositeAtShared {
    int u1, v, u2;
};

bool shared_opposite(const DirectedArc& x, const DirectedArc& y, OppositeAtShared* out) {
    if (x.head == y.tail) {
        *out = {x.tail, x.head, y.head};
        return true;
    }
    if (y.head == x.tail) {
        *out = {y.tail, y.head, x.head};
        return true;
    }
    return false;
}

}  // namespace

bool is_tri_edge(const Graph& g, const ArcOrder& order, const DirectedArcPair& pair) {
    require_present(g, pair);
    const DirectedArc x = pair.first(), y = pair.second();
    if (!pair.adjacent()) {
        // The only candidate 4-cycle through (a->b, c->d) is a->b->c->d->a.
        const int a = x.tail, b = x.head, c = y.tail, d = y.head;
        if (!(g.has_arc(b, c) && g.has_arc(d, a))) return true;
        const int rp = std::min(order.rank(a, b), order.rank(c, d));
        return rp < std::min(order.rank(b, c), order.rank(d, a));
    }
    OppositeAtShared o{};
    if (!shared_opposite(x, y, &o)) return true;  // same direction: no shared cycle
    if (g.has_arc(o.u1, o.u2)) return false;      // directed 3-cycle, order irrelevant
    // One 4-cycle per common neighbour w of u1, u2 besides v; the pair must carry the
    // minimal rank in each.
    const int rp = std::min(order.rank(o.u1, o.v), order.rank(o.v, o.u2));
    const std::uint64_t* r1 = g.row(o.u1);
    const std::uint64_t* r2 = g.row(o.u2);
    for (int w = 0; w < g.words_per_row(); ++w) {
        std::uint64_t both = r1[w] & r2[w];
        while (both) {
            const int node = w * 64 + std::countr_zero(both);
            both &= both - 1;
            if (node == o.v) continue;
            if (std::min(order.rank(o.u1, node), order.rank(o.u2, node)) < rp) return false;
        }
    }
    return true;
}

bool is_tri_edge_naive(const Graph& g, const ArcOrder& order, const DirectedArcPair& pair) {
    require_present(g, pair);
    const DirectedArc x = pair.first(), y = pair.second();
    const int n = g.node_count();
    for (int w = 0; w < n; ++w) {
        if (w == x.tail || w == x.head) continue;
        const int cyc[3] = {x.tail, x.head, w};
        bool ok = true, hits_y = false;
        for (int i = 0; i < 3; ++i) {
            const int a = cyc[i], b = cyc[(i + 1) % 3];
            if (!g.has_arc(a, b)) {
                ok = false;
                break;
            }
            if (DirectedArc(a, b) == y) hits_y = true;
        }
        if (ok && hits_y) return false;
    }
    for (int w1 = 0; w1 < n; ++w1) {
        for (int w2 = 0; w2 < n; ++w2) {
            if (w1 == w2 || w1 == x.tail || w1 == x.head || w2 == x.tail || w2 == x.head)
                continue;
            const int cyc[4] = {x.tail, x.head, w1, w2};
            bool ok = true, hits_y = false;
            int min_rank = arc_pair_count(n);
            for (int i = 0; i < 4; ++i) {
                const int a = cyc[i], b = cyc[(i + 1) % 4];
                if (!g.has_arc(a, b)) {
                    ok = false;
                    break;
                }
                if (DirectedArc(a, b) == y) hits_y = true;
                min_rank = std::min(min_rank, order.rank(a, b));
            }
            if (!ok || !hits_y) continue;
            if (min_rank != std::min(order.rank(x.arc()), order.rank(y.arc()))) return false;
        }
    }
    return true;
}

TriEdgeReport count_tri_edges(const Graph& g, const ArcOrder& order) {
    TriEdgeReport report;
    report.origin_edges = 2LL * g.arc_count();
    const std::vector<Arc> arcs = g.arcs();
    const std::size_t m = arcs.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const Arc a = arcs[i], b = arcs[j];
            const bool share = a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
            if (!share) {
                const int rp = std::min(order.rank(a), order.rank(b));
                // Same two orientation classes as the polytope count.
                if (!(g.has_arc(a.v, b.u) && g.has_arc(b.v, a.u)) ||
                    rp < std::min(order.rank(a.v, b.u), order.rank(b.v, a.u)))
                    report.pair_edges += 2;
                if (!(g.has_arc(a.v, b.v) && g.has_arc(b.u, a.u)) ||
                    rp < std::min(order.rank(a.v, b.v), order.rank(b.u, a.u)))
                    report.pair_edges += 2;
            } else {
                report.pair_edges += 2;  // same direction at the shared node
                int v, u1, u2;
                if (a.u == b.u) {
                    v = a.u; u1 = a.v; u2 = b.v;
                } else if (a.u == b.v) {
                    v = a.u; u1 = a.v; u2 = b.u;
                } else if (a.v == b.u) {
                    v = a.v; u1 = a.u; u2 = b.v;
                } else {
                    v = a.v; u1 = a.u; u2 = b.u;
                }
                if (!g.has_arc(u1, u2)) {
                    const int rp = std::min(order.rank(u1, v), order.rank(v, u2));
                    bool minimal_everywhere = true;
                    const std::uint64_t* r1 = g.row(u1);
                    const std::uint64_t* r2 = g.row(u2);
                    for (int w = 0; w < g.words_per_row() && minimal_everywhere; ++w) {
                        std::uint64_t both = r1[w] & r2[w];
                        while (both) {
                            const int node = w * 64 + std::countr_zero(both);
                            both &= both - 1;
                            if (node == v) continue;
                            if (std::min(order.rank(u1, node), order.rank(u2, node)) < rp) {
                                minimal_everywhere = false;
                                break;
                            }
                        }
                    }
                    if (minimal_everywhere) report.pair_edges += 2;
                }
            }
        }
    }
    report.total = report.origin_edges + report.pair_edges;
    return report;
}

}  // namespace seplab
