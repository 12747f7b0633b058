#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "seplab/graph.hpp"

using namespace seplab;

TEST_CASE("arc_index enumerates all node pairs exactly once") {
    const int n = 7;
    std::set<int> seen;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) seen.insert(arc_index(n, u, v));
    CHECK(static_cast<int>(seen.size()) == arc_pair_count(n));
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == arc_pair_count(n) - 1);
}

TEST_CASE("Arc and DirectedArc validate and normalise") {
    CHECK(Arc(3, 1).u == 1);
    CHECK(Arc(3, 1).v == 3);
    CHECK_THROWS_AS(Arc(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(DirectedArc(2, 2), std::invalid_argument);
    CHECK(DirectedArc(3, 1).reversed() == DirectedArc(1, 3));
    CHECK(DirectedArc(3, 1).arc() == Arc(1, 3));
}

TEST_CASE("Graph mutation is copy-based and keeps adjacency symmetric") {
    Graph g(5);
    g.set(0, 3, true);
    g.set(4, 1, true);
    CHECK(g.arc_count() == 2);
    CHECK(g.has_arc(3, 0));
    CHECK(g.has_arc(1, 4));
    CHECK_FALSE(g.has_arc(0, 1));
    CHECK(g.degree(0) == 1);

    const Graph h = g.with_arc_state(Arc(0, 1), true);
    CHECK(h.arc_count() == 3);
    CHECK(g.arc_count() == 2);  // the original is untouched
    CHECK(h.toggle_arc(Arc(0, 1)) == g.with_arc_state(Arc(0, 3), true));

    CHECK_THROWS_AS(g.has_arc(0, 5), std::out_of_range);
    CHECK_THROWS_AS((void)Graph(0), std::invalid_argument);
}

TEST_CASE("Graph::arcs lists arcs in lexicographic order") {
    Graph g(4);
    g.set(2, 3, true);
    g.set(0, 1, true);
    const std::vector<Arc> arcs = g.arcs();
    REQUIRE(arcs.size() == 2);
    CHECK(arcs[0] == Arc(0, 1));
    CHECK(arcs[1] == Arc(2, 3));
}

TEST_CASE("erdos_renyi is a pure function of seed and replicate") {
    const SimParams params(20, 0.37, 99);
    const Graph a = erdos_renyi(params, 5);
    const Graph b = erdos_renyi(params, 5);
    const Graph c = erdos_renyi(params, 6);
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("erdos_renyi arc count concentrates around C(n,2) p") {
    const int n = 100;
    const double p = 0.3;
    const SimParams params(n, p, 4242);
    const int reps = 50;
    double total = 0;
    for (int i = 0; i < reps; ++i) total += erdos_renyi(params, static_cast<std::uint64_t>(i)).arc_count();
    const double mean = total / reps;
    const double expected = arc_pair_count(n) * p;
    const double se = std::sqrt(arc_pair_count(n) * p * (1 - p) / reps);
    CHECK(std::abs(mean - expected) <= 4 * se);
}

TEST_CASE("SimParams rejects degenerate probabilities") {
    CHECK_THROWS_AS(SimParams(5, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(SimParams(5, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(SimParams(0, 0.5, 1), std::invalid_argument);
    const SimParams ok(5, 0.25, 1);
    CHECK(ok.q == doctest::Approx(0.75));
}

namespace {

int brute_common_neighbors(const Graph& g, int u, int v, int excluded) {
    int count = 0;
    for (int w = 0; w < g.node_count(); ++w) {
        if (w == u || w == v || w == excluded) continue;
        if (g.has_arc(u, w) && g.has_arc(v, w)) ++count;
    }
    return count;
}

long long brute_path_count(const Graph& g, int s, int t, int len) {
    const int n = g.node_count();
    long long total = 0;
    if (len == 2) {
        for (int w = 0; w < n; ++w)
            if (w != s && w != t && g.has_arc(s, w) && g.has_arc(w, t)) ++total;
        return total;
    }
    for (int w1 = 0; w1 < n; ++w1) {
        if (w1 == s || w1 == t) continue;
        for (int w2 = 0; w2 < n; ++w2) {
            if (w2 == s || w2 == t || w2 == w1) continue;
            if (g.has_arc(s, w1) && g.has_arc(w1, w2) && g.has_arc(w2, t)) ++total;
        }
    }
    return total;
}

}  // namespace

TEST_CASE("common_neighbor_count and path_count match brute force") {
    const SimParams params(9, 0.5, 777);
    for (int rep = 0; rep < 25; ++rep) {
        const Graph g = erdos_renyi(params, static_cast<std::uint64_t>(rep));
        for (int u = 0; u < 9; ++u) {
            for (int v = 0; v < 9; ++v) {
                if (u == v) continue;
                CHECK(common_neighbor_count(g, u, v) == brute_common_neighbors(g, u, v, -1));
                const int ex = (u + v) % 9;
                CHECK(common_neighbor_count(g, u, v, ex) ==
                      brute_common_neighbors(g, u, v, ex == u || ex == v ? -1 : ex));
                CHECK(path_count(g, u, v, 2) == brute_path_count(g, u, v, 2));
                CHECK(path_count(g, u, v, 3) == brute_path_count(g, u, v, 3));
            }
        }
    }
}

TEST_CASE("path_count on K4 and validation") {
    Graph k4(4);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) k4.set(u, v, true);
    CHECK(path_count(k4, 0, 1, 2) == 2);
    CHECK(path_count(k4, 0, 1, 3) == 2);
    CHECK_THROWS_AS(path_count(k4, 1, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(path_count(k4, 0, 1, 4), std::invalid_argument);
}

TEST_CASE("edge list round trip") {
    Graph g(6);
    g.set(0, 5, true);
    g.set(2, 3, true);
    std::ostringstream out;
    to_edge_list(g, out);
    std::istringstream in(out.str());
    CHECK(from_edge_list(in) == g);
}

TEST_CASE("edge list parser handles comments, duplicates, and errors") {
    SUBCASE("comments and blank lines") {
        std::istringstream in("# header comment\n\nn=3\n1 2 # trailing comment\n\n2 3\n");
        const Graph g = from_edge_list(in);
        CHECK(g.arc_count() == 2);
        CHECK(g.has_arc(0, 1));
        CHECK(g.has_arc(1, 2));
    }
    SUBCASE("duplicate arcs warn but stay idempotent") {
        std::istringstream in("n=3\n1 2\n2 1\n");
        std::vector<std::string> warnings;
        const Graph g = from_edge_list(in, &warnings);
        CHECK(g.arc_count() == 1);
        REQUIRE(warnings.size() == 1);
        CHECK(warnings[0].find("duplicate") != std::string::npos);
    }
    SUBCASE("missing header") {
        std::istringstream in("1 2\n");
        CHECK_THROWS_AS(from_edge_list(in), std::runtime_error);
    }
    SUBCASE("loop arc") {
        std::istringstream in("n=3\n2 2\n");
        CHECK_THROWS_AS(from_edge_list(in), std::runtime_error);
    }
    SUBCASE("out of range node") {
        std::istringstream in("n=3\n1 4\n");
        CHECK_THROWS_AS(from_edge_list(in), std::runtime_error);
    }
    SUBCASE("trailing tokens") {
        std::istringstream in("n=3\n1 2 3\n");
        CHECK_THROWS_AS(from_edge_list(in), std::runtime_error);
    }
}

TEST_CASE("derive_stream separates purposes and replicates") {
    const std::uint64_t a = derive_stream(1, StreamPurpose::graph_sample, 0);
    const std::uint64_t b = derive_stream(1, StreamPurpose::arc_order, 0);
    const std::uint64_t c = derive_stream(1, StreamPurpose::graph_sample, 1);
    CHECK(a != b);
    CHECK(a != c);
    CHECK(derive_stream(1, StreamPurpose::graph_sample, 0) == a);
}

TEST_CASE("SplitMix64 next_unit stays in [0, 1) and next_below is in range") {
    SplitMix64 rng(123);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(rng.next_below(7) < 7);
    }
}
