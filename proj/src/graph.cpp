#include "seplab/graph.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <sstream>

namespace seplab {

std::string to_string(Model m) {
    return m == Model::polytope ? "polytope" : "triangulation";
}

Model model_from_string(const std::string& s) {
    if (s == "polytope") return Model::polytope;
    if (s == "triangulation") return Model::triangulation;
    throw std::invalid_argument("unknown model: " + s);
}

void Graph::set(int u, int v, bool present) {
    check_node(u);
    check_node(v);
    if (u == v) throw std::invalid_argument("Graph: loops are not allowed");
    const bool had = has_arc(u, v);
    if (had == present) return;
    const std::uint64_t mu = 1ULL << (v & 63);
    const std::uint64_t mv = 1ULL << (u & 63);
    std::uint64_t* ru = bits_.data() + static_cast<std::size_t>(u) * words_;
    std::uint64_t* rv = bits_.data() + static_cast<std::size_t>(v) * words_;
    if (present) {
        ru[v >> 6] |= mu;
        rv[u >> 6] |= mv;
        ++m_;
    } else {
        ru[v >> 6] &= ~mu;
        rv[u >> 6] &= ~mv;
        --m_;
    }
}

int Graph::degree(int u) const {
    check_node(u);
    int d = 0;
    const std::uint64_t* r = row(u);
    for (int w = 0; w < words_; ++w) d += std::popcount(r[w]);
    return d;
}

std::vector<Arc> Graph::arcs() const {
    std::vector<Arc> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (has_arc(u, v)) out.emplace_back(u, v);
    return out;
}

Graph sample_erdos_renyi(int n, double p, SplitMix64& rng) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_unit() < p) g.set(u, v, true);
    return g;
}

Graph erdos_renyi(const SimParams& params, std::uint64_t replicate_index) {
    SplitMix64 rng(derive_stream(params.seed, StreamPurpose::graph_sample, replicate_index));
    Graph g = sample_erdos_renyi(params.n, params.p, rng);
#ifndef NDEBUG
    for (int u = 0; u < params.n; ++u) {
        assert(!g.has_arc(u, u));
        for (int v = u + 1; v < params.n; ++v) assert(g.has_arc(u, v) == g.has_arc(v, u));
    }
#endif
    return g;
}

int common_neighbor_count(const Graph& g, int u, int v, int excluded) {
    const std::uint64_t* ru = g.row(u);
    const std::uint64_t* rv = g.row(v);
    int count = 0;
    for (int w = 0; w < g.words_per_row(); ++w) count += std::popcount(ru[w] & rv[w]);
    // Rows never contain their own node, so u and v cannot be miscounted.
    if (excluded >= 0 && excluded != u && excluded != v && g.has_arc(u, excluded) &&
        g.has_arc(v, excluded))
        --count;
    return count;
}

long long path_count(const Graph& g, int s, int t, int len) {
    if (s == t) throw std::invalid_argument("path_count: endpoints must differ");
    if (len == 2) return common_neighbor_count(g, s, t);
    if (len != 3) throw std::invalid_argument("path_count: len must be 2 or 3");
    // Interior nodes are distinct from each other and from both endpoints; the
    // direct arc {s, t} itself is never a step of such a path.
    long long total = 0;
    const int n = g.node_count();
    for (int w1 = 0; w1 < n; ++w1) {
        if (w1 == s || w1 == t || !g.has_arc(s, w1)) continue;
        total += common_neighbor_count(g, w1, t, s);
        // common_neighbor_count(w1, t) counts w2 adjacent to both; w2 == s is excluded
        // above, w2 == w1 and w2 == t are impossible.
    }
    return total;
}

Graph from_edge_list(std::istream& in, std::vector<std::string>* warnings) {
    std::string line;
    int n = -1;
    int lineno = 0;
    Graph g(1);
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (!have_header) {
            std::string token;
            if (!(ls >> token)) continue;  // blank before header
            if (token.rfind("n=", 0) != 0)
                throw std::runtime_error("edge list line " + std::to_string(lineno) +
                                         ": expected header n=<count>");
            try {
                n = std::stoi(token.substr(2));
            } catch (const std::exception&) {
                throw std::runtime_error("edge list line " + std::to_string(lineno) +
                                         ": malformed node count");
            }
            if (n < 1)
                throw std::runtime_error("edge list header: node count must be >= 1");
            std::string extra;
            if (ls >> extra)
                throw std::runtime_error("edge list line " + std::to_string(lineno) +
                                         ": trailing tokens after header");
            g = Graph(n);
            have_header = true;
            continue;
        }
        long u, v;
        if (!(ls >> u)) continue;  // blank or comment-only line
        std::string extra;
        if (!(ls >> v) || (ls >> extra))
            throw std::runtime_error("edge list line " + std::to_string(lineno) +
                                     ": expected exactly two node ids");
        if (u < 1 || u > n || v < 1 || v > n)
            throw std::runtime_error("edge list line " + std::to_string(lineno) +
                                     ": node id out of range 1.." + std::to_string(n));
        if (u == v)
            throw std::runtime_error("edge list line " + std::to_string(lineno) +
                                     ": loop arcs are not allowed");
        const int iu = static_cast<int>(u) - 1;
        const int iv = static_cast<int>(v) - 1;
        if (g.has_arc(iu, iv)) {
            if (warnings)
                warnings->push_back("line " + std::to_string(lineno) + ": duplicate arc " +
                                    std::to_string(u) + " " + std::to_string(v) + " ignored");
            continue;
        }
        g.set(iu, iv, true);
    }
    if (!have_header) throw std::runtime_error("edge list: missing n=<count> header");
    return g;
}

void to_edge_list(const Graph& g, std::ostream& out) {
    out << "n=" << g.node_count() << '\n';
    for (const Arc& a : g.arcs()) out << a.u + 1 << ' ' << a.v + 1 << '\n';
}

}  // namespace seplab
