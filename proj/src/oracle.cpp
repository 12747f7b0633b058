#include "seplab/oracle.hpp"

#include <algorithm>

#include "seplab/sep_edges.hpp"
#include "seplab/tri_edges.hpp"

namespace seplab {

namespace {

// Feasibility of { eq_lhs[r] . c == eq_rhs[r], ge_lhs[r] . c >= ge_rhs[r] } over free
// rational c of dimension dim. Phase-I simplex on the standard form with c split into
// a difference of nonnegative parts; Bland's rule on every column guarantees
// termination, and exact arithmetic makes the verdict a certificate.
class FeasibilitySolver {
public:
    explicit FeasibilitySolver(int dim) : dim_(dim) {}

    void add_equality(const RationalVector& lhs, const Rational& rhs) {
        eq_lhs_.push_back(lhs);
        eq_rhs_.push_back(rhs);
    }
    void add_at_least(const RationalVector& lhs, const Rational& rhs) {
        ge_lhs_.push_back(lhs);
        ge_rhs_.push_back(rhs);
    }

    bool feasible() const {
        const int n_eq = static_cast<int>(eq_lhs_.size());
        const int n_ge = static_cast<int>(ge_lhs_.size());
        const int rows = n_eq + n_ge;
        if (rows == 0) return true;
        const int n_struct = 2 * dim_ + n_ge;           // c+ parts, c- parts, slacks
        const int cols = n_struct + rows;               // plus one artificial per row
        std::vector<std::vector<Rational>> t(
            static_cast<std::size_t>(rows) + 1,
            std::vector<Rational>(static_cast<std::size_t>(cols) + 1, Rational(0)));
        auto fill_row = [&](int r, const RationalVector& lhs, const Rational& rhs,
                            int slack) {
            for (int d = 0; d < dim_; ++d) {
                t[r][d] = lhs[static_cast<std::size_t>(d)];
                t[r][dim_ + d] = -lhs[static_cast<std::size_t>(d)];
            }
            if (slack >= 0) t[r][2 * dim_ + slack] = Rational(-1);
            t[r][cols] = rhs;
            if (t[r][cols] < 0)
                for (int j = 0; j <= cols; ++j) t[r][j] = -t[r][j];
            t[r][n_struct + r] = Rational(1);
        };
        for (int r = 0; r < n_eq; ++r) fill_row(r, eq_lhs_[r], eq_rhs_[r], -1);
        for (int r = 0; r < n_ge; ++r) fill_row(n_eq + r, ge_lhs_[r], ge_rhs_[r], r);

        std::vector<int> basis(rows);
        for (int r = 0; r < rows; ++r) basis[r] = n_struct + r;
        // Phase-I objective row: reduced costs of min(sum of artificials) with the
        // artificial basis; entry cols holds minus the current objective value.
        std::vector<Rational>& obj = t[rows];
        for (int j = 0; j <= cols; ++j) {
            Rational s(0);
            for (int r = 0; r < rows; ++r) s += t[r][j];
            obj[j] = (j >= n_struct && j < cols) ? Rational(1) - s : -s;
        }

        for (;;) {
            int enter = -1;
            for (int j = 0; j < cols; ++j)
                if (obj[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter < 0) break;
            int leave = -1;
            Rational best_num, best_den;
            for (int r = 0; r < rows; ++r) {
                if (t[r][enter] <= 0) continue;
                // Compare rhs[r]/t[r][enter] without forming quotients explicitly.
                if (leave < 0 || t[r][cols] * best_den < best_num * t[r][enter] ||
                    (t[r][cols] * best_den == best_num * t[r][enter] &&
                     basis[r] < basis[leave])) {
                    leave = r;
                    best_num = t[r][cols];
                    best_den = t[r][enter];
                }
            }
            if (leave < 0) throw std::logic_error("phase-I simplex: unbounded objective");
            const Rational pivot = t[leave][enter];
            for (int j = 0; j <= cols; ++j) t[leave][j] /= pivot;
            for (int r = 0; r <= rows; ++r) {
                if (r == leave || t[r][enter] == 0) continue;
                const Rational factor = t[r][enter];
                for (int j = 0; j <= cols; ++j) t[r][j] -= factor * t[leave][j];
            }
            basis[leave] = enter;
        }
        return obj[cols] == 0;  // objective value is -obj[cols]
    }

private:
    int dim_;
    std::vector<RationalVector> eq_lhs_;
    std::vector<Rational> eq_rhs_;
    std::vector<RationalVector> ge_lhs_;
    std::vector<Rational> ge_rhs_;
};

RationalVector difference(const RationalVector& a, const RationalVector& b) {
    RationalVector out(a.size());
    for (std::size_t d = 0; d < a.size(); ++d) out[d] = a[d] - b[d];
    return out;
}

}  // namespace

std::vector<RationalVector> embed_vertices(const Graph& g) {
    const int n = g.node_count();
    std::vector<RationalVector> points;
    points.reserve(2 * static_cast<std::size_t>(g.arc_count()));
    for (const Arc& a : g.arcs()) {
        RationalVector fwd(static_cast<std::size_t>(n), Rational(0));
        fwd[static_cast<std::size_t>(a.u)] = 1;
        fwd[static_cast<std::size_t>(a.v)] = -1;
        RationalVector bwd(static_cast<std::size_t>(n), Rational(0));
        bwd[static_cast<std::size_t>(a.u)] = -1;
        bwd[static_cast<std::size_t>(a.v)] = 1;
        points.push_back(std::move(fwd));
        points.push_back(std::move(bwd));
    }
    return points;
}

bool is_geometric_vertex(const std::vector<RationalVector>& points, std::size_t i) {
    if (i >= points.size()) throw std::out_of_range("is_geometric_vertex: index");
    const int dim = static_cast<int>(points[i].size());
    FeasibilitySolver lp(dim);
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (k == i) continue;
        lp.add_at_least(difference(points[i], points[k]), Rational(1));
    }
    return lp.feasible();
}

bool is_geometric_edge(const std::vector<RationalVector>& points, std::size_t i,
                       std::size_t j) {
    if (i >= points.size() || j >= points.size() || i == j)
        throw std::out_of_range("is_geometric_edge: indices");
    if (points.size() <= 2) return false;  // segment: improper face
    const int dim = static_cast<int>(points[i].size());
    FeasibilitySolver lp(dim);
    lp.add_equality(difference(points[i], points[j]), Rational(0));
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (k == i || k == j) continue;
        lp.add_at_least(difference(points[i], points[k]), Rational(1));
    }
    return lp.feasible();
}

OracleResult enumerate_edges(const Graph& g, bool allow_large) {
    if (g.node_count() > 7 && !allow_large)
        throw std::invalid_argument(
            "enumerate_edges: n > 7 needs allow_large (exact LPs get slow)");
    OracleResult result;
    result.n = g.node_count();
    for (const Arc& a : g.arcs()) {
        result.generators.emplace_back(a.u, a.v);
        result.generators.emplace_back(a.v, a.u);
    }
    const std::vector<RationalVector> points = embed_vertices(g);
    const int count = static_cast<int>(points.size());
    for (int i = 0; i < count; ++i) {
        for (int j = i + 1; j < count; ++j) {
            const bool geometric = is_geometric_edge(points, i, j);
            bool combinatorial = false;
            if (!(j == i + 1 && (i & 1) == 0)) {  // skip the antipodal pairing 2k, 2k+1
                combinatorial = is_edge_fast(
                    g, DirectedArcPair(result.generators[static_cast<std::size_t>(i)],
                                       result.generators[static_cast<std::size_t>(j)]));
            }
            if (geometric) {
                result.edge_pairs.emplace_back(i, j);
                ++result.geometric_edge_count;
            }
            if (combinatorial) ++result.combinatorial_edge_count;
            if (geometric != combinatorial) result.mismatches.emplace_back(i, j);
        }
    }
    result.combinatorial_match = result.mismatches.empty();
    return result;
}

Rational exhaustive_expectation(int n, const Rational& p, ExhaustiveModel model,
                                bool allow_large) {
    if (p < 0 || p > 1)
        throw std::invalid_argument("exhaustive_expectation: p must lie in [0, 1]");
    if (n < 1) throw std::invalid_argument("exhaustive_expectation: n must be >= 1");
    if (n > 5 && !allow_large)
        throw std::invalid_argument(
            "exhaustive_expectation: n > 5 needs allow_large (2^C(n,2) graphs)");
    const int m_all = arc_pair_count(n);
    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(m_all));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) arcs.emplace_back(u, v);
    const ArcOrder order = ArcOrder::identity(n);
    const Rational q = 1 - p;
    Rational total(0);
    for (std::uint64_t mask = 0; mask < (1ULL << m_all); ++mask) {
        Graph g(n);
        int present = 0;
        for (int b = 0; b < m_all; ++b)
            if (mask >> b & 1) {
                g.set(arcs[static_cast<std::size_t>(b)].u, arcs[static_cast<std::size_t>(b)].v,
                      true);
                ++present;
            }
        long long k = 0;
        switch (model) {
            case ExhaustiveModel::polytope_combinatorial:
                k = count_edges(g).total;
                break;
            case ExhaustiveModel::triangulation_combinatorial:
                k = count_tri_edges(g, order).total;
                break;
            case ExhaustiveModel::polytope_oracle:
                k = enumerate_edges(g, allow_large).geometric_edge_count;
                break;
        }
        if (k == 0) continue;
        total += rational_pow(p, static_cast<unsigned long>(present)) *
                 rational_pow(q, static_cast<unsigned long>(m_all - present)) * k;
    }
    return total;
}

}  // namespace seplab
