#include "seplab/stein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "seplab/parallel.hpp"
#include "seplab/sep_edges.hpp"

namespace seplab {

namespace {

long long count_for_model(const Graph& g, Model model, const ArcOrder* order) {
    if (model == Model::polytope) return count_edges(g).total;
    if (order == nullptr)
        throw std::invalid_argument("triangulation edge counts need an arc order");
    return count_tri_edges(g, *order).total;
}

void check_probability(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("gradient scaling needs p strictly inside (0, 1)");
}

}  // namespace

GradientSample discrete_gradient(const Graph& g, const Arc& e, Model model, double p,
                                 const ArcOrder* order) {
    check_probability(p);
    const Graph plus = g.with_arc_state(e, true);
    const Graph minus = g.with_arc_state(e, false);
    const long long delta =
        count_for_model(plus, model, order) - count_for_model(minus, model, order);
    // Neither path family can use the arc {e.u, e.v} itself, so both counts agree on
    // plus and minus.
    const long long w2 = path_count(plus, e.u, e.v, 2);
    const long long w3 = path_count(plus, e.u, e.v, 3);
    const double scale = std::sqrt(p * (1.0 - p));
    const double rhs = scale * (4.0 * plus.arc_count() + 2.0 * static_cast<double>(w2) +
                                6.0 * static_cast<double>(w3));
    return GradientSample{scale * static_cast<double>(delta), delta, rhs};
}

GradientSample second_gradient(const Graph& g, const Arc& e, const Arc& f, Model model,
                               double p, const ArcOrder* order) {
    check_probability(p);
    if (e == f) return GradientSample{};
    const Graph ep = g.with_arc_state(e, true);
    const Graph em = g.with_arc_state(e, false);
    const long long delta2 = count_for_model(ep.with_arc_state(f, true), model, order) -
                             count_for_model(ep.with_arc_state(f, false), model, order) -
                             count_for_model(em.with_arc_state(f, true), model, order) +
                             count_for_model(em.with_arc_state(f, false), model, order);
    int shared = -1, eu = -1, fu = -1;
    if (e.u == f.u) {
        shared = e.u, eu = e.v, fu = f.v;
    } else if (e.u == f.v) {
        shared = e.u, eu = e.v, fu = f.u;
    } else if (e.v == f.u) {
        shared = e.v, eu = e.u, fu = f.v;
    } else if (e.v == f.v) {
        shared = e.v, eu = e.u, fu = f.u;
    }
    const double pq = p * (1.0 - p);
    // The common-neighbour count below never looks at e or f themselves: the bound
    // must depend only on the coordinates outside the forced pair.
    const double rhs =
        shared < 0 ? 32.0 * pq
                   : pq * (10.0 * common_neighbor_count(g, eu, fu, shared) + 8.0);
    return GradientSample{pq * static_cast<double>(delta2), delta2, rhs};
}

namespace {

using NodePair = std::pair<int, int>;  // u < v

// Canonical encoding of an ordered arc tuple under relabelling of its span nodes and,
// when swap_first_two, exchange of the first two arcs. The minimum is taken over all
// span bijections onto {0..t-1}, so tuples are in the same class iff some node
// relabelling (plus the optional swap) maps one onto the other.
std::vector<int> canonical_key(const std::vector<NodePair>& tuple, bool swap_first_two) {
    std::vector<int> span;
    for (const auto& a : tuple) {
        span.push_back(a.first);
        span.push_back(a.second);
    }
    std::sort(span.begin(), span.end());
    span.erase(std::unique(span.begin(), span.end()), span.end());
    const int t = static_cast<int>(span.size());
    const int max_node = span.back();

    std::vector<std::vector<NodePair>> variants{tuple};
    if (swap_first_two && tuple.size() >= 2) {
        std::vector<NodePair> swapped = tuple;
        std::swap(swapped[0], swapped[1]);
        if (swapped != tuple) variants.push_back(std::move(swapped));
    }

    std::vector<int> label(static_cast<std::size_t>(max_node) + 1, -1);
    std::vector<int> perm(static_cast<std::size_t>(t));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    std::vector<int> enc;
    enc.reserve(tuple.size() * 2);
    do {
        for (int i = 0; i < t; ++i) label[static_cast<std::size_t>(span[i])] = perm[i];
        for (const auto& var : variants) {
            enc.clear();
            for (const auto& a : var) {
                int u = label[static_cast<std::size_t>(a.first)];
                int v = label[static_cast<std::size_t>(a.second)];
                if (u > v) std::swap(u, v);
                enc.push_back(u);
                enc.push_back(v);
            }
            if (best.empty() || enc < best) best = enc;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

struct ArcClass {
    std::vector<Arc> rep;    // representative tuple on nodes 0..span-1
    int span = 0;
    long long per_span = 0;  // ordered tuples over K_span whose nodes cover all of it
};

// All classes of ordered `len`-tuples of arcs under node relabelling (and first-two
// swap). Tuples are grouped by the labelled node count they span, so the number of
// tuples over K_n in one class is C(n, span) * per_span.
std::vector<ArcClass> enumerate_classes(int len, bool swap_first_two) {
    std::map<std::vector<int>, ArcClass> classes;
    for (int t = 2; t <= 2 * len; ++t) {
        std::vector<NodePair> arcs;
        for (int u = 0; u < t; ++u)
            for (int v = u + 1; v < t; ++v) arcs.emplace_back(u, v);
        std::vector<std::size_t> idx(static_cast<std::size_t>(len), 0);
        for (;;) {
            std::vector<NodePair> tuple;
            tuple.reserve(static_cast<std::size_t>(len));
            std::vector<bool> seen(static_cast<std::size_t>(t), false);
            for (std::size_t i : idx) {
                tuple.push_back(arcs[i]);
                seen[static_cast<std::size_t>(arcs[i].first)] = true;
                seen[static_cast<std::size_t>(arcs[i].second)] = true;
            }
            if (std::find(seen.begin(), seen.end(), false) == seen.end()) {
                const std::vector<int> key = canonical_key(tuple, swap_first_two);
                ArcClass& c = classes[key];
                if (c.per_span == 0) {
                    c.span = t;
                    for (std::size_t i = 0; i + 1 < key.size(); i += 2)
                        c.rep.emplace_back(key[i], key[i + 1]);
                }
                ++c.per_span;
            }
            std::size_t pos = 0;
            while (pos < idx.size() && ++idx[pos] == arcs.size()) idx[pos++] = 0;
            if (pos == idx.size()) break;
        }
    }
    std::vector<ArcClass> out;
    out.reserve(classes.size());
    for (auto& [key, c] : classes) out.push_back(std::move(c));
    return out;
}

const std::vector<ArcClass>& pair_classes() {
    static const std::vector<ArcClass> classes = enumerate_classes(2, true);
    return classes;
}

const std::vector<ArcClass>& triple_classes() {
    static const std::vector<ArcClass> classes = enumerate_classes(3, true);
    return classes;
}

long long choose_ll(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Memoised edge counts of one replicate graph with one or two arcs forced, keyed by
// the forced (arc, state) set. The arc order is shared by every forced evaluation of
// the replicate, otherwise second differences would not telescope.
class ForcedCounter {
public:
    ForcedCounter(const Graph& g, Model model, const ArcOrder* order)
        : g_(g), model_(model), order_(order) {}

    long long delta(const Arc& e) { return forced1(e, true) - forced1(e, false); }

    long long delta2(const Arc& e, const Arc& f) {
        return forced2(e, true, f, true) - forced2(e, true, f, false) -
               forced2(e, false, f, true) + forced2(e, false, f, false);
    }

private:
    std::uint64_t code(const Arc& a, bool s) const {
        return static_cast<std::uint64_t>(arc_index(g_.node_count(), a.u, a.v)) * 2 +
               (s ? 2 : 1);
    }

    long long forced1(const Arc& a, bool s) {
        const std::uint64_t key = code(a, s);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        const long long value = count_for_model(g_.with_arc_state(a, s), model_, order_);
        cache_.emplace(key, value);
        return value;
    }

    long long forced2(const Arc& a, bool sa, const Arc& b, bool sb) {
        std::uint64_t ca = code(a, sa), cb = code(b, sb);
        if (ca > cb) std::swap(ca, cb);
        const std::uint64_t key = (ca << 32) | cb;
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        const long long value =
            count_for_model(g_.with_arc_state(a, sa).with_arc_state(b, sb), model_, order_);
        cache_.emplace(key, value);
        return value;
    }

    const Graph& g_;
    Model model_;
    const ArcOrder* order_;
    std::unordered_map<std::uint64_t, long long> cache_;
};

double square(long long x) {
    const double d = static_cast<double>(x);
    return d * d;
}

enum PairPattern { pattern_equal = 0, pattern_share = 1, pattern_disjoint = 2 };

PairPattern pattern_of(const Arc& a, const Arc& b) {
    if (a == b) return pattern_equal;
    if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) return pattern_share;
    return pattern_disjoint;
}

}  // namespace

SteinTerms estimate_stein_terms(const SimParams& params, Model model,
                                std::int64_t replicates, std::int64_t pilot_replicates,
                                int threads) {
    if (replicates < 1) throw std::invalid_argument("stein estimate needs replicates >= 1");
    if (pilot_replicates < 2)
        throw std::invalid_argument("pilot standardization needs >= 2 replicates");

    SteinTerms out;
    out.replicates = replicates;
    out.pilot_replicates = pilot_replicates;
    const int n = params.n;

    // Pilot pass for the standardization constants, on its own stream purpose.
    std::vector<double> pilot(static_cast<std::size_t>(pilot_replicates));
    parallel_for_index(pilot_replicates, threads, [&](std::int64_t i) {
        SplitMix64 rng(derive_stream(params.seed, StreamPurpose::pilot_sample,
                                     static_cast<std::uint64_t>(i)));
        const Graph g = sample_erdos_renyi(n, params.p, rng);
        if (model == Model::polytope) {
            pilot[static_cast<std::size_t>(i)] = static_cast<double>(count_edges(g).total);
        } else {
            const ArcOrder order = random_arc_order(n, rng.next());
            pilot[static_cast<std::size_t>(i)] =
                static_cast<double>(count_tri_edges(g, order).total);
        }
    });
    long double mean = 0.0L, m2 = 0.0L;
    for (std::int64_t i = 0; i < pilot_replicates; ++i) {
        const long double x = pilot[static_cast<std::size_t>(i)];
        const long double d = x - mean;
        mean += d / static_cast<long double>(i + 1);
        m2 += d * (x - mean);
    }
    out.mu_hat = static_cast<double>(mean);
    out.sigma_hat =
        static_cast<double>(std::sqrt(m2 / static_cast<long double>(pilot_replicates - 1)));

    const auto& pairs = pair_classes();
    const auto& triples = triple_classes();

    // Class cardinalities over K_n, with the exact partition identity
    // sum C(n, span) * per_span == C(n,2)^len re-checked at runtime.
    std::vector<long long> pair_card(pairs.size()), triple_card(triples.size());
    for (std::size_t c = 0; c < pairs.size(); ++c)
        pair_card[c] = choose_ll(n, pairs[c].span) * pairs[c].per_span;
    for (std::size_t c = 0; c < triples.size(); ++c)
        triple_card[c] = choose_ll(n, triples[c].span) * triples[c].per_span;
    if (arc_pair_count(n) <= 1'000'000) {
        const unsigned __int128 m = static_cast<unsigned __int128>(arc_pair_count(n));
        unsigned __int128 s2 = 0, s3 = 0;
        for (long long c : pair_card) s2 += static_cast<unsigned __int128>(c);
        for (long long c : triple_card) s3 += static_cast<unsigned __int128>(c);
        if (s2 != m * m || s3 != m * m * m)
            throw std::logic_error("arc tuple classes do not partition the index set");
    }

    // Per-replicate raw moments, one column per estimated expectation. Columns:
    //   0..2                    first-difference products Dj^2 Dk^2 by pair pattern
    //   3..3+P-1                fourth powers of second differences, per pair class
    //   3+P..3+P+T-1            (DDj)^2 (DDk)^2 products, per triple class
    const std::size_t pair_base = 3;
    const std::size_t triple_base = pair_base + pairs.size();
    const std::size_t width = triple_base + triples.size();
    std::vector<double> rows(static_cast<std::size_t>(replicates) * width, 0.0);

    parallel_for_index(replicates, threads, [&](std::int64_t r) {
        SplitMix64 rng(derive_stream(params.seed, StreamPurpose::stein_sample,
                                     static_cast<std::uint64_t>(r)));
        const Graph g = sample_erdos_renyi(n, params.p, rng);
        std::optional<ArcOrder> order;
        if (model == Model::triangulation) order.emplace(random_arc_order(n, rng.next()));
        ForcedCounter counter(g, model, order ? &*order : nullptr);
        double* row = rows.data() + static_cast<std::size_t>(r) * width;

        long long d01 = 0, d02 = 0, d23 = 0;
        if (n >= 2) {
            d01 = counter.delta(Arc(0, 1));
            row[pattern_equal] = square(d01) * square(d01);
        }
        if (n >= 3) {
            d02 = counter.delta(Arc(0, 2));
            row[pattern_share] = square(d01) * square(d02);
        }
        if (n >= 4) {
            d23 = counter.delta(Arc(2, 3));
            row[pattern_disjoint] = square(d01) * square(d23);
        }

        for (std::size_t c = 0; c < pairs.size(); ++c) {
            const ArcClass& cls = pairs[c];
            if (cls.span > n || cls.rep[0] == cls.rep[1]) continue;  // D_k D_k == 0
            const long long dd = counter.delta2(cls.rep[0], cls.rep[1]);
            row[pair_base + c] = square(dd) * square(dd);
        }
        for (std::size_t c = 0; c < triples.size(); ++c) {
            const ArcClass& cls = triples[c];
            const Arc &j = cls.rep[0], &k = cls.rep[1], &l = cls.rep[2];
            if (cls.span > n || l == j || l == k) continue;  // a repeated difference vanishes
            const long long ddj = counter.delta2(j, l);
            const long long ddk = (k == j) ? ddj : counter.delta2(k, l);
            row[triple_base + c] = square(ddj) * square(ddk);
        }
    });

    // Column means over an index range; reduction order is fixed, so results do not
    // depend on the thread count.
    auto column_means = [&](std::int64_t lo, std::int64_t hi) {
        std::vector<long double> acc(width, 0.0L);
        for (std::int64_t r = lo; r < hi; ++r) {
            const double* row = rows.data() + static_cast<std::size_t>(r) * width;
            for (std::size_t c = 0; c < width; ++c) acc[c] += row[c];
        }
        for (auto& v : acc) v /= static_cast<long double>(hi - lo);
        return acc;
    };

    const long double pq = static_cast<long double>(params.p) * static_cast<long double>(params.q);
    const long double sigma_hat = out.sigma_hat;

    // B1/B2 run over ordered arc triples, B3 over arcs, B4/B5 over ordered arc pairs;
    // each class contributes cardinality * (plug-in moment) with the gradient scalings
    // sqrt(pq) per first difference and pq per second difference.
    auto assemble = [&](const std::vector<long double>& m) {
        std::array<long double, 5> b{};
        for (std::size_t c = 0; c < triples.size(); ++c) {
            if (triple_card[c] == 0) continue;
            const long double card = static_cast<long double>(triple_card[c]);
            const long double second = m[triple_base + c];
            const PairPattern pat = pattern_of(triples[c].rep[0], triples[c].rep[1]);
            b[0] += card * std::sqrt(m[static_cast<std::size_t>(pat)] * second);
            b[1] += card * second;
        }
        b[0] *= pq * pq * pq;
        b[1] *= pq * pq * pq;
        b[2] = static_cast<long double>(arc_pair_count(n)) * pq * m[pattern_equal];
        for (std::size_t c = 0; c < pairs.size(); ++c) {
            if (pair_card[c] == 0) continue;
            const long double card = static_cast<long double>(pair_card[c]);
            b[3] += card * std::sqrt(m[pattern_equal] * m[pair_base + c]);
            b[4] += card * m[pair_base + c];
        }
        b[3] *= pq * pq;
        b[4] *= pq * pq;
        const long double s4 = sigma_hat * sigma_hat * sigma_hat * sigma_hat;
        std::array<double, 6> result{};
        for (int i = 0; i < 5; ++i) result[static_cast<std::size_t>(i)] = static_cast<double>(b[static_cast<std::size_t>(i)] / s4);
        result[5] = std::sqrt(15.0) / 2.0 * std::sqrt(result[0]) +
                    std::sqrt(3.0) / 2.0 * std::sqrt(result[1]) + 2.0 * std::sqrt(result[2]) +
                    2.0 * std::sqrt(6.0) * std::sqrt(result[3]) +
                    2.0 * std::sqrt(3.0) * std::sqrt(result[4]);
        return result;
    };

    const std::vector<long double> full = column_means(0, replicates);
    if (out.sigma_hat == 0.0) {
        // A constant statistic with vanishing gradients has a zero bound by
        // convention; a constant pilot with live gradients is a sampling pathology.
        const bool all_zero =
            std::all_of(full.begin(), full.end(), [](long double v) { return v == 0.0L; });
        if (!all_zero)
            throw std::domain_error(
                "pilot variance is zero but gradient moments are not; "
                "increase pilot_replicates");
        return out;
    }

    const std::array<double, 6> point = assemble(full);
    for (std::size_t i = 0; i < 5; ++i) out.terms[i] = point[i];
    out.kolmogorov_bound = point[5];

    const std::int64_t batches = std::min<std::int64_t>(10, replicates);
    if (batches >= 2) {
        std::vector<std::array<double, 6>> batch_values;
        batch_values.reserve(static_cast<std::size_t>(batches));
        for (std::int64_t b = 0; b < batches; ++b) {
            const std::int64_t lo = b * replicates / batches;
            const std::int64_t hi = (b + 1) * replicates / batches;
            batch_values.push_back(assemble(column_means(lo, hi)));
        }
        for (std::size_t i = 0; i < 6; ++i) {
            long double bm = 0.0L, bs = 0.0L;
            for (const auto& bv : batch_values) bm += bv[i];
            bm /= static_cast<long double>(batches);
            for (const auto& bv : batch_values) bs += (bv[i] - bm) * (bv[i] - bm);
            const double se = static_cast<double>(
                std::sqrt(bs / static_cast<long double>(batches - 1) /
                          static_cast<long double>(batches)));
            if (i < 5)
                out.term_se[i] = se;
            else
                out.kolmogorov_se = se;
        }
    } else {
        out.term_se.fill(std::numeric_limits<double>::quiet_NaN());
        out.kolmogorov_se = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

}  // namespace seplab
