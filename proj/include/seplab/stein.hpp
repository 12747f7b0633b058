#pragma once

#include <array>
#include <cstdint>

#include "seplab/graph.hpp"
#include "seplab/tri_edges.hpp"

namespace seplab {

// One evaluated add-one-cost. value carries the probabilistic scaling
// (sqrt(pq) for first differences, pq for second differences); unscaled_delta is the
// raw integer edge-count difference; bound_rhs is the matching almost-sure bound.
struct GradientSample {
    double value = 0;
    long long unscaled_delta = 0;
    double bound_rhs = 0;
};

// First difference sqrt(pq) * (K(g + e) - K(g - e)). The bound is
// sqrt(pq) * (4E + 2W2 + 6W3) with E the arc count of g + e and Wi the number of
// i-arc paths between e's endpoints: adding e creates at most 4 edges per other arc
// (2 origin edges replace 4 of that slack in the triangulation case) and destroys
// only edges obstructed by a new 3- or 4-cycle through e.
// `order` is required for the triangulation model and held fixed across both
// evaluations; it is ignored for the polytope.
GradientSample discrete_gradient(const Graph& g, const Arc& e, Model model, double p,
                                 const ArcOrder* order = nullptr);

// Second difference pq * (K^{++} - K^{+-} - K^{-+} + K^{--}) over the four forced
// states of (e, f); exactly symmetric in e and f. For e == f the sample is
// identically zero. Bounds: 32pq for vertex-disjoint arcs, pq * (10 W + 8) for arcs
// sharing a node, with W the common-neighbour count of the non-shared endpoints
// ignoring the shared node (that count is unchanged by toggling e or f).
GradientSample second_gradient(const Graph& g, const Arc& e, const Arc& f, Model model,
                               double p, const ArcOrder* order = nullptr);

// Plug-in estimates of the five second-order Poincare sums for the standardized edge
// count, the assembled Kolmogorov bound
//   sqrt(15)/2 sqrt(B1) + sqrt(3)/2 sqrt(B2) + 2 sqrt(B3) + 2 sqrt(6) sqrt(B4)
//   + 2 sqrt(3) sqrt(B5),
// and batch-means standard errors. Coordinates are identified with the C(n,2)
// potential arcs; sums over arc pairs/triples are stratified by intersection pattern
// (see stein.cpp) with closed-form class cardinalities, so only one representative
// per pattern is ever evaluated.
struct SteinTerms {
    std::array<double, 5> terms{};     // B1..B5
    std::array<double, 5> term_se{};   // batch-means standard errors
    double kolmogorov_bound = 0;
    double kolmogorov_se = 0;
    double mu_hat = 0;
    double sigma_hat = 0;
    std::int64_t replicates = 0;
    std::int64_t pilot_replicates = 0;
};

// Standardization (mu_hat, sigma_hat) comes from a pilot ensemble on separate
// replicate indices. Bit-identical output for fixed (params, model, replicates,
// pilot_replicates) regardless of thread count. Throws std::domain_error when the
// pilot variance is zero while some gradient moment is not.
SteinTerms estimate_stein_terms(const SimParams& params, Model model,
                                std::int64_t replicates, std::int64_t pilot_replicates = 500,
                                int threads = 1);

}  // namespace seplab
