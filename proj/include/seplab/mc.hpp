#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "seplab/closed_forms.hpp"
#include "seplab/graph.hpp"
#include "seplab/tri_edges.hpp"

namespace seplab {

// Arc-order handling for triangulation ensembles. The edge total is order-invariant,
// so the policies agree in distribution; fresh_per_replicate is the default because
// it also exercises that invariance continuously.
enum class OrderPolicy { fresh_per_replicate, fixed };

std::string to_string(OrderPolicy p);
OrderPolicy order_policy_from_string(const std::string& s);

enum class Standardization { sample_moments, exact_mean_sample_var };

std::string to_string(Standardization s);

struct EnsembleSummary {
    std::int64_t replicates = 0;
    double mean = 0;
    double variance = 0;  // unbiased
    double skewness = 0;  // m3 / m2^(3/2), biased central moments; NaN when degenerate
    double standard_error_mean = 0;
    std::vector<double> samples;  // retained only on request
};

struct KSReport {
    double distance = 0;
    Standardization standardization = Standardization::sample_moments;
    std::int64_t sample_count = 0;
};

// Edge count of one sampled graph under the given model. For the triangulation the
// order seed is derived per policy; the caller supplies the replicate index so the
// result is a pure function of (params.seed, replicate).
long long sample_edge_count(const SimParams& params, Model model, OrderPolicy policy,
                            std::uint64_t replicate);

// Standard normal CDF, absolute error below 1e-12. Series for small |z|, continued
// fraction for the tails; see mc.cpp.
double normal_cdf(double z);

// Exact Kolmogorov-Smirnov distance between the standardized empirical distribution
// and the standard normal, via order statistics. exact_mean is consulted only under
// exact_mean_sample_var. Throws on zero sample variance.
KSReport ks_distance_to_normal(std::vector<double> samples, Standardization standardization,
                               std::optional<double> exact_mean = std::nullopt);

// Welford one-pass accumulation in replicate order regardless of how many worker
// threads produced the values.
EnsembleSummary run_ensemble(const SimParams& params, Model model, std::int64_t replicates,
                             OrderPolicy policy = OrderPolicy::fresh_per_replicate,
                             bool retain_samples = false, int threads = 1);

struct SweepRow {
    double p = 0;
    int n = 0;
    Model model = Model::polytope;
    std::int64_t replicates = 0;
    double mean = 0;
    double variance = 0;
    double skewness = 0;
    double ks_distance = 0;  // NaN when the ensemble is degenerate
    std::uint64_t seed = 0;
};

// One ensemble per grid point; the same master seed is reused across grid points so
// neighbouring p values share uniforms (monotone coupling keeps comparisons stable).
std::vector<SweepRow> sweep(int n, const std::vector<double>& p_grid, Model model,
                            std::int64_t replicates, std::uint64_t seed,
                            OrderPolicy policy = OrderPolicy::fresh_per_replicate,
                            int threads = 1);

}  // namespace seplab
