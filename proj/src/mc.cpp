#include "seplab/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "seplab/parallel.hpp"
#include "seplab/sep_edges.hpp"

namespace seplab {

std::string to_string(OrderPolicy p) {
    return p == OrderPolicy::fresh_per_replicate ? "fresh" : "fixed";
}

OrderPolicy order_policy_from_string(const std::string& s) {
    if (s == "fresh") return OrderPolicy::fresh_per_replicate;
    if (s == "fixed") return OrderPolicy::fixed;
    throw std::invalid_argument("unknown order policy: " + s);
}

std::string to_string(Standardization s) {
    return s == Standardization::sample_moments ? "sample_moments" : "exact_mean_sample_var";
}

long long sample_edge_count(const SimParams& params, Model model, OrderPolicy policy,
                            std::uint64_t replicate) {
    const Graph g = erdos_renyi(params, replicate);
    if (model == Model::polytope) return count_edges(g).total;
    const std::uint64_t order_replicate =
        policy == OrderPolicy::fresh_per_replicate ? replicate + 1 : 0;
    const ArcOrder order = random_arc_order(
        params.n, derive_stream(params.seed, StreamPurpose::arc_order, order_replicate));
    return count_tri_edges(g, order).total;
}

namespace {

constexpr long double kSqrtPi = 1.7724538509055160272981674833411451828L;

// erf(x) for 0 <= x < 3 via the confluent series
//   erf(x) = (2/sqrt(pi)) e^{-x^2} sum_{k>=0} x^{2k+1} 2^k / (1*3*...*(2k+1)).
// All terms are positive, so no cancellation.
long double erf_series(long double x) {
    long double term = x;
    long double sum = x;
    for (int k = 1; k < 200; ++k) {
        term *= 2.0L * x * x / (2.0L * k + 1.0L);
        sum += term;
        if (term < sum * 1e-19L) break;
    }
    return 2.0L / kSqrtPi * std::exp(-x * x) * sum;
}

// erfc(x) for x >= 3 via the Laplace continued fraction
//   sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// evaluated with the modified Lentz recurrence.
long double erfc_continued_fraction(long double x) {
    const long double tiny = 1e-4000L;
    long double f = x, c = f, d = 0.0L;
    for (int k = 1; k < 300; ++k) {
        const long double a = 0.5L * k;
        d = x + a * d;
        if (d == 0.0L) d = tiny;
        c = x + a / c;
        if (c == 0.0L) c = tiny;
        d = 1.0L / d;
        const long double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0L) < 1e-19L) break;
    }
    return std::exp(-x * x) / (kSqrtPi * f);
}

long double erfc_positive(long double x) {
    return x < 3.0L ? 1.0L - erf_series(x) : erfc_continued_fraction(x);
}

}  // namespace

double normal_cdf(double z) {
    const long double x = static_cast<long double>(z) / 1.4142135623730950488016887242096981L;
    if (x >= 0.0L) return static_cast<double>(1.0L - 0.5L * erfc_positive(x));
    return static_cast<double>(0.5L * erfc_positive(-x));
}

KSReport ks_distance_to_normal(std::vector<double> samples, Standardization standardization,
                               std::optional<double> exact_mean) {
    const std::int64_t r = static_cast<std::int64_t>(samples.size());
    if (r < 2) throw std::invalid_argument("ks distance: need at least two samples");
    if (standardization == Standardization::exact_mean_sample_var && !exact_mean)
        throw std::invalid_argument("ks distance: exact_mean_sample_var needs a mean");
    double sample_mean = 0;
    for (double x : samples) sample_mean += x;
    sample_mean /= static_cast<double>(r);
    double m2 = 0;
    for (double x : samples) m2 += (x - sample_mean) * (x - sample_mean);
    const double variance = m2 / static_cast<double>(r - 1);
    if (!(variance > 0)) throw std::domain_error("ks distance: zero sample variance");
    const double center =
        standardization == Standardization::sample_moments ? sample_mean : *exact_mean;
    const double sd = std::sqrt(variance);
    for (double& x : samples) x = (x - center) / sd;
    std::sort(samples.begin(), samples.end());
    double dist = 0;
    for (std::int64_t i = 0; i < r; ++i) {
        const double phi = normal_cdf(samples[static_cast<std::size_t>(i)]);
        const double hi = static_cast<double>(i + 1) / static_cast<double>(r) - phi;
        const double lo = phi - static_cast<double>(i) / static_cast<double>(r);
        dist = std::max(dist, std::max(hi, lo));
    }
    KSReport report;
    report.distance = dist;
    report.standardization = standardization;
    report.sample_count = r;
    return report;
}

EnsembleSummary run_ensemble(const SimParams& params, Model model, std::int64_t replicates,
                             OrderPolicy policy, bool retain_samples, int threads) {
    if (replicates < 1) throw std::invalid_argument("run_ensemble: need >= 1 replicate");
    std::vector<double> values(static_cast<std::size_t>(replicates));
    parallel_for_index(replicates, threads, [&](std::int64_t i) {
        values[static_cast<std::size_t>(i)] = static_cast<double>(
            sample_edge_count(params, model, policy, static_cast<std::uint64_t>(i)));
    });
    EnsembleSummary summary;
    summary.replicates = replicates;
    // Welford pass in replicate order; identical for every thread count.
    double mean = 0, m2 = 0, m3 = 0;
    std::int64_t k = 0;
    for (double x : values) {
        const std::int64_t n1 = k;
        ++k;
        const double delta = x - mean;
        const double delta_n = delta / static_cast<double>(k);
        const double term1 = delta * delta_n * static_cast<double>(n1);
        mean += delta_n;
        m3 += term1 * delta_n * static_cast<double>(k - 2) - 3.0 * delta_n * m2;
        m2 += term1;
    }
    summary.mean = mean;
    summary.variance = replicates > 1 ? m2 / static_cast<double>(replicates - 1) : 0.0;
    const double biased_m2 = m2 / static_cast<double>(replicates);
    summary.skewness = biased_m2 > 0
                           ? (m3 / static_cast<double>(replicates)) / std::pow(biased_m2, 1.5)
                           : std::numeric_limits<double>::quiet_NaN();
    summary.standard_error_mean =
        std::sqrt(summary.variance / static_cast<double>(replicates));
    if (retain_samples) summary.samples = std::move(values);
    return summary;
}

std::vector<SweepRow> sweep(int n, const std::vector<double>& p_grid, Model model,
                            std::int64_t replicates, std::uint64_t seed, OrderPolicy policy,
                            int threads) {
    std::vector<SweepRow> rows;
    rows.reserve(p_grid.size());
    for (double p : p_grid) {
        const SimParams params(n, p, seed);
        EnsembleSummary s = run_ensemble(params, model, replicates, policy, true, threads);
        SweepRow row;
        row.p = p;
        row.n = n;
        row.model = model;
        row.replicates = replicates;
        row.mean = s.mean;
        row.variance = s.variance;
        row.skewness = s.skewness;
        row.seed = seed;
        try {
            row.ks_distance =
                ks_distance_to_normal(std::move(s.samples), Standardization::sample_moments)
                    .distance;
        } catch (const std::domain_error&) {
            row.ks_distance = std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace seplab
