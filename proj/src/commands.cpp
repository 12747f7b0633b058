#include "seplab/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "seplab/acceptance.hpp"
#include "seplab/oracle.hpp"
#include "seplab/stein.hpp"

namespace seplab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& values, const char* sep, F render) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << sep;
        out << render(values[i]);
    }
    return out.str();
}

// The embedded configuration omits --threads and --out on purpose: re-generating a
// file from its own header must be byte-identical whatever the worker count or
// destination.
std::string config_comment(const RunConfig& cfg) {
    std::ostringstream out;
    out << "# seplab " << cfg.subcommand << " n="
        << join(cfg.n_values, ";", [](int n) { return std::to_string(n); });
    if (cfg.has_p_range)
        out << " p=" << fmt_g(cfg.p_start) << ":" << fmt_g(cfg.p_step) << ":"
            << fmt_g(cfg.p_end);
    else
        out << " p=" << join(cfg.p_values, ";", fmt_g);
    out << " model=" << to_string(cfg.model) << " reps=" << cfg.replicates
        << " seed=" << cfg.seed << " origin-variant=" << to_string(cfg.origin_variant)
        << " order=" << to_string(cfg.order_policy) << " format=" << cfg.format;
    return out.str();
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["subcommand"] = cfg.subcommand;
    if (cfg.n_values.size() == 1)
        j["n"] = cfg.n_values.front();
    else
        j["n"] = cfg.n_values;
    if (cfg.has_p_range) {
        j["p_start"] = cfg.p_start;
        j["p_end"] = cfg.p_end;
        j["p_step"] = cfg.p_step;
    } else if (cfg.p_values.size() == 1) {
        j["p"] = cfg.p_values.front();
    } else {
        j["p"] = cfg.p_values;
    }
    j["model"] = to_string(cfg.model);
    j["replicates"] = cfg.replicates;
    j["seed"] = cfg.seed;
    j["origin_variant"] = to_string(cfg.origin_variant);
    j["order"] = to_string(cfg.order_policy);
    j["format"] = cfg.format;
    return j;
}

void write_rows_csv(std::ostream& out, const RunConfig& cfg,
                    const std::vector<SweepRow>& rows) {
    out << config_comment(cfg) << "\n";
    out << "p,n,model,replicates,mean,variance,skewness,ks_distance,seed\n";
    for (const SweepRow& r : rows)
        out << fmt_g(r.p) << ',' << r.n << ',' << to_string(r.model) << ',' << r.replicates
            << ',' << fmt_g(r.mean) << ',' << fmt_g(r.variance) << ',' << fmt_g(r.skewness)
            << ',' << fmt_g(r.ks_distance) << ',' << r.seed << '\n';
}

ordered_json rows_json(const std::vector<SweepRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const SweepRow& r : rows) {
        ordered_json j;
        j["p"] = r.p;
        j["n"] = r.n;
        j["model"] = to_string(r.model);
        j["replicates"] = r.replicates;
        j["mean"] = r.mean;
        j["variance"] = r.variance;
        j["skewness"] = r.skewness;
        j["ks_distance"] = r.ks_distance;  // NaN serialises as null
        j["seed"] = r.seed;
        arr.push_back(std::move(j));
    }
    return arr;
}

int write_output(const RunConfig& cfg, const std::vector<SweepRow>& rows,
                 std::ostream& console, const ordered_json* extra = nullptr,
                 const char* extra_key = nullptr) {
    write_rows_csv(console, cfg, rows);
    if (cfg.out_path.empty()) return 0;
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) {
        console << "error: cannot open output file " << cfg.out_path << "\n";
        return 1;
    }
    if (cfg.format == "json") {
        ordered_json doc;
        doc["config"] = config_json(cfg);
        doc["rows"] = rows_json(rows);
        if (extra && extra_key) doc[extra_key] = *extra;
        file << doc.dump(2) << "\n";
    } else {
        write_rows_csv(file, cfg, rows);
    }
    console << "# written " << cfg.out_path << "\n";
    return 0;
}

void require_single_n(const RunConfig& cfg) {
    if (cfg.n_values.size() != 1)
        throw std::invalid_argument(cfg.subcommand + " takes exactly one --n");
}

void require_single_p(const RunConfig& cfg) {
    if (cfg.has_p_range || cfg.p_values.size() != 1)
        throw std::invalid_argument(cfg.subcommand + " takes exactly one --p");
}

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

double ks_or_nan(std::vector<double> samples) {
    try {
        return ks_distance_to_normal(std::move(samples), Standardization::sample_moments)
            .distance;
    } catch (const std::domain_error&) {
        return nan_value();
    }
}

}  // namespace

std::vector<double> RunConfig::p_grid() const {
    if (!has_p_range) return p_values;
    if (!(p_step > 0)) throw std::invalid_argument("--p-step must be positive");
    if (p_end < p_start) throw std::invalid_argument("--p-end must be >= --p-start");
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>((p_end - p_start) / p_step + 1e-9) + 1;
    for (std::size_t i = 0; i < count; ++i)
        grid.push_back(p_start + static_cast<double>(i) * p_step);
    return grid;
}

int command_exact(const RunConfig& cfg, std::ostream& console) {
    require_single_n(cfg);
    require_single_p(cfg);
    if (!cfg.out_path.empty())
        throw std::invalid_argument("exact prints to the console; --out is not supported");
    const MomentReport report =
        moment_report(cfg.n(), cfg.p(), cfg.model, cfg.origin_variant);
    console << "model=" << to_string(cfg.model) << " n=" << cfg.n() << " p=" << fmt_g(cfg.p())
            << "\n";
    console << "expectation = " << fmt_g(static_cast<double>(report.expectation)) << "\n";
    if (cfg.model == Model::polytope)
        console << "variance_principal_terms = "
                << fmt_g(static_cast<double>(report.variance_principal)) << "\n";
    else
        console << "origin_variant = " << to_string(cfg.origin_variant) << "\n";
    console << "regime: " << report.regime_label << "\n";
    return 0;
}

int command_simulate(const RunConfig& cfg, std::ostream& console) {
    require_single_n(cfg);
    require_single_p(cfg);
    if (cfg.replicates < 2) throw std::invalid_argument("simulate needs --reps >= 2");
    const SimParams params(cfg.n(), cfg.p(), cfg.seed);
    EnsembleSummary s = run_ensemble(params, cfg.model, cfg.replicates, cfg.order_policy,
                                     true, cfg.threads);
    SweepRow row;
    row.p = cfg.p();
    row.n = cfg.n();
    row.model = cfg.model;
    row.replicates = s.replicates;
    row.mean = s.mean;
    row.variance = s.variance;
    row.skewness = s.skewness;
    row.ks_distance = ks_or_nan(std::move(s.samples));
    row.seed = cfg.seed;
    return write_output(cfg, {row}, console);
}

int command_sweep(const RunConfig& cfg, std::ostream& console) {
    require_single_n(cfg);
    if (cfg.replicates < 2) throw std::invalid_argument("sweep needs --reps >= 2");
    const std::vector<double> grid = cfg.p_grid();
    if (grid.empty()) throw std::invalid_argument("sweep needs a non-empty p grid");
    const std::vector<SweepRow> rows = sweep(cfg.n(), grid, cfg.model, cfg.replicates,
                                             cfg.seed, cfg.order_policy, cfg.threads);
    return write_output(cfg, rows, console);
}

int command_clt(const RunConfig& cfg, std::ostream& console) {
    require_single_p(cfg);
    if (cfg.n_values.empty()) throw std::invalid_argument("clt needs at least one --n");
    if (cfg.replicates < 2) throw std::invalid_argument("clt needs --reps >= 2");
    std::vector<SweepRow> rows;
    ordered_json stein_report = ordered_json::array();
    for (const int n : cfg.n_values) {
        const SimParams params(n, cfg.p(), cfg.seed);
        EnsembleSummary s = run_ensemble(params, cfg.model, cfg.replicates,
                                         cfg.order_policy, true, cfg.threads);
        SweepRow row;
        row.p = cfg.p();
        row.n = n;
        row.model = cfg.model;
        row.replicates = s.replicates;
        row.mean = s.mean;
        row.variance = s.variance;
        row.skewness = s.skewness;
        row.ks_distance = ks_or_nan(std::move(s.samples));
        row.seed = cfg.seed;
        rows.push_back(row);

        const SteinTerms stein =
            estimate_stein_terms(params, cfg.model, cfg.replicates, 500, cfg.threads);
        ordered_json j;
        j["n"] = n;
        j["kolmogorov_bound"] = stein.kolmogorov_bound;
        j["kolmogorov_se"] = stein.kolmogorov_se;
        j["terms"] = stein.terms;
        j["term_se"] = stein.term_se;
        j["mu_hat"] = stein.mu_hat;
        j["sigma_hat"] = stein.sigma_hat;
        j["pilot_replicates"] = stein.pilot_replicates;
        stein_report.push_back(std::move(j));
        console << "# clt n=" << n << " ks=" << fmt_g(row.ks_distance)
                << " stein_bound=" << fmt_g(stein.kolmogorov_bound) << " (se "
                << fmt_g(stein.kolmogorov_se) << ")\n";
    }
    return write_output(cfg, rows, console, &stein_report, "stein");
}

int command_gradients(const RunConfig& cfg, std::ostream& console) {
    require_single_n(cfg);
    require_single_p(cfg);
    if (cfg.n() < 2) throw std::invalid_argument("gradients needs --n >= 2");
    if (cfg.samples < 1) throw std::invalid_argument("gradients needs --samples >= 1");
    const SimParams params(cfg.n(), cfg.p(), cfg.seed);
    long long violations = 0;
    double max_first_ratio = 0, max_second_ratio = 0;
    for (std::int64_t t = 0; t < cfg.samples; ++t) {
        const Graph g = erdos_renyi(params, static_cast<std::uint64_t>(t));
        SplitMix64 pick(derive_stream(cfg.seed, StreamPurpose::arc_order,
                                      static_cast<std::uint64_t>(t)));
        const ArcOrder order = random_arc_order(cfg.n(), pick.next());
        const auto random_arc = [&] {
            const int u =
                static_cast<int>(pick.next_below(static_cast<std::uint64_t>(cfg.n())));
            int v = u;
            while (v == u)
                v = static_cast<int>(pick.next_below(static_cast<std::uint64_t>(cfg.n())));
            return Arc(u, v);
        };
        const Arc e = random_arc();
        const GradientSample first = discrete_gradient(g, e, cfg.model, cfg.p(), &order);
        if (first.bound_rhs > 0)
            max_first_ratio = std::max(max_first_ratio, std::abs(first.value) / first.bound_rhs);
        if (std::abs(first.value) > first.bound_rhs) ++violations;
        if (arc_pair_count(cfg.n()) < 2) continue;  // no distinct second arc on n=2
        Arc f = random_arc();
        while (f == e) f = random_arc();
        const GradientSample second = second_gradient(g, e, f, cfg.model, cfg.p(), &order);
        if (second.bound_rhs > 0)
            max_second_ratio =
                std::max(max_second_ratio, std::abs(second.value) / second.bound_rhs);
        if (std::abs(second.value) > second.bound_rhs) ++violations;
    }
    console << "gradients model=" << to_string(cfg.model) << " n=" << cfg.n()
            << " p=" << fmt_g(cfg.p()) << " samples=" << cfg.samples << "\n";
    console << "max |value|/bound: first-difference " << fmt_g(max_first_ratio)
            << ", second-difference " << fmt_g(max_second_ratio) << "\n";
    console << "violations = " << violations << "\n";
    return violations == 0 ? 0 : 2;
}

int command_oracle(const RunConfig& cfg, std::ostream& console) {
    require_single_n(cfg);
    const int n = cfg.n();
    long long matched = 0, total = 0;
    ordered_json mismatches = ordered_json::array();
    const auto record = [&](const Graph& g, const OracleResult& r) {
        ++total;
        if (r.combinatorial_match) {
            ++matched;
            return;
        }
        ordered_json j;
        std::ostringstream arcs;
        to_edge_list(g, arcs);
        j["graph"] = arcs.str();
        j["geometric_edges"] = r.geometric_edge_count;
        j["combinatorial_edges"] = r.combinatorial_edge_count;
        mismatches.push_back(std::move(j));
    };
    if (cfg.exhaustive) {
        if (n > 5)
            throw std::invalid_argument(
                "exhaustive oracle enumeration is capped at n <= 5 (2^C(n,2) graphs)");
        const unsigned graphs = 1u << arc_pair_count(n);
        for (unsigned mask = 0; mask < graphs; ++mask) {
            Graph g(n);
            int bit = 0;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v, ++bit)
                    if (mask >> bit & 1u) g.set(u, v, true);
            record(g, enumerate_edges(g));
        }
    } else {
        require_single_p(cfg);
        if (cfg.samples < 1) throw std::invalid_argument("oracle needs --samples >= 1");
        const SimParams params(n, cfg.p(), cfg.seed);
        for (std::int64_t i = 0; i < cfg.samples; ++i) {
            const Graph g = erdos_renyi(params, static_cast<std::uint64_t>(i));
            record(g, enumerate_edges(g));
        }
    }
    console << matched << "/" << total << " graphs matched\n";
    if (!cfg.out_path.empty()) {
        if (cfg.format != "json")
            throw std::invalid_argument("the oracle report is JSON only; use --format json");
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file) {
            console << "error: cannot open output file " << cfg.out_path << "\n";
            return 1;
        }
        ordered_json doc;
        doc["config"] = config_json(cfg);
        doc["graphs"] = total;
        doc["matched"] = matched;
        doc["mismatches"] = mismatches;
        file << doc.dump(2) << "\n";
        console << "# written " << cfg.out_path << "\n";
    }
    return matched == total ? 0 : 2;
}

int command_verify(const RunConfig& cfg, std::ostream& console) {
    const auto results = run_acceptance_suite(cfg.threads, &console);
    const bool ok = all_passed(results);
    console << (ok ? "acceptance: all criteria passed\n" : "acceptance: FAILURES above\n");
    return ok ? 0 : 2;
}

int dispatch_command(const RunConfig& cfg, std::ostream& console) {
    try {
        if (cfg.subcommand == "exact") return command_exact(cfg, console);
        if (cfg.subcommand == "simulate") return command_simulate(cfg, console);
        if (cfg.subcommand == "sweep") return command_sweep(cfg, console);
        if (cfg.subcommand == "clt") return command_clt(cfg, console);
        if (cfg.subcommand == "gradients") return command_gradients(cfg, console);
        if (cfg.subcommand == "oracle") return command_oracle(cfg, console);
        if (cfg.subcommand == "verify") return command_verify(cfg, console);
        throw std::invalid_argument("unknown subcommand: " + cfg.subcommand);
    } catch (const std::exception& e) {
        console << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace seplab
