#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "seplab/closed_forms.hpp"
#include "seplab/mc.hpp"

namespace seplab {

// Parsed invocation shared by the CLI front end and the release gate. The output
// header embeds every statistically relevant field; threads and the output path are
// deliberately not embedded so regenerated files stay byte-identical.
struct RunConfig {
    std::string subcommand;
    std::vector<int> n_values{10};  // one entry except for `clt`
    std::vector<double> p_values{0.5};
    double p_start = 0, p_end = 0, p_step = 0;
    bool has_p_range = false;
    Model model = Model::polytope;
    std::int64_t replicates = 1000;
    std::uint64_t seed = 1729;
    OriginVariant origin_variant = OriginVariant::proof_p;
    OrderPolicy order_policy = OrderPolicy::fresh_per_replicate;
    std::string out_path;
    std::string format = "csv";
    int threads = 1;
    bool exhaustive = false;
    std::int64_t samples = 10000;

    int n() const { return n_values.front(); }
    double p() const { return p_values.front(); }
    std::vector<double> p_grid() const;
};

// Exit codes: 0 success, 1 invalid configuration, 2 failed check.
int command_exact(const RunConfig& cfg, std::ostream& console);
int command_simulate(const RunConfig& cfg, std::ostream& console);
int command_sweep(const RunConfig& cfg, std::ostream& console);
int command_clt(const RunConfig& cfg, std::ostream& console);
int command_gradients(const RunConfig& cfg, std::ostream& console);
int command_oracle(const RunConfig& cfg, std::ostream& console);
int command_verify(const RunConfig& cfg, std::ostream& console);

int dispatch_command(const RunConfig& cfg, std::ostream& console);

}  // namespace seplab
