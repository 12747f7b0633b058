#include <cerrno>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "seplab/commands.hpp"

namespace {

// SEPLAB_SEED supplies the default seed only; an explicit --seed always wins.
bool seed_from_environment(std::uint64_t& seed, std::string& error) {
    const char* env = std::getenv("SEPLAB_SEED");
    if (env == nullptr || *env == '\0') return true;
    errno = 0;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0') {
        error = std::string("invalid SEPLAB_SEED value: ") + env;
        return false;
    }
    seed = value;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace seplab;

    RunConfig cfg;
    cfg.threads = 0;  // resolve to the hardware count
    std::string env_error;
    if (!seed_from_environment(cfg.seed, env_error)) {
        std::cerr << "error: " << env_error << "\n";
        return 1;
    }

    CLI::App app{"edge statistics of random symmetric edge polytopes"};
    app.require_subcommand(1);

    std::string model = "polytope", origin = "proof_p", order = "fresh";
    const auto add_model = [&](CLI::App* sub) {
        sub->add_option("--model", model, "polytope|triangulation")
            ->check(CLI::IsMember({"polytope", "triangulation"}));
    };
    const auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_path, "output file path");
        sub->add_option("--format", cfg.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
    };
    const auto add_run = [&](CLI::App* sub) {
        sub->add_option("--reps", cfg.replicates, "replicates")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "master seed (default: SEPLAB_SEED or 1729)");
        sub->add_option("--order", order, "triangulation arc order policy: fresh|fixed")
            ->check(CLI::IsMember({"fresh", "fixed"}));
        sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
        add_output(sub);
    };

    CLI::App* exact = app.add_subcommand("exact", "closed-form expectation and variance");
    exact->add_option("--n", cfg.n_values, "node count")->expected(1);
    exact->add_option("--p", cfg.p_values, "arc probability")->expected(1);
    add_model(exact);
    exact->add_option("--origin-variant", origin, "proof_p|theorem_p2")
        ->check(CLI::IsMember({"proof_p", "theorem_p2"}));

    CLI::App* simulate = app.add_subcommand("simulate", "one Monte Carlo ensemble");
    simulate->add_option("--n", cfg.n_values, "node count")->expected(1);
    simulate->add_option("--p", cfg.p_values, "arc probability")->expected(1);
    add_model(simulate);
    add_run(simulate);

    CLI::App* sweep = app.add_subcommand("sweep", "ensembles over a p grid");
    sweep->add_option("--n", cfg.n_values, "node count")->expected(1);
    sweep->add_option("--p", cfg.p_values, "explicit p value (repeatable)");
    sweep->add_option("--p-start", cfg.p_start, "grid start");
    sweep->add_option("--p-end", cfg.p_end, "grid end");
    sweep->add_option("--p-step", cfg.p_step, "grid step");
    add_model(sweep);
    add_run(sweep);

    CLI::App* clt = app.add_subcommand(
        "clt", "KS distances and Stein bound estimates over an n list");
    clt->add_option("--n", cfg.n_values, "node count (repeatable)");
    clt->add_option("--p", cfg.p_values, "arc probability")->expected(1);
    add_model(clt);
    add_run(clt);

    CLI::App* gradients =
        app.add_subcommand("gradients", "sampled first/second difference bound checks");
    gradients->add_option("--n", cfg.n_values, "node count")->expected(1);
    gradients->add_option("--p", cfg.p_values, "arc probability")->expected(1);
    add_model(gradients);
    gradients->add_option("--samples", cfg.samples, "sampled instances")
        ->check(CLI::PositiveNumber);
    gradients->add_option("--seed", cfg.seed, "master seed");

    CLI::App* oracle =
        app.add_subcommand("oracle", "exact geometric verification of the edge rule");
    oracle->add_option("--n", cfg.n_values, "node count")->expected(1);
    oracle->add_option("--p", cfg.p_values, "arc probability (sampled mode)")->expected(1);
    oracle->add_flag("--exhaustive", cfg.exhaustive, "all 2^C(n,2) graphs (n <= 5)");
    oracle->add_option("--samples", cfg.samples, "sampled graphs")->check(CLI::PositiveNumber);
    oracle->add_option("--seed", cfg.seed, "master seed");
    add_output(oracle);

    CLI::App* verify = app.add_subcommand("verify", "run the full acceptance suite");
    verify->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        cfg.model = model_from_string(model);
        cfg.origin_variant = origin_variant_from_string(origin);
        cfg.order_policy = order_policy_from_string(order);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    cfg.has_p_range = sweep->count("--p-start") || sweep->count("--p-end") ||
                      sweep->count("--p-step");
    if (cfg.has_p_range &&
        !(sweep->count("--p-start") && sweep->count("--p-end") && sweep->count("--p-step"))) {
        std::cerr << "error: --p-start/--p-end/--p-step must be given together\n";
        return 1;
    }
    if (cfg.has_p_range && sweep->count("--p")) {
        std::cerr << "error: give either --p values or a --p-start/--p-end/--p-step range\n";
        return 1;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    // Defaults that add_option left untouched when flags were absent.
    if (cfg.n_values.empty()) cfg.n_values = {10};
    if (cfg.p_values.empty()) cfg.p_values = {0.5};

    return dispatch_command(cfg, std::cout);
}
