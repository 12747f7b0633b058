#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "seplab/commands.hpp"

using namespace seplab;
namespace fs = std::filesystem;

namespace {

const std::string kCsvHeader = "p,n,model,replicates,mean,variance,skewness,ks_distance,seed";

fs::path temp_file(const char* name) {
    return fs::temp_directory_path() /
           ("seplab_test_" + std::to_string(::getpid()) + "_" + name);
}

std::vector<std::string> read_lines(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("the p grid includes both endpoints") {
    RunConfig cfg;
    cfg.has_p_range = true;
    cfg.p_start = 0.1;
    cfg.p_end = 0.5;
    cfg.p_step = 0.2;
    const std::vector<double> grid = cfg.p_grid();
    REQUIRE(grid.size() == 3);
    CHECK(grid[0] == doctest::Approx(0.1));
    CHECK(grid[1] == doctest::Approx(0.3));
    CHECK(grid[2] == doctest::Approx(0.5));

    cfg.p_end = cfg.p_start;
    CHECK(cfg.p_grid().size() == 1);

    RunConfig plain;
    plain.p_values = {0.25, 0.75};
    CHECK(plain.p_grid() == plain.p_values);
}

TEST_CASE("unknown subcommands are reported, not crashed on") {
    RunConfig cfg;
    cfg.subcommand = "frobnicate";
    std::ostringstream console;
    CHECK(dispatch_command(cfg, console) == 1);
    CHECK(console.str().find("error: unknown subcommand") != std::string::npos);
}

TEST_CASE("exact prints the closed forms to the console") {
    RunConfig cfg;
    cfg.subcommand = "exact";
    cfg.n_values = {4};
    cfg.p_values = {0.5};
    std::ostringstream console;
    CHECK(dispatch_command(cfg, console) == 0);
    CHECK(console.str().find("expectation = 10.5") != std::string::npos);
    CHECK(console.str().find("regime:") != std::string::npos);

    cfg.out_path = "nope.csv";
    std::ostringstream console2;
    CHECK(dispatch_command(cfg, console2) == 1);
    CHECK(console2.str().find("--out is not supported") != std::string::npos);

    cfg.out_path.clear();
    cfg.n_values = {4, 5};
    std::ostringstream console3;
    CHECK(dispatch_command(cfg, console3) == 1);
    CHECK(console3.str().find("exactly one --n") != std::string::npos);
}

TEST_CASE("simulate writes the pinned CSV schema") {
    RunConfig cfg;
    cfg.subcommand = "simulate";
    cfg.n_values = {6};
    cfg.p_values = {0.5};
    cfg.replicates = 40;
    cfg.seed = 3;
    const fs::path out = temp_file("simulate.csv");
    cfg.out_path = out.string();
    std::ostringstream console;
    REQUIRE(dispatch_command(cfg, console) == 0);
    const std::vector<std::string> lines = read_lines(out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].find("# seplab simulate n=6 p=0.5") == 0);
    CHECK(lines[0].find("threads") == std::string::npos);
    CHECK(lines[1] == kCsvHeader);
    CHECK(lines[2].find("0.5,6,polytope,40,") == 0);
    CHECK(console.str().find(kCsvHeader) != std::string::npos);
    CHECK(console.str().find("# written ") != std::string::npos);
    fs::remove(out);
}

TEST_CASE("simulate mirrors the run into JSON when asked") {
    RunConfig cfg;
    cfg.subcommand = "simulate";
    cfg.n_values = {6};
    cfg.p_values = {0.4};
    cfg.replicates = 30;
    cfg.format = "json";
    const fs::path out = temp_file("simulate.json");
    cfg.out_path = out.string();
    std::ostringstream console;
    REQUIRE(dispatch_command(cfg, console) == 0);
    std::ifstream in(out);
    const nlohmann::json doc = nlohmann::json::parse(in);
    REQUIRE(doc.contains("config"));
    REQUIRE(doc.contains("rows"));
    CHECK(doc["config"]["n"] == 6);
    CHECK(doc["config"]["model"] == "polytope");
    REQUIRE(doc["rows"].size() == 1);
    CHECK(doc["rows"][0]["n"] == 6);
    CHECK(doc["rows"][0]["replicates"] == 30);
    CHECK(doc["rows"][0]["mean"].is_number());
    fs::remove(out);
}

TEST_CASE("sweep emits one row per grid point") {
    RunConfig cfg;
    cfg.subcommand = "sweep";
    cfg.n_values = {5};
    cfg.p_values = {0.2, 0.5};
    cfg.replicates = 25;
    const fs::path out = temp_file("sweep.csv");
    cfg.out_path = out.string();
    std::ostringstream console;
    REQUIRE(dispatch_command(cfg, console) == 0);
    const std::vector<std::string> lines = read_lines(out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[2].find("0.2,5,") == 0);
    CHECK(lines[3].find("0.5,5,") == 0);
    fs::remove(out);
}

TEST_CASE("clt reports a stein bound next to each ks distance") {
    RunConfig cfg;
    cfg.subcommand = "clt";
    cfg.n_values = {4};
    cfg.p_values = {0.5};
    cfg.replicates = 30;
    cfg.format = "json";
    const fs::path out = temp_file("clt.json");
    cfg.out_path = out.string();
    std::ostringstream console;
    REQUIRE(dispatch_command(cfg, console) == 0);
    CHECK(console.str().find("# clt n=4 ks=") != std::string::npos);
    CHECK(console.str().find("stein_bound=") != std::string::npos);
    std::ifstream in(out);
    const nlohmann::json doc = nlohmann::json::parse(in);
    REQUIRE(doc.contains("stein"));
    REQUIRE(doc["stein"].size() == 1);
    CHECK(doc["stein"][0]["n"] == 4);
    CHECK(doc["stein"][0]["terms"].size() == 5);
    CHECK(doc["stein"][0]["kolmogorov_bound"].is_number());
    fs::remove(out);
}

TEST_CASE("gradients finds no bound violations on a small run") {
    RunConfig cfg;
    cfg.subcommand = "gradients";
    cfg.n_values = {5};
    cfg.p_values = {0.4};
    cfg.samples = 25;
    std::ostringstream console;
    CHECK(dispatch_command(cfg, console) == 0);
    CHECK(console.str().find("violations = 0") != std::string::npos);
    CHECK(console.str().find("max |value|/bound") != std::string::npos);

    // n=2 has a single potential arc: no distinct second arc exists, and the
    // command must finish anyway instead of resampling forever.
    cfg.n_values = {2};
    cfg.p_values = {0.5};
    std::ostringstream console2;
    CHECK(dispatch_command(cfg, console2) == 0);
    CHECK(console2.str().find("violations = 0") != std::string::npos);
}

TEST_CASE("the oracle subcommand checks every 3-node graph") {
    RunConfig cfg;
    cfg.subcommand = "oracle";
    cfg.n_values = {3};
    cfg.exhaustive = true;
    std::ostringstream console;
    CHECK(dispatch_command(cfg, console) == 0);
    CHECK(console.str().find("8/8 graphs matched") != std::string::npos);

    cfg.n_values = {6};
    std::ostringstream console2;
    CHECK(dispatch_command(cfg, console2) == 1);
    CHECK(console2.str().find("capped at n <= 5") != std::string::npos);

    cfg.n_values = {3};
    cfg.out_path = "report.csv";
    cfg.format = "csv";
    std::ostringstream console3;
    CHECK(dispatch_command(cfg, console3) == 1);
    CHECK(console3.str().find("JSON only") != std::string::npos);
}
