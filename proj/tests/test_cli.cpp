#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "dacs_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

CliResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path capture = dir / "stdout.txt";
    const std::string cmd = std::string(DACS_BIN_DIR) + "/dacs " + args + " > " +
                            capture.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.output = tt::slurp(capture.string());
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

} // namespace

TEST_CASE("check accepts the six-agent preset and prints its certificate") {
    const fs::path dir = scratch("check_ok");
    const CliResult r = run_cli("check paper_fig2", dir);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "check: PASS"));
    CHECK(contains(r.output, "spanning tree: yes"));
    CHECK(contains(r.output, "Hurwitz"));
    CHECK(contains(r.output, "sigma"));
}

TEST_CASE("check rejects a treeless graph with the assumption exit code") {
    const fs::path dir = scratch("check_tree");
    const fs::path bad = dir / "split.json";
    {
        nlohmann::json j;
        j["name"] = "split";
        j["order"] = 1;
        j["graph"] = {{"n", 4},
                      {"edges",
                       {{1, 2, 1.0}, {2, 1, 1.0}, {3, 4, 1.0}, {4, 3, 1.0}}}};
        j["agents"] = nlohmann::json::array();
        for (int i = 0; i < 4; ++i)
            j["agents"].push_back({{"terms", {0}}, {"lambda", 1.0}});
        j["scheme"] = "ideal";
        std::ofstream(bad) << j.dump();
    }
    const CliResult r = run_cli("check " + bad.string(), dir);
    CHECK(r.exit_code == 1);
    CHECK(contains(r.output, "spanning tree"));
}

TEST_CASE("schema problems exit with code 2") {
    const fs::path dir = scratch("schema");
    const fs::path bad = dir / "badlambda.json";
    {
        nlohmann::json j;
        j["name"] = "badlambda";
        j["order"] = 1;
        j["graph"] = {{"n", 2}, {"edges", {{1, 2, 1.0}, {2, 1, 1.0}}}};
        j["agents"] = {{{"terms", {0}}, {"lambda", -1.0}},
                       {{"terms", {0}}, {"lambda", 1.0}}};
        j["scheme"] = "ideal";
        std::ofstream(bad) << j.dump();
    }
    CHECK(run_cli("check " + bad.string(), dir).exit_code == 2);
    CHECK(run_cli("frobnicate", dir).exit_code == 2);
    CHECK(run_cli("run", dir).exit_code == 2);
    CHECK(run_cli("run two_agent_minimal --scheme warp", dir).exit_code == 2);
    CHECK(run_cli("run no_such_preset_anywhere", dir).exit_code == 2);
}

TEST_CASE("run writes a CSV/metadata pair and is reproducible") {
    const fs::path dir = scratch("run_repro");
    const std::string base = "two_agent_minimal_distributed_seed1";
    const CliResult r1 =
        run_cli("run two_agent_minimal --horizon 2 --out " + (dir / "a").string(), dir);
    CHECK(r1.exit_code == 0);
    CHECK(contains(r1.output, "diverged: no"));
    CHECK(contains(r1.output, "tail(20%)"));
    const fs::path csv_a = dir / "a" / (base + ".csv");
    const fs::path json_a = dir / "a" / (base + ".json");
    REQUIRE(fs::exists(csv_a));
    REQUIRE(fs::exists(json_a));

    const std::string text = tt::slurp(csv_a.string());
    CHECK(text.rfind("t,p_1,p_2,v_1,v_2,what_1_1,what_2_1,dis_p,dis_v,V,U,znorm\n",
                     0) == 0);

    const CliResult r2 =
        run_cli("run two_agent_minimal --horizon 2 --out " + (dir / "b").string(), dir);
    CHECK(r2.exit_code == 0);
    CHECK(tt::slurp((dir / "b" / (base + ".csv")).string()) == text);

    const nlohmann::json md = nlohmann::json::parse(tt::slurp(json_a.string()));
    CHECK(md.at("diverged") == false);
    CHECK(md.at("scheme") == "distributed");
}

TEST_CASE("a diverging run exits 3 and flags the metadata") {
    const fs::path dir = scratch("run_diverge");
    const CliResult r = run_cli("run paper_fig2 --out " + (dir / "o").string(), dir);
    CHECK(r.exit_code == 3);
    CHECK(contains(r.output, "diverged at t="));
    const fs::path md_path =
        dir / "o" / "paper_fig2_distributed_seed1.json";
    REQUIRE(fs::exists(md_path));
    const nlohmann::json md = nlohmann::json::parse(tt::slurp(md_path.string()));
    CHECK(md.at("diverged") == true);
    CHECK(md.at("t_diverged").get<double>() > 0.0);
}

TEST_CASE("the ideal scheme logs U identical to V") {
    const fs::path dir = scratch("run_ideal");
    const CliResult r = run_cli(
        "run paper_fig2 --scheme ideal --out " + (dir / "o").string(), dir);
    CHECK(r.exit_code == 0);
    const fs::path csv = dir / "o" / "paper_fig2_ideal_seed1.csv";
    REQUIRE(fs::exists(csv));
    std::ifstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    const std::vector<std::string> header = split_csv_line(line);
    int iv = -1, iu = -1;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "V") iv = static_cast<int>(c);
        if (header[c] == "U") iu = static_cast<int>(c);
    }
    REQUIRE(iv >= 0);
    REQUIRE(iu >= 0);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        const std::vector<std::string> cells = split_csv_line(line);
        REQUIRE(cells.size() == header.size());
        CHECK(cells[static_cast<std::size_t>(iu)] == cells[static_cast<std::size_t>(iv)]);
        ++rows;
    }
    CHECK(rows > 100);
}

TEST_CASE("run --plot also writes a gnuplot script") {
    const fs::path dir = scratch("run_plot");
    const CliResult r = run_cli(
        "run two_agent_minimal --horizon 1 --plot --out " + (dir / "o").string(), dir);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "o" / "two_agent_minimal_distributed_seed1.gp"));
}

TEST_CASE("compare fans out paired runs and prints the ratio matrix") {
    const fs::path dir = scratch("compare");
    const CliResult r = run_cli(
        "compare example2_leader --schemes zhang,distributed,centralized "
        "--horizon 5 --out " + (dir / "o").string(), dir);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "paired draws"));
    CHECK(contains(r.output, "tail-mean ratio matrix"));
    CHECK(contains(r.output, "reference scheme"));
    const fs::path root = dir / "o" / "example2_leader_compare";
    for (const std::string& s : {"zhang", "distributed", "centralized"}) {
        CHECK(fs::exists(root / s / ("example2_leader_" + s + "_seed1.csv")));
        CHECK(fs::exists(root / s / ("example2_leader_" + s + "_seed1.json")));
    }
}
