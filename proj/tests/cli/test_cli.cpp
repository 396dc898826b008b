#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the frontend with the given arguments, stderr discarded.
RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(IMPACTCTL_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("usage errors exit with 2, help with 0") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("transmogrify").exit_code == 2);
    CHECK(run_cli("simulate --no-such-flag 1").exit_code == 2);
    const RunResult help = run_cli("--help");
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("simulate") != std::string::npos);
}

TEST_CASE("simulate emits a deterministic trajectory table") {
    const std::string args = "simulate --beta 1 --horizon 5 --profile all_buy_sell";
    const RunResult first = run_cli(args);
    CHECK(first.exit_code == 0);
    CHECK(first_line(first.out) == "n,quote,y,xi,u,q,p");
    CHECK(first.out.find("\n1,0,1,0,0,1,1\n") != std::string::npos);
    const RunResult second = run_cli(args);
    CHECK(second.out == first.out);  // byte-identical across runs
}

TEST_CASE("simulate exit codes by failure class") {
    CHECK(run_cli("simulate --lambda -1").exit_code == 2);
    CHECK(run_cli("simulate --horizon 0").exit_code == 2);
    CHECK(run_cli("simulate --control quick_response --sigma 0,0,0").exit_code == 2);
    CHECK(run_cli("simulate --beta 3 --horizon 40 --actions 1").exit_code == 3);
}

TEST_CASE("flags override config file values") {
    const std::filesystem::path cfg = temp_path("impact_cli_test.cfg");
    {
        std::ofstream out(cfg);
        out << "lambda = 0.5\nmu = 2\nbeta = 1\n";
    }
    const RunResult base = run_cli("control --config " + cfg.string());
    REQUIRE(base.exit_code == 0);
    const json base_doc = json::parse(base.out);
    CHECK(base_doc["lambda"].get<double>() == 0.5);
    CHECK(base_doc["mu"].get<double>() == 2.0);

    const RunResult forced = run_cli("control --config " + cfg.string() + " --lambda 2");
    REQUIRE(forced.exit_code == 0);
    const json forced_doc = json::parse(forced.out);
    CHECK(forced_doc["lambda"].get<double>() == 2.0);
    CHECK(forced_doc["mu"].get<double>() == 2.0);  // untouched key survives
    std::filesystem::remove(cfg);

    CHECK(run_cli("simulate --config /nonexistent_impact.cfg").exit_code == 2);
}

TEST_CASE("control report carries the placed gain") {
    const RunResult res = run_cli("control --beta 1");
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.out);
    CHECK(doc["sigma"][0].get<double>() == 8.0 / 27.0);
    CHECK(doc["sigma"][1].get<double>() == 19.0 / 27.0);
    CHECK(doc["detW"].get<double>() == 1.0);
    CHECK(doc["stable"].get<bool>());

    const RunResult pair = run_cli("control --beta 1 --phi 0.5:0.3,0.5:-0.3,0.2");
    REQUIRE(pair.exit_code == 0);
    CHECK(json::parse(pair.out)["stable"].get<bool>());
    CHECK(run_cli("control --phi 0.5:0.3,0.5:0.3,0.2").exit_code == 2);
}

TEST_CASE("region emits the grid header") {
    const RunResult res = run_cli("region --beta 1 --steps 3");
    REQUIRE(res.exit_code == 0);
    CHECK(first_line(res.out) == "lambda,mu,R,D,L,in_M,in_M1,in_M2,in_M3,on_kyle");
    CHECK(run_cli("region --steps 1").exit_code == 2);
}

TEST_CASE("game report switches sides on the maximal set boundary") {
    const RunResult inside = run_cli("game --beta 1 --horizon 6");
    REQUIRE(inside.exit_code == 0);
    const json in_doc = json::parse(inside.out);
    CHECK(in_doc.contains("theorem1"));
    CHECK_FALSE(in_doc.contains("impossibility_witness"));

    const RunResult outside = run_cli("game --lambda 2.5 --beta 1 --horizon 6");
    REQUIRE(outside.exit_code == 0);
    const json out_doc = json::parse(outside.out);
    CHECK(out_doc.contains("impossibility_witness"));
    CHECK_FALSE(out_doc.contains("theorem1"));
}

TEST_CASE("output lands in the requested file") {
    const std::filesystem::path path = temp_path("impact_cli_test_out.csv");
    std::filesystem::remove(path);
    const RunResult res = run_cli("simulate --horizon 3 --out " + path.string());
    CHECK(res.exit_code == 0);
    CHECK(res.out.empty());
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,quote,y,xi,u,q,p");
    in.close();
    std::filesystem::remove(path);

    CHECK(run_cli("simulate --out /nonexistent_dir_impact/out.csv").exit_code == 4);
}
