#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string("\"") + SPARSELAB_CLI + "\" " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("sparselab_cli_" + name); }

}  // namespace

TEST_CASE("version and usage errors") {
    const auto v = run("--version");
    CHECK(v.status == 0);
    CHECK(v.out.find("0.3.0") != std::string::npos);
    CHECK(run("").status == 2);
    CHECK(run("no-such-command").status == 2);
    CHECK(run("interp --no-such-flag 1").status == 2);
    CHECK(run("interp --alpha notanumber").status == 2);
    CHECK(run("interp --format xml").status == 2);
    CHECK(run("domination --op T --n 64 --trials 1").status == 2);
    CHECK(run("weight-char --weight b=1").status == 2);
}

TEST_CASE("interp prints the critical index as JSON with provenance") {
    const auto r = run("interp --alpha 0.5 --r 1.75");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["r0"].get<double>() == doctest::Approx(1.5));
    CHECK(j["theta0"].get<double>() == doctest::Approx(2.0 / 3.0));
    CHECK(j["eta"].get<double>() == doctest::Approx(1.0 / 7.0));
    CHECK(j["provenance"]["experiment"] == "interp");
    CHECK(j["provenance"]["config"]["alpha"].get<double>() == 0.5);
}

TEST_CASE("CSV output has provenance comments and a header row") {
    const auto r = run("concentration --alpha 0.5 --k-min 4 --k-max 5 --trials 3 --seed 7");
    REQUIRE(r.status == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# sparselab 0.3.0");
    std::getline(in, line);
    CHECK(line == "# experiment concentration");
    std::getline(in, line);
    CHECK(line.rfind("# config ", 0) == 0);
    std::getline(in, line);
    CHECK(line == "alpha,k,seed,opnorm,bound,exceed");
    int rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') ++rows;
    }
    CHECK(rows == 6);
}

TEST_CASE("config file keys override flags; unknown keys are usage errors") {
    const auto cfg = temp_file("config.json");
    {
        std::ofstream out(cfg);
        out << R"({"alpha": 0.2})";
    }
    const auto r = run("interp --alpha 0.9 --config " + cfg.string());
    REQUIRE(r.status == 0);
    CHECK(nlohmann::json::parse(r.out)["r0"].get<double>() == doctest::Approx(1.2));
    {
        std::ofstream out(cfg);
        out << R"({"alhpa": 0.2})";
    }
    CHECK(run("interp --config " + cfg.string()).status == 2);
    {
        std::ofstream out(cfg);
        out << "{ not json";
    }
    CHECK(run("interp --config " + cfg.string()).status == 2);
    fs::remove(cfg);
}

TEST_CASE("same seed gives bit-identical files") {
    // The output path is part of the recorded config, so both runs use it.
    const auto a = temp_file("a.csv");
    const std::string args = "opnorm --alpha 0.3 --k-min 4 --k-max 6 --trials 4 --seed 99 --out " + a.string();
    REQUIRE(run(args).status == 0);
    const std::string first = slurp(a);
    fs::remove(a);
    REQUIRE(run(args).status == 0);
    CHECK_FALSE(first.empty());
    CHECK(first == slurp(a));
    fs::remove(a);
}

TEST_CASE("JSON format for tabular experiments") {
    const auto r = run("sample-set --alpha 0.5 --n 8 --seed 3 --format json");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["rows"].size() == 16);
}

TEST_CASE("weight subcommands") {
    const auto w = run("weight-char --weight a=0 --n 32 --p 2 --r 2");
    REQUIRE(w.status == 0);
    const auto j = nlohmann::json::parse(w.out);
    CHECK(j["records"][0]["characteristic"] == "A_p");
    CHECK(j["records"][0]["value"].get<double>() == doctest::Approx(1.0));
    const auto ww = run("ww-check --weight a=0.2 --n 256 --alpha 0.3 --p 2 --r 1.5");
    REQUIRE(ww.status == 0);
    CHECK(nlohmann::json::parse(ww.out)["hypotheses_hold"] == true);
    CHECK(run("ww-check --weight a=0.2 --n 64 --alpha 0.3 --p 1.1 --r 1.5").status == 2);
}

TEST_CASE("sparse-check on signal files") {
    const auto f = temp_file("f.txt");
    {
        std::ofstream out(f);
        out << "0 1\n1 -2\n7 0.5\n";
    }
    const auto r = run("sparse-check --r 1.5 --f " + f.string());
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["sparsity"]["ok"] == true);
    CHECK(j["form"].get<double>() > 0.0);
    fs::remove(f);
    CHECK(run("sparse-check --f /nonexistent/file.txt").status == 1);
}

TEST_CASE("oscillatory subcommands") {
    const auto r = run("badset --phase d=2 --k-min 3 --k-max 4 --eps 0.25");
    CHECK(r.status == 0);
    CHECK(r.out.find("k,eps,measure,allowance,ratio") != std::string::npos);
    CHECK(run("osc-decay --phase d=2 --k-min 3 --k-max 4 --ppw 8").status == 2);
    const auto d = run("osc-decay --phase coeffs=0,1,1 --k-min 3 --k-max 4");
    CHECK(d.status == 0);
}

TEST_CASE("scale-bounds reports JSON by default") {
    const auto r = run("scale-bounds --alpha 0.5 --k-min 4 --k-max 5 --trials 3 --seed 2");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["rows"].size() == 6);
    CHECK(j["max_second_constant"].get<double>() <= 4.0);
}
