#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

// Runs the installed CLI with a scratch stdout capture.
RunResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string path = "/tmp/boxlab_cli_out_" + std::to_string(counter++) + ".txt";
    std::string cmd = std::string(BOXLAB_CLI_PATH) + " " + args + " > " + path + " 2>/dev/null";
    int raw = std::system(cmd.c_str());
    RunResult res;
    res.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    res.out = buf.str();
    std::remove(path.c_str());
    return res;
}

}  // namespace

TEST_CASE("dim emits the fixed CSV shape") {
    RunResult r = run_cli("dim --set power:p=1 --schedule geo:2:4:8 --counter box");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("m,value,ratio\n", 0) == 0);
    CHECK(r.out.find("\n4,4,1.000000\n") != std::string::npos);
    CHECK(r.out.find("\n8,5,") != std::string::npos);
    CHECK(r.out.find("# limsup_proxy=") != std::string::npos);
    CHECK(r.out.find(" slope=") != std::string::npos);
}

TEST_CASE("dim output is byte-stable across runs") {
    std::string args = "dim --set cantor:ratio=1/3,depth=8 --schedule geo:2:4:256 --counter gm";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
}

TEST_CASE("dim json carries rows and summary fields") {
    RunResult r = run_cli("dim --set power:p=1 --schedule geo:2:4:8 --counter box --format json");
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["counter"] == "box");
    REQUIRE(doc["rows"].size() == 2);
    CHECK(doc["rows"][0]["m"] == 4);
    CHECK(doc["rows"][0]["value"] == 4);
    CHECK(doc.contains("limsup_proxy"));
    CHECK(doc.contains("slope"));
}

TEST_CASE("dim rejects bad specs with exit 2") {
    CHECK(run_cli("dim --set file:/tmp/boxlab_no_such_file.txt --schedule geo:2:4:8").code == 2);
    CHECK(run_cli("dim --set power:p=1 --schedule nonsense").code == 2);
    CHECK(run_cli("dim --set power:p=1 --schedule geo:2:4:8 --counter cells").code == 2);
    CHECK(run_cli("dim --schedule geo:2:4:8").code == 2);  // missing required option
}

TEST_CASE("dim maps resolution errors to exit 3") {
    CHECK(run_cli("dim --set paper:a=1/2,c=1/3,levels=1 --schedule list:131072 --counter box")
              .code == 3);
}

TEST_CASE("witness single stage summary and export") {
    RunResult r = run_cli("witness --set power:p=1 --m 4 --cap 1");
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["bound"] == 8);
    CHECK(doc["achieved"] >= 8);
    CHECK(doc["m"] == 4);

    const char* csv = "/tmp/boxlab_witness_test.csv";
    RunResult w = run_cli(std::string("witness --set power:p=1 --m 4 --cap 1 --out ") + csv);
    CHECK(w.code == 0);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,height,box_column,box_row");
    size_t rows = 0;
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == 8);  // one sample per counted cell at cap 1*m
    std::remove(csv);
}

TEST_CASE("witness respects the output directory override") {
    ::setenv("BOXLAB_OUT_DIR", "/tmp/boxlab_outdir_test", 1);
    CHECK(std::system("rm -rf /tmp/boxlab_outdir_test && mkdir -p /tmp/boxlab_outdir_test") == 0);
    RunResult r = run_cli("witness --set power:p=1 --m 4 --cap 1 --out sub.csv");
    ::unsetenv("BOXLAB_OUT_DIR");
    CHECK(r.code == 0);
    std::ifstream in("/tmp/boxlab_outdir_test/sub.csv");
    CHECK(in.good());
    CHECK(std::system("rm -rf /tmp/boxlab_outdir_test") == 0);
}

TEST_CASE("witness from a points file") {
    const char* pts = "/tmp/boxlab_pts_test.txt";
    {
        std::ofstream out(pts);
        out << "# three clusters\n0\n1/64\n2/64\n1/2\n33/64\n1\n";
    }
    RunResult r = run_cli(std::string("witness --set file:") + pts + " --m 64 --cap 1");
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["achieved"].get<std::uint64_t>() >= doc["bound"].get<std::uint64_t>());
    std::remove(pts);
}

TEST_CASE("witness stack mode emits stage records") {
    RunResult r = run_cli("witness --set power:p=1 --stages 3 --schedule geo:2:16:16384");
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["stages"].size() == 3);
    for (const auto& st : doc["stages"]) {
        CHECK(st["norm_ok"] == true);
        CHECK(st["carry_ok"] == true);
        CHECK(st["final_ok"] == true);
        CHECK(st["tail_ok"] == true);
        CHECK(st["achieved"].get<std::uint64_t>() >= st["bound"].get<std::uint64_t>());
    }
    CHECK(doc["total_norm_ok"] == true);
}

TEST_CASE("witness capacity violations exit 4") {
    CHECK(run_cli("witness --set power:p=1 --m 4 --cap 1/8").code == 4);
}

TEST_CASE("verify exits by failure count and validates flags") {
    RunResult ok = run_cli("verify --suite lemmas --trials 100 --seed 7");
    CHECK(ok.code == 0);
    auto doc = nlohmann::json::parse(ok.out);
    REQUIRE(doc.size() == 4);
    for (const auto& rep : doc) {
        CHECK(rep["failures"] == 0);
        CHECK(rep["trials"] == 100);
        CHECK(rep["seed"] == 7);
    }

    CHECK(run_cli("verify --suite lemmas --trials 100").code == 2);  // seed required
    CHECK(run_cli("verify --suite nosuch --seed 1").code == 2);
}

TEST_CASE("verify bounds and paperset suites are clean") {
    RunResult b = run_cli("verify --suite bounds");
    CHECK(b.code == 0);
    auto bdoc = nlohmann::json::parse(b.out);
    CHECK(bdoc[0]["suite"] == "bounds");
    CHECK(bdoc[0]["failures"] == 0);

    RunResult p = run_cli("verify --suite paperset");
    CHECK(p.code == 0);
    auto pdoc = nlohmann::json::parse(p.out);
    CHECK(pdoc[0]["suite"] == "paperset");
    CHECK(pdoc[0]["failures"] == 0);
    CHECK(pdoc[0]["skips"] == 0);
}

TEST_CASE("verify corollary2 cross-checks the oracles") {
    RunResult r = run_cli("verify --suite corollary2 --p 1");
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc[0]["suite"] == "corollary2");
    CHECK(doc[0]["trials"] == 9999);
    CHECK(doc[0]["failures"] == 0);
}
