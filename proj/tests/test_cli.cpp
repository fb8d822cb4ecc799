#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mtc/cli.hpp"
#include "mtc/io.hpp"
#include "mtc/pointed.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mtc;

namespace {

struct Run {
    int status;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int s = run_cli(args, out, err);
    return {s, out.str(), err.str()};
}

std::string temp_path(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "mtc_cli_test";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

void write(const std::string& path, const std::string& text)
{
    std::ofstream f(path);
    f << text;
}

}  // namespace

TEST_CASE("sqrt(8)Z has three invariants through every route")
{
    for (auto via : {"jpsi", "dpm", "z", "brute"}) {
        auto r = run({"invariants", "enumerate", "--lattice", "sqrt2n:4", "--via", via});
        INFO(via << " " << r.err);
        REQUIRE(r.status == kOk);
        CHECK(r.json()["count"] == 3);
    }
}

TEST_CASE("ty double of Z3 has 15 primaries and verifies")
{
    auto r = run({"ty", "double", "--group", "3", "--sign", "+"});
    REQUIRE(r.status == kOk);
    auto md = modular_data_from_json(r.json());
    CHECK(md.size() == 15);
    auto path = temp_path("d3.json");
    write(path, r.out);
    auto v = run({"verify", "--md", path});
    CHECK(v.status == kOk);
    CHECK(v.json()["ok"] == true);
}

TEST_CASE("verify accepts the identity and rejects a broken matrix")
{
    auto w = run({"weil", "--form", "3^1_+"});
    REQUIRE(w.status == kOk);
    auto md = temp_path("w3.json");
    write(md, w.out);
    auto id = temp_path("id.csv");
    write(id, "1,0,0\n0,1,0\n0,0,1\n");
    CHECK(run({"verify", "--md", md, "--inv", id}).status == kOk);
    auto bad = temp_path("bad.csv");
    write(bad, "1,1,0\n0,1,0\n0,0,1\n");
    CHECK(run({"verify", "--md", md, "--inv", bad}).status == kInconsistent);
    CHECK(run({"invariants", "check", "--md", md, "--inv", bad}).status == kInconsistent);
    // the charge conjugation matrix is an invariant too
    auto cj = temp_path("c.json");
    write(cj, "[[1,0,0],[0,0,1],[0,1,0]]");
    CHECK(run({"invariants", "check", "--md", md, "--inv", cj}).status == kOk);
}

TEST_CASE("emitted modular data round-trips")
{
    for (auto f : {"2^1_1", "3^1_-", "2^12^1_ii", "2^2_3,3^1_+"}) {
        auto r = run({"weil", "--form", f});
        REQUIRE(r.status == kOk);
        auto md = modular_data_from_json(r.json());
        auto direct = weil(form_from_descriptors(parse_descriptors(f)).q);
        CHECK(md.S == direct.S);
        CHECK(md.T == direct.T);
        CHECK(to_json(md).dump() + "\n" == r.out);
    }
}

TEST_CASE("csv output parses back")
{
    auto j = run({"invariants", "enumerate", "--lattice", "sqrt2n:6", "--via", "dpm"});
    auto c = run({"invariants", "enumerate", "--lattice", "sqrt2n:6", "--via", "dpm", "--csv"});
    REQUIRE(c.status == kOk);
    auto mats = invariants_from_csv(c.out);
    CHECK(mats.size() == 4);
    CHECK(Json(mats) == j.json()["invariants"]);
}

TEST_CASE("output is byte-stable")
{
    std::vector<std::vector<std::string>> cmds{{"invariants", "enumerate", "--form", "2^1_1,2^1_1", "--via", "jpsi"},
                                               {"forms", "list", "--group", "2x2"},
                                               {"ty", "assoc", "--group", "3"},
                                               {"cross-check", "--form", "3^1_+,3^1_+"}};
    for (const auto& c : cmds) {
        auto a = run(c), b = run(c);
        CHECK(a.status == kOk);
        CHECK(a.out == b.out);
    }
    auto t1 = run({"invariants", "enumerate", "--form", "2^1_1,2^1_1", "--via", "brute", "--threads", "1"});
    auto t4 = run({"invariants", "enumerate", "--form", "2^1_1,2^1_1", "--via", "brute", "--threads", "4"});
    CHECK(t1.out == t4.out);
}

TEST_CASE("usage errors exit 2")
{
    CHECK(run({}).status == kUsage);
    CHECK(run({"bogus"}).status == kUsage);
    CHECK(run({"weil"}).status == kUsage);
    CHECK(run({"weil", "--form", "9^1_+"}).status == kUsage);
    CHECK(run({"invariants", "enumerate", "--form", "3^1_+", "--via", "magic"}).status == kUsage);
    CHECK(run({"ty", "double", "--group", "3", "--sign", "0"}).status == kUsage);
    CHECK(run({"ty", "double", "--group", "2x2", "--pairing", "1/2,0;0,0"}).status == kUsage);
    CHECK(run({"group", "subgroups", "--group", "2x3x"}).status == kUsage);
    CHECK(run({"forms", "gauss", "--form", "3^1_+", "--csv"}).status == kUsage);
    CHECK(run({"weil", "--form", "3^1_+", "--json", "--csv"}).status == kUsage);
    CHECK(run({"verify", "--md", temp_path("missing.json")}).status == kUsage);
    CHECK(run({"--help"}).status == kOk);
}

TEST_CASE("guards exit 3")
{
    CHECK(run({"invariants", "enumerate", "--lattice", "sqrt2n:40", "--max-order", "10"}).status == kGuard);
    CHECK(run({"group", "autos", "--group", "4x4", "--max-order", "8"}).status == kGuard);
    CHECK(run({"ty", "fusion", "--group", "5", "--max-order", "4"}).status == kGuard);
    CHECK(run({"invariants", "enumerate", "--lattice", "sqrt2n:3", "--max-order", "6"}).status == kOk);
}

TEST_CASE("cross-check reports")
{
    auto a = run({"cross-check", "--lattice", "sqrt2n:2"});
    REQUIRE(a.status == kOk);
    CHECK(a.json()["equal"] == true);
    CHECK(a.json()["size"] == 2);
    for (auto via : {"jpsi", "dpm", "z", "brute"}) CHECK(a.json()["sets"][via] == 2);

    auto b = run({"cross-check", "--form", "2^1_1"});
    REQUIRE(b.status == kOk);
    CHECK(b.json()["equal"] == true);
    CHECK(b.json()["size"] == 1);

    auto c = run({"cross-check", "--ty-double", "--group", "2"});
    REQUIRE(c.status == kOk);
    CHECK(c.json()["jpsi_subset_of_brute"] == true);
    CHECK(c.json()["sets"]["jpsi"] < c.json()["sets"]["brute"]);
}

TEST_CASE("other verbs")
{
    CHECK(run({"group", "subgroups", "--group", "4"}).json()["count"] == 3);
    CHECK(run({"group", "autos", "--group", "2x2"}).json()["count"] == 6);
    auto g = run({"forms", "gauss", "--form", "2^1_1"}).json();
    CHECK(g["signature_mod_8"] == 1);
    CHECK(run({"forms", "equiv", "--form", "2^2_1", "--other", "2^2_-3"}).json()["equivalent"] == false);
    CHECK(run({"forms", "equiv", "--form", "3^1_+,3^1_+", "--other", "3^1_-,3^1_-"}).json()["equivalent"] == true);

    auto p = run({"ty", "pentagon", "--group", "2x2", "--sign", "-"});
    CHECK(p.status == kOk);
    CHECK(p.json()["ok"] == true);
    CHECK(run({"ty", "fusion", "--group", "3"}).json()["labels"].size() == 4);
    auto e = run({"ty", "equiv", "--group", "2"}).json();
    CHECK(e["degenerate"] == true);
    CHECK(e["equal_rows"].is_array());
    CHECK(run({"ty", "equiv", "--group", "3"}).json()["degenerate"] == false);
    CHECK(run({"ty", "nimrep", "--group", "2x2"}).status == kOk);
    CHECK(run({"ty", "invariant", "--group", "3"}).status == kOk);
    CHECK(run({"ty", "invariant", "--group", "2"}).status == kInconsistent);
    CHECK(run({"ty", "hg", "--nu", "3"}).status == kOk);

    auto d = run({"lattice", "disc", "--name", "A1+E7"}).json();
    CHECK(d["det"] == 4);
    CHECK(d["milgram"] == true);
    auto glued = run({"lattice", "glue", "--name", "A1+A1+A1+A1", "--glue", "1/2,1/2,1/2,1/2"}).json();
    CHECK(glued["det"] == 4);
    CHECK(run({"lattice", "glue", "--name", "A2", "--glue", "1/3,2/3"}).status == kUsage);
    auto r = run({"lattice", "realize", "--form", "2^2_3"});
    CHECK(r.status == kOk);
    CHECK(r.json()["verified"] == true);
    CHECK(run({"lattice", "named", "--name", "E8"}).json()["det"] == 1);

    auto u = run({"groupoid", "corr", "--group", "2", "--from", "0", "--to", "1"}).json();
    CHECK(u["matrix"] == Json::parse("[[0,0],[1,0]]"));
    CHECK(run({"groupoid", "compose", "--group", "3", "--chain", "0,1;1,2"}).json()["ok"] == true);
    CHECK(run({"groupoid", "compose", "--random", "10"}).json()["failures"] == 0);

    auto prod = run({"invariants", "product", "--lattice", "sqrt2n:4", "--first", "0", "--second", "1"});
    CHECK(prod.status == kOk);
    CHECK(prod.json()["divisible"] == true);
}

TEST_CASE("output file")
{
    auto path = temp_path("out.json");
    std::remove(path.c_str());
    auto r = run({"weil", "--form", "2^1_1", "--out", path});
    CHECK(r.status == kOk);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream s;
    s << f.rdbuf();
    CHECK(s.str() == run({"weil", "--form", "2^1_1"}).out);
}
