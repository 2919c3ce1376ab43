#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "ktrunc/cli.hpp"

using namespace ktrunc;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("kgroups table") {
    const Run r = run({"kgroups", "--p", "2", "--e", "2", "--rmax", "2"});
    CHECK(r.code == exit_code::ok);
    CHECK(r.out.find("1       Z/2 ") != std::string::npos);
    CHECK(r.out.find("2       0 ") != std::string::npos);
    CHECK(r.out.find("3       Z/2 + Z/2 ") != std::string::npos);
}

TEST_CASE("kgroups json") {
    const Run r = run({"kgroups", "--p", "2", "--e", "3", "--rmax", "2", "--format", "json"});
    CHECK(r.code == exit_code::ok);
    const KGroupTable t = parse_json(r.out);
    CHECK(t.p == 2);
    CHECK(t.e == 3);
    CHECK(t.f == 1);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].factors == std::vector<std::uint64_t>{4});
    CHECK(t.rows[1].factors.empty());
    CHECK(t.rows[2].factors == std::vector<std::uint64_t>{2, 8});
}

TEST_CASE("kgroups single degree and residue degree") {
    const Run r = run({"kgroups", "--p", "3", "--e", "2", "--r", "1", "--f", "2", "--format", "json"});
    CHECK(r.code == exit_code::ok);
    const KGroupTable t = parse_json(r.out);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].degree == 1);
    CHECK(t.rows[0].factors == std::vector<std::uint64_t>{3, 3});
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(run({"kgroups", "--p", "4", "--e", "2"}).code == exit_code::usage);
    CHECK(run({"kgroups", "--p", "4", "--e", "2"}).err.find("not prime") != std::string::npos);
    CHECK(run({"kgroups", "--p", "2", "--e", "0"}).code == exit_code::usage);
    CHECK(run({"kgroups", "--p", "2", "--e", "2", "--rmax", "0"}).code == exit_code::usage);
    CHECK(run({"kgroups", "--p", "2", "--e", "2", "--r", "1", "--rmax", "2"}).code == exit_code::usage);
    CHECK(run({"kgroups", "--p", "2", "--e", "2", "--format", "xml"}).code == exit_code::usage);
    CHECK(run({"kgroups", "--e", "2"}).code == exit_code::usage);
    CHECK(run({"frobnicate"}).code == exit_code::usage);
    CHECK(run({}).code == exit_code::usage);
    CHECK(run({"hh", "--p", "6", "--e", "2", "--m", "1"}).code == exit_code::usage);
    CHECK(run({"hh", "--p", "2", "--e", "1", "--m", "1"}).code == exit_code::usage);
    CHECK(run({"verify", "--suite", "nope"}).code == exit_code::usage);
    CHECK(run({"ss", "--p", "2", "--e", "2", "--m", "1", "--mode", "sideways"}).code == exit_code::usage);
}

TEST_CASE("help exits cleanly") { CHECK(run({"--help"}).code == exit_code::ok); }

TEST_CASE("hh output") {
    const Run a = run({"hh", "--p", "2", "--e", "2", "--m", "1"});
    CHECK(a.code == exit_code::ok);
    CHECK(a.out.find("deg 0: 1, deg 1: 1, B = 1") != std::string::npos);
    const Run b = run({"hh", "--p", "2", "--e", "3", "--m", "3"});
    CHECK(b.out.find("all zero") != std::string::npos);
    const Run c = run({"hh", "--p", "2", "--e", "2", "--m", "2"});
    CHECK(c.out.find("deg 1: 1, deg 2: 1, B = 0") != std::string::npos);
    const Run d = run({"hh", "--p", "3", "--e", "4", "--mmax", "8", "--format", "json"});
    CHECK(d.code == exit_code::ok);
    CHECK(d.out.find("\"matches_lemma\":false") == std::string::npos);
}

TEST_CASE("ss output and page dump") {
    const Run r = run({"ss", "--p", "2", "--e", "2", "--m", "2", "--dump-page", "--min-degree", "-1",
                       "--max-degree", "1"});
    CHECK(r.code == exit_code::ok);
    CHECK(r.out.find("pi_1 = Z/2") != std::string::npos);
    CHECK(r.out.find("pi_0 = 0") != std::string::npos);
    CHECK(r.out.find("1: t^0 x^0 z_2 [survives]") != std::string::npos);
    CHECK(r.out.find("killed-by: d2(w_2)") != std::string::npos);

    const Run h = run({"ss", "--p", "3", "--e", "2", "--m", "9", "--mode", "hfp", "--format", "json"});
    CHECK(h.code == exit_code::ok);
    CHECK(h.out.find("\"mode\":\"hfp\"") != std::string::npos);
}

TEST_CASE("verify suites") {
    const Run w = run({"verify", "--suite", "witt"});
    CHECK(w.code == exit_code::ok);
    CHECK(w.out.find("PASS ghost-homomorphism") != std::string::npos);
    CHECK(w.out.find("routes") == std::string::npos);

    const Run r = run({"verify", "--suite", "routes", "--p", "2", "--e", "2", "--rmax", "4"});
    CHECK(r.code == exit_code::ok);
    CHECK(r.out.find("p=2 e=2 r=4") != std::string::npos);
    CHECK(r.out.find("PASS three-routes (4 cases)") != std::string::npos);
}

TEST_CASE("json round trip") {
    KGroupTable t{3, 4, 2, {{1, {3, 9}}, {2, {}}, {3, {3, 3, 27}}}};
    const std::string text = render_json(t);
    CHECK(parse_json(text) == t);
    CHECK(render_json(parse_json(text)) == text);
    CHECK(text == R"({"e":4,"f":2,"groups":[{"degree":1,"factors":[3,9]},{"degree":2,"factors":[]},)"
                  R"({"degree":3,"factors":[3,3,27]}],"p":3})");
    CHECK_THROWS_AS(parse_json("{\"p\": 2}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_json("not json"), std::invalid_argument);

    for (const char* e : {"2", "3", "4", "6"}) {
        const Run r = run({"kgroups", "--p", "3", "--e", e, "--rmax", "3", "--format", "json"});
        REQUIRE(r.code == exit_code::ok);
        CHECK(render_json(parse_json(r.out)) + "\n" == r.out);
    }
}

TEST_CASE("identical configuration gives identical output") {
    const std::vector<std::string> args = {"kgroups", "--p", "3", "--e", "6", "--rmax", "3", "--seed", "5"};
    CHECK(run(args).out == run(args).out);
    const std::vector<std::string> v = {"verify", "--suite", "equalizer", "--p", "3", "--e", "3", "--rmax",
                                        "2", "--seed", "9"};
    const Run a = run(v), b = run(v);
    CHECK(a.code == exit_code::ok);
    CHECK(a.out == b.out);
}
