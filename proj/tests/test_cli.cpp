#include <catch_amalgamated.hpp>

#include <sstream>

#include "arrcover/cli.hpp"
#include "support.hpp"

using arrcover::cli::run;

namespace {

struct Result
{
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string path(const char* name)
{
    return testing::corpus_path(name);
}

}  // namespace

TEST_CASE("cli: salvetti on one point is a 4-cycle")
{
    const auto r = call({"salvetti", path("point"), "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["iso_check"]["ok"] == true);
    CHECK(j["salvetti_direct"]["vertices"].size() == 4);
    CHECK(j["salvetti_direct"]["maximal_simplices"].size() == 4);
}

TEST_CASE("cli: faces of the empty arrangement")
{
    const auto r = call({"faces", path("empty")});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("faces: 1 (chambers 1)", 0) == 0);
}

TEST_CASE("cli: model with a crossing deck")
{
    const auto r = call({"model", path("twolines"), "--deck", "crossing:3"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("covering: ok") != std::string::npos);
    CHECK(r.out.find("fiber: 9") != std::string::npos);
}

TEST_CASE("cli: invariants, falk, universal, cover and verify succeed")
{
    CHECK(call({"invariants", path("twolines"), "--deck", "winding:3"}).code == 0);
    const auto falk = call({"falk", path("twolines")});
    CHECK(falk.code == 0);
    CHECK(falk.out.find("betti_falk: 1 2 1") != std::string::npos);
    const auto ball = call({"universal", path("point"), "--radius", "2"});
    CHECK(ball.code == 0);
    CHECK(ball.out.find("plim: 9 elements") != std::string::npos);
    CHECK(call({"cover", path("twolines"), "--deck", "winding:2", "--format", "dot"}).code == 0);
    CHECK(call({"verify", path("twopoints"), "--deck", "crossing:2"}).code == 0);
}

TEST_CASE("cli: output is deterministic")
{
    for (const char* cmd : {"faces", "salvetti", "model", "invariants"}) {
        const auto a = call({cmd, path("threelines"), "--format", "json"});
        const auto b = call({cmd, path("threelines"), "--format", "json"});
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("cli: input errors exit with 2")
{
    CHECK(call({"bogus", path("point")}).code == 2);
    CHECK(call({"model", path("point"), "--deck", "winding:zero"}).code == 2);
    CHECK(call({"faces", "/nonexistent/file.arr"}).code == 2);
    CHECK(call({"model", path("point"), "--format", "dot"}).code == 2);
    CHECK(call({"faces"}).code == 2);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("cli: a deck violating a relation is a verification failure")
{
    const auto lines = testing::load("twolines");
    auto deck = arrcover::winding_labeling(*lines.gamma, 2);
    for (auto& l : deck.labels)
        l = arrcover::Permutation::identity(2);
    deck.labels[0] = arrcover::Permutation({1, 0});
    const std::string file = std::string(ARRCOVER_BINARY_DIR) + "/bad_deck.txt";
    std::ofstream(file) << arrcover::deck_to_text(*lines.gamma, deck);
    const auto r = call({"verify", path("twolines"), "--deck", file});
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
    for (const char* cmd : {"cover", "model", "invariants"}) {
        const auto m = call({cmd, path("twolines"), "--deck", file});
        CHECK(m.code == 1);
        CHECK(m.err.find("breaks the relation") != std::string::npos);
    }
}
