#include <catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "arrcover/covers.hpp"
#include "arrcover/properties.hpp"
#include "support.hpp"

using namespace arrcover;

TEST_CASE("permutations")
{
    const Permutation p({1, 2, 0});
    CHECK(p(0) == 1);
    CHECK(p.inverse()(1) == 0);
    CHECK(p.then(p.inverse()) == Permutation::identity(3));
    CHECK(p.then(p)(0) == 2);
    CHECK_THROWS_AS(Permutation({0, 0}), PreconditionError);
}

TEST_CASE("winding labeling on one point")
{
    const auto point = testing::load("point");
    const auto deck = winding_labeling(*point.gamma, 3);
    CHECK(deck.degree == 3);
    CHECK(validate_deck(*point.gamma, deck).ok);
    const CoverGraph theta = build_cover(point.gamma, deck);
    CHECK(theta.size() == 6);
    CHECK(theta.component_count() == 1);
    CHECK(theta.fiber_size(0) == 3);

    // The directed 6-cycle (A,0) -> (B,1) -> (A,2) -> (B,0) -> (A,1) -> (B,2) -> (A,0).
    const int a = point.chamber("-");
    std::vector<std::string> cycle;
    int v = theta.fiber(a).front();
    for (int i = 0; i < 6; ++i) {
        cycle.push_back(theta.graph().label(v));
        REQUIRE(theta.graph().out_edges(v).size() == 1);
        v = theta.graph().edge(theta.graph().out_edges(v).front()).target;
    }
    CHECK(cycle == std::vector<std::string>{"-#0", "+#1", "-#2", "+#0", "-#1", "+#2"});

    const auto two = build_cover(point.gamma, winding_labeling(*point.gamma, 2));
    CHECK(two.component_count() == 2);

    const auto one = build_cover(point.gamma, winding_labeling(*point.gamma, 1));
    CHECK(one.size() == point.gamma->size());
    CHECK(one.graph().edge_count() == point.gamma->graph().edge_count());
}

TEST_CASE("crossing labeling on two lines")
{
    const auto lines = testing::load("twolines");
    const auto three = build_cover(lines.gamma, crossing_labeling(*lines.gamma, 3));
    CHECK(three.size() == 36);
    CHECK(three.component_count() == 1);
    CHECK(three.fiber_size(0) == 9);

    const auto two = build_cover(lines.gamma, crossing_labeling(*lines.gamma, 2));
    CHECK(two.size() == 16);
    CHECK(two.component_count() == 4);
    for (int c = 0; c < 4; ++c)
        CHECK(two.fiber_size(c) == 1);

    const auto one = build_cover(lines.gamma, crossing_labeling(*lines.gamma, 1));
    CHECK(one.size() == 4);
}

TEST_CASE("validate_deck: a transposition on one arc breaks a relation")
{
    const auto lines = testing::load("twolines");
    auto deck = winding_labeling(*lines.gamma, 2);
    for (auto& l : deck.labels)
        l = Permutation::identity(2);
    const auto e = lines.gamma->graph().find_edge(lines.chamber("++"), lines.chamber("-+"));
    REQUIRE(e);
    deck.labels[*e] = Permutation({1, 0});
    const auto report = validate_deck(*lines.gamma, deck);
    CHECK_FALSE(report.ok);
    REQUIRE(!report.violations.empty());
    // The relabelled arc ++ -> -+ lies on the square at ++ and on the one at +-.
    std::set<std::string> starts;
    for (const auto& v : report.violations) {
        CHECK(v.first.start == v.second.start);
        starts.insert(lines.gamma->graph().label(v.first.start));
    }
    CHECK(starts.contains("++"));
    CHECK_THROWS_AS(build_cover(lines.gamma, deck), PreconditionError);

    auto missing = winding_labeling(*lines.gamma, 2);
    missing.labels[0].reset();
    CHECK_THROWS_AS(validate_deck(*lines.gamma, missing), PreconditionError);
}

TEST_CASE("validate_deck: anything goes without codim-2 faces")
{
    const auto point = testing::load("point");
    auto deck = winding_labeling(*point.gamma, 3);
    deck.labels[0] = Permutation({2, 0, 1});
    deck.labels[1] = Permutation({0, 2, 1});
    CHECK(validate_deck(*point.gamma, deck, true).ok);
}

TEST_CASE("deck files round trip")
{
    const auto lines = testing::load("twolines");
    const auto deck = crossing_labeling(*lines.gamma, 2);
    std::istringstream in(deck_to_text(*lines.gamma, deck));
    const auto back = parse_deck(in, *lines.gamma);
    CHECK(back.degree == deck.degree);
    for (std::size_t e = 0; e < deck.labels.size(); ++e)
        CHECK(back.at(static_cast<int>(e)) == deck.at(static_cast<int>(e)));

    std::istringstream bad("deck 2\nedge ++ -- perm 0 1\n");
    CHECK_THROWS_AS(parse_deck(bad, *lines.gamma), ParseError);
    std::istringstream short_perm("deck 2\nedge ++ -+ perm 0\n");
    CHECK_THROWS_AS(parse_deck(short_perm, *lines.gamma), ParseError);
    CHECK_THROWS_AS(deck_from_spec(*lines.gamma, "winding:x"), ParseError);
    CHECK_THROWS_AS(deck_from_spec(*lines.gamma, "winding:0"), ParseError);
}

TEST_CASE("lifting: examples")
{
    const auto point = testing::load("point");
    const auto theta = build_cover(point.gamma, winding_labeling(*point.gamma, 3));
    const auto& g = theta.graph();
    int v = -1;
    for (std::size_t i = 0; i < theta.size(); ++i)
        if (g.label(i) == "-#0")
            v = static_cast<int>(i);
    REQUIRE(v >= 0);
    const Path ab = minimal_positive_path(*point.gamma, point.chamber("-"), point.chamber("+"));
    const Path lifted = theta.lift_path(v, ab);
    CHECK(g.label(path_end(g, lifted)) == "+#1");
    CHECK(theta.lift_path(v, Path{point.chamber("-"), {}}).start == v);
    const int w = path_end(g, lifted);
    CHECK(theta.v_of(point.chamber("-"), w) == v);
    CHECK_THROWS_AS(theta.lift_path(w, ab), PreconditionError);
}

TEST_CASE("cover properties on the corpus")
{
    for (const char* name : {"point", "twopoints", "twolines", "threelines"}) {
        const auto l = testing::load(name);
        for (const std::string spec : {"winding:1", "winding:2", "winding:3", "crossing:2", "crossing:3"}) {
            const auto deck = deck_from_spec(*l.gamma, spec);
            CheckList checks;
            check_cover(build_cover(l.gamma, deck), deck, true, checks);
            for (const auto& c : checks.checks()) {
                INFO(name << " " << spec << ": " << c.name << " " << c.witness);
                CHECK(c.ok);
            }
        }
    }
}

TEST_CASE("universal cover ball")
{
    const auto point = testing::load("point");
    const auto ball = universal_cover_ball(point.gamma, 2);
    CHECK(ball.exact());
    CHECK_FALSE(ball.complete());
    // Radius 2 from A: A, then B reached by e and by the reverse edge, then A again twice.
    CHECK(ball.size() == 5);
    CHECK(universal_cover_ball(point.gamma, 0).size() == 1);
    CHECK_THROWS_AS(universal_cover_ball(point.gamma, -1), PreconditionError);

    const auto two = testing::load("twopoints");
    const auto tb = universal_cover_ball(two.gamma, 2);
    CHECK(tb.exact());
    // Words of length <= 2 in the free tree over Gamma: 1 + 2 + 6.
    CHECK(tb.size() == 9);

    const auto lines = testing::load("twolines");
    CHECK_FALSE(universal_cover_ball(lines.gamma, 2).exact());
}
