#include <catch_amalgamated.hpp>

#include "arrcover/oriented_system.hpp"
#include "arrcover/properties.hpp"
#include "support.hpp"

using namespace arrcover;

namespace {

std::string seq(const OrientedSystem& gamma, const Path& p)
{
    return to_string(gamma.graph(), p);
}

}  // namespace

TEST_CASE("gamma_of: vertices and edges")
{
    const auto point = testing::load("point");
    CHECK(point.gamma->size() == 2);
    CHECK(point.gamma->graph().edge_count() == 2);
    CHECK(point.gamma->graph().find_edge(point.chamber("-"), point.chamber("+")));
    CHECK(point.gamma->graph().find_edge(point.chamber("+"), point.chamber("-")));

    const auto empty = testing::load("empty");
    CHECK(empty.gamma->size() == 1);
    CHECK(empty.gamma->graph().edge_count() == 0);

    const auto two = testing::load("twopoints");
    CHECK(two.gamma->size() == 3);
    CHECK(two.gamma->graph().edge_count() == 4);
    CHECK_FALSE(two.gamma->graph().find_edge(two.chamber("--"), two.chamber("++")));
    CHECK(std::string(OrientedSystem::relation_kind) == "arrangement-minimal");
}

TEST_CASE("opposite edges pair up")
{
    for (const char* name : testing::corpus) {
        const auto l = testing::load(name);
        const auto& g = l.gamma->graph();
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            const int o = g.opposite(e);
            REQUIRE(o >= 0);
            CHECK(g.edge(o).source == g.edge(e).target);
            CHECK(g.edge(o).target == g.edge(e).source);
            CHECK(g.opposite(o) == static_cast<int>(e));
        }
    }
}

TEST_CASE("minimal_positive_path: examples")
{
    const auto point = testing::load("point");
    const Path ab = minimal_positive_path(*point.gamma, point.chamber("-"), point.chamber("+"));
    CHECK(ab.length() == 1);
    CHECK(seq(*point.gamma, ab) == "- +");
    CHECK(minimal_positive_path(*point.gamma, 0, 0).length() == 0);

    const auto lines = testing::load("twolines");
    const Path p = minimal_positive_path(*lines.gamma, lines.chamber("++"), lines.chamber("--"));
    CHECK(seq(*lines.gamma, p) == "++ -+ --");
    const auto all = all_minimal_positive_paths(*lines.gamma, lines.chamber("++"), lines.chamber("--"));
    REQUIRE(all.size() == 2);
    for (const auto& q : all)
        CHECK(is_positive_minimal(*lines.gamma, q));
}

TEST_CASE("is_positive_minimal")
{
    const auto point = testing::load("point");
    CHECK(is_positive_minimal(*point.gamma, parse_path(point.gamma->graph(), "- +")));
    CHECK_FALSE(is_positive_minimal(*point.gamma, parse_path(point.gamma->graph(), "- + -")));
    const auto lines = testing::load("twolines");
    CHECK(is_positive_minimal(*lines.gamma, parse_path(lines.gamma->graph(), "++ -+ --")));
    Path backwards = inverse(lines.gamma->graph(), parse_path(lines.gamma->graph(), "++ -+"));
    CHECK_FALSE(is_positive_minimal(*lines.gamma, backwards));
}

TEST_CASE("paths: inverse, concatenation and free reduction")
{
    const auto lines = testing::load("twolines");
    const auto& g = lines.gamma->graph();
    const Path p = parse_path(g, "++ -+ --");
    const Path q = inverse(g, p);
    CHECK(q.start == lines.chamber("--"));
    CHECK(path_end(g, q) == lines.chamber("++"));
    const Path loop = concat(g, p, q);
    CHECK(loop.length() == 4);
    CHECK(freely_reduce(loop.steps).empty());
    CHECK_THROWS_AS(concat(g, p, p), PreconditionError);
    CHECK_THROWS_AS(parse_path(g, "++ --"), ParseError);
    CHECK(to_string(g, parse_path(g, "+- ++ -+")) == "+- ++ -+");
}

TEST_CASE("relation_generators: examples")
{
    CHECK(relation_generators(*testing::load("point").gamma).empty());
    CHECK(relation_generators(*testing::load("twopoints").gamma).empty());

    const auto lines = testing::load("twolines");
    const auto rels = relation_generators(*lines.gamma);
    REQUIRE(rels.size() == 4);
    bool found = false;
    for (const auto& r : rels)
        if (r.chamber == lines.chamber("++")) {
            found = true;
            CHECK(seq(*lines.gamma, r.first) == "++ -+ --");
            CHECK(seq(*lines.gamma, r.second) == "++ +- --");
        }
    CHECK(found);

    const auto three = testing::load("threelines");
    const auto r3 = relation_generators(*three.gamma);
    CHECK(r3.size() == 6);
    for (const auto& r : r3) {
        CHECK(r.first.length() == 3);
        CHECK(r.second.length() == 3);
    }

    // Generic lines: three codim-2 points with 4 chambers each.
    CHECK(relation_generators(*testing::load("generic").gamma).size() == 12);
}

TEST_CASE("factor_via_chamber: examples")
{
    const auto lines = testing::load("twolines");
    const auto [a, b] =
        factor_via_chamber(*lines.gamma, lines.chamber("++"), lines.chamber("--"), lines.face("00"));
    CHECK(a.length() == 0);
    CHECK(b.length() == 2);
    const auto [e1, e2] = factor_via_chamber(*lines.gamma, lines.chamber("+-"), lines.chamber("+-"), lines.face("00"));
    CHECK(e1.length() == 0);
    CHECK(e2.length() == 0);
    CHECK_THROWS_AS(factor_via_chamber(*lines.gamma, lines.chamber("++"), lines.chamber("--"), lines.face("0+")),
                    PreconditionError);

    const auto two = testing::load("twopoints");
    const auto [alpha, beta] =
        factor_via_chamber(*two.gamma, two.chamber("--"), two.chamber("++"), two.face("+0"));
    CHECK(seq(*two.gamma, alpha) == "-- +-");
    CHECK(seq(*two.gamma, beta) == "+- ++");
}

TEST_CASE("path properties on the corpus, with brute-force path enumeration")
{
    for (const char* name : testing::corpus) {
        const auto l = testing::load(name);
        CheckList checks;
        check_paths(*l.gamma, std::string(name) != "planes", checks);
        for (const auto& c : checks.checks()) {
            INFO(name << ": " << c.name << " " << c.witness);
            CHECK(c.ok);
        }
    }
}

TEST_CASE("all positive paths of length |S| are minimal and cross S once")
{
    // Independent enumeration: every positive walk of the right length.
    for (const char* name : {"point", "twopoints", "twolines", "threelines"}) {
        const auto l = testing::load(name);
        const auto& g = l.gamma->graph();
        for (std::size_t u = 0; u < g.size(); ++u)
            for (std::size_t v = 0; v < g.size(); ++v) {
                const auto s = l.gamma->separating(static_cast<int>(u), static_cast<int>(v));
                std::size_t count = 0;
                Path cur{static_cast<int>(u), {}};
                auto walk = [&](auto&& self, int at) -> void {
                    if (cur.length() == s.size()) {
                        if (at != static_cast<int>(v))
                            return;
                        ++count;
                        std::vector<int> crossed;
                        for (const auto& st : cur.steps)
                            crossed.push_back(l.gamma->crossed_hyperplane(st.edge));
                        std::sort(crossed.begin(), crossed.end());
                        CHECK(crossed == s);
                        return;
                    }
                    for (int e : g.out_edges(at)) {
                        cur.steps.push_back({e, 1});
                        self(self, g.edge(e).target);
                        cur.steps.pop_back();
                    }
                };
                walk(walk, static_cast<int>(u));
                CHECK(count == all_minimal_positive_paths(*l.gamma, static_cast<int>(u), static_cast<int>(v)).size());
            }
    }
}
