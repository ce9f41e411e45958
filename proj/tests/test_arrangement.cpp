#include <catch_amalgamated.hpp>

#include <set>

#include "arrcover/arrangement.hpp"
#include "arrcover/properties.hpp"
#include "support.hpp"

using namespace arrcover;

namespace {

// Sign vectors seen on a rational grid; a fine enough grid meets every face
// of the small planar arrangements used here.
std::set<std::string> grid_faces(const Arrangement& a, int range, int denominator)
{
    std::set<std::string> seen;
    const int steps = 2 * range * denominator;
    if (a.dim() == 1) {
        for (int i = 0; i <= steps; ++i)
            seen.insert(to_string(a.signs_at({Rational(i - range * denominator, denominator)})));
    } else {
        for (int i = 0; i <= steps; ++i)
            for (int j = 0; j <= steps; ++j)
                seen.insert(to_string(a.signs_at(
                    {Rational(i - range * denominator, denominator), Rational(j - range * denominator, denominator)})));
    }
    return seen;
}

std::set<std::string> enumerated(const FacePoset& f)
{
    std::set<std::string> out;
    for (const auto& face : f.faces())
        out.insert(face.str());
    return out;
}

}  // namespace

TEST_CASE("rationals parse exactly and reduce")
{
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(to_string(parse_rational("-10/4")) == "-5/2");
    CHECK_THROWS_AS(parse_rational("10/-4"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("parse_arrangement: file format and errors")
{
    const auto point = parse_arrangement(std::string("# one point\ndim 1\nH 1 0\n"));
    CHECK(point.dim() == 1);
    CHECK(point.size() == 1);

    const auto empty = parse_arrangement(std::string("dim 1\n"));
    CHECK(empty.size() == 0);

    CHECK_THROWS_AS(parse_arrangement(std::string("dim 2\nH 1 0 0\nH 2 0 0\n")), ParseError);
    CHECK_THROWS_AS(parse_arrangement(std::string("dim 2\nH 0 0 1\n")), ParseError);
    CHECK_THROWS_AS(parse_arrangement(std::string("H 1 0\n")), ParseError);
    CHECK_THROWS_AS(parse_arrangement(std::string("# nothing\n")), ParseError);
    CHECK_THROWS_AS(parse_arrangement(std::string("dim 2\nH 1 a 0\n")), ParseError);
    CHECK_THROWS_AS(parse_arrangement(std::string("dim 2\nH 1 0\n")), ParseError);
}

TEST_CASE("canonicalization: primitive integers, positive leading entry")
{
    const auto a = parse_arrangement(std::string("dim 2\nH -2/3 4/3 2\n"));
    CHECK(a[0].normal == RationalVector{Rational(1), Rational(-2)});
    CHECK(a[0].offset == Rational(-3));
    // Round trip through the text form.
    const auto b = parse_arrangement(a.to_text());
    CHECK(b[0].normal == a[0].normal);
    CHECK(b[0].offset == a[0].offset);
    // Sides follow the canonical orientation.
    CHECK(a[0].side({Rational(0), Rational(0)}) == Sign::Plus);
}

TEST_CASE("enumerate_faces: worked examples")
{
    const auto point = testing::load("point");
    REQUIRE(point.faces->size() == 3);
    CHECK((*point.faces)[0].str() == "0");
    CHECK((*point.faces)[1].str() == "-");
    CHECK((*point.faces)[2].str() == "+");
    CHECK(point.faces->greater(0, 1));
    CHECK(point.faces->greater(0, 2));
    CHECK_FALSE(point.faces->geq(1, 2));

    const auto empty = testing::load("empty");
    REQUIRE(empty.faces->size() == 1);
    CHECK((*empty.faces)[0].is_chamber());
    CHECK((*empty.faces)[0].codim == 0);

    const auto lines = testing::load("twolines");
    REQUIRE(lines.faces->size() == 9);
    CHECK(lines.faces->chambers().size() == 4);
    int rays = 0;
    for (const auto& f : lines.faces->faces())
        rays += f.codim == 1;
    CHECK(rays == 4);
    CHECK((*lines.faces)[lines.face("00")].codim == 2);
}

TEST_CASE("enumerate_faces agrees with grid sampling")
{
    for (const char* name : {"point", "twopoints", "twolines", "threelines", "generic"}) {
        const auto l = testing::load(name);
        INFO(name);
        CHECK(grid_faces(l.faces->arrangement(), 3, 4) == enumerated(*l.faces));
    }
}

TEST_CASE("enumerate_faces agrees with brute force over all sign vectors")
{
    for (const char* name : testing::corpus) {
        const auto l = testing::load(name);
        CheckList checks;
        check_faces(*l.faces, true, checks);
        for (const auto& c : checks.checks()) {
            INFO(name << ": " << c.name << " " << c.witness);
            CHECK(c.ok);
        }
    }
}

TEST_CASE("compose: examples")
{
    const auto lines = testing::load("twolines");
    CHECK((*lines.faces)[lines.faces->compose(lines.face("00"), lines.face("+-"))].str() == "+-");
    CHECK((*lines.faces)[lines.faces->compose(lines.face("0+"), lines.face("--"))].str() == "-+");
    CHECK_THROWS_AS(compose(parse_signs("0+"), parse_signs("+")), PreconditionError);

    const auto point = testing::load("point");
    CHECK(point.faces->compose(point.face("0"), point.face("-")) == point.face("-"));
    CHECK(point.faces->compose(point.face("0"), point.face("+")) == point.face("+"));
}

TEST_CASE("compose: laws and geometric oracle on the corpus")
{
    for (const char* name : testing::corpus) {
        const auto l = testing::load(name);
        CheckList checks;
        check_composition(*l.faces, checks);
        for (const auto& c : checks.checks()) {
            INFO(name << ": " << c.name << " " << c.witness);
            CHECK(c.ok);
        }
    }
}

TEST_CASE("separating_set and opposite_chamber")
{
    const auto point = testing::load("point");
    const auto& pf = *point.faces;
    CHECK(separating_set(pf[point.face("-")], pf[point.face("+")]) == std::vector<int>{0});
    CHECK(separating_set(pf[point.face("-")], pf[point.face("-")]).empty());
    CHECK_THROWS_AS(separating_set(pf[point.face("0")], pf[point.face("+")]), PreconditionError);

    const auto lines = testing::load("twolines");
    const auto& lf = *lines.faces;
    CHECK(separating_set(lf[lines.face("++")], lf[lines.face("--")]) == std::vector<int>{0, 1});
    CHECK(to_string(opposite_chamber(lf[lines.face("00")], lf[lines.face("++")])) == "--");
    CHECK(to_string(opposite_chamber(lf[lines.face("0+")], lf[lines.face("++")])) == "-+");
    CHECK(to_string(opposite_chamber(lf[lines.face("+-")], lf[lines.face("+-")])) == "+-");
    CHECK_THROWS_AS(opposite_chamber(lf[lines.face("0+")], lf[lines.face("--")]), PreconditionError);
    CHECK_THROWS_AS(opposite_chamber(lf[lines.face("00")], lf[lines.face("0+")]), PreconditionError);
}

TEST_CASE("localize")
{
    const auto point = testing::load("point");
    const auto loc = localize(*point.faces, point.face("0"));
    CHECK(loc.support == std::vector<int>{0});
    CHECK(loc.ideal == std::vector<int>{0, 1, 2});
    CHECK(localize(*point.faces, point.face("+")).ideal == std::vector<int>{point.face("+")});
    CHECK(localize(*point.faces, point.face("+")).support.empty());

    const auto lines = testing::load("twolines");
    const auto l2 = localize(*lines.faces, lines.face("0+"));
    CHECK(l2.support == std::vector<int>{0});
    std::set<std::string> ideal;
    for (int f : l2.ideal)
        ideal.insert((*lines.faces)[f].str());
    CHECK(ideal == std::set<std::string>{"0+", "++", "-+"});
}

TEST_CASE("intersection_poset: Moebius values and Whitney numbers")
{
    const auto lines = testing::load("twolines");
    const auto lp = intersection_poset(lines.faces->arrangement());
    REQUIRE(lp.flats.size() == 4);
    std::vector<BigInt> mu;
    for (const auto& f : lp.flats)
        mu.push_back(f.mobius);
    CHECK(mu == std::vector<BigInt>{1, -1, -1, 1});
    CHECK(lp.whitney() == std::vector<BigInt>{1, 2, 1});

    CHECK(intersection_poset(testing::load("empty").faces->arrangement()).whitney() == std::vector<BigInt>{1});
    CHECK(intersection_poset(testing::load("twopoints").faces->arrangement()).whitney() == std::vector<BigInt>{1, 2});
}

TEST_CASE("face poset is a partial order with chambers minimal")
{
    for (const char* name : testing::corpus) {
        const auto l = testing::load(name);
        const auto& f = *l.faces;
        INFO(name);
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = 0; j < f.size(); ++j) {
                if (i != j)
                    CHECK_FALSE((f.geq(i, j) && f.geq(j, i)));
                for (std::size_t k = 0; k < f.size(); ++k)
                    if (f.geq(i, j) && f.geq(j, k))
                        CHECK(f.geq(i, k));
            }
    }
}
