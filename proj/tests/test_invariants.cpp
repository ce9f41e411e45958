#include <catch_amalgamated.hpp>

#include <random>

#include "arrcover/invariants.hpp"
#include "arrcover/properties.hpp"
#include "support.hpp"

using namespace arrcover;

namespace {

using Dense = std::vector<std::vector<BigInt>>;

BigInt det(Dense m)
{
    // Bareiss elimination.
    const std::size_t n = m.size();
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t r = k;
        while (r < n && m[r][k] == 0)
            ++r;
        if (r == n)
            return 0;
        if (r != k) {
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Invariant factors from determinantal divisors d_k = gcd of k x k minors.
std::vector<BigInt> factors_by_minors(const Dense& a)
{
    const std::size_t r = a.size(), c = a.empty() ? 0 : a[0].size();
    std::vector<BigInt> d{1};
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
        BigInt g = 0;
        std::vector<bool> rs(r, false), cs(c, false);
        std::fill(rs.begin(), rs.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
            std::fill(cs.begin(), cs.end(), false);
            std::fill(cs.begin(), cs.begin() + static_cast<std::ptrdiff_t>(k), true);
            do {
                Dense m;
                for (std::size_t i = 0; i < r; ++i) {
                    if (!rs[i])
                        continue;
                    m.emplace_back();
                    for (std::size_t j = 0; j < c; ++j)
                        if (cs[j])
                            m.back().push_back(a[i][j]);
                }
                const BigInt x = det(m);
                g = boost::multiprecision::gcd(g, x < 0 ? BigInt(-x) : x);
            } while (std::prev_permutation(cs.begin(), cs.end()));
        } while (std::prev_permutation(rs.begin(), rs.end()));
        if (g == 0)
            break;
        d.push_back(g);
    }
    std::vector<BigInt> out;
    for (std::size_t k = 1; k < d.size(); ++k)
        out.push_back(d[k] / d[k - 1]);
    return out;
}

SparseMatrix sparse(const Dense& a)
{
    SparseMatrix m(a.size(), a.empty() ? 0 : a[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (a[i][j] != 0)
                m.add(static_cast<int>(i), static_cast<int>(j), a[i][j]);
    return m;
}

}  // namespace

TEST_CASE("Smith invariants agree with determinantal divisors")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> entry(-4, 4), size(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
        const int r = size(rng), c = size(rng);
        Dense a(r, std::vector<BigInt>(c));
        for (auto& row : a)
            for (auto& x : row)
                x = (trial % 3 == 0) ? BigInt(2 * entry(rng)) : BigInt(entry(rng));
        auto expected = factors_by_minors(a);
        std::sort(expected.begin(), expected.end());
        CHECK(smith_invariants(sparse(a)) == expected);
        CHECK(rational_rank(sparse(a)) == expected.size());
    }
}

TEST_CASE("Euler characteristic and Betti numbers of small complexes")
{
    const SimplicialComplex square({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    CHECK(euler_characteristic(square) == 0);
    CHECK(betti_numbers(square) == std::vector<long long>{1, 1});
    const SimplicialComplex point({"p"}, {{0}});
    CHECK(euler_characteristic(point) == 1);
    const SimplicialComplex simplex({"a", "b", "c"}, {{0, 1, 2}});
    CHECK(betti_numbers(simplex) == std::vector<long long>{1, 0, 0});

    // Minimal triangulation of the real projective plane: H_1 = Z/2.
    const SimplicialComplex rp2({"1", "2", "3", "4", "5", "6"},
                                {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5}, {1, 2, 4},
                                 {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
    const auto h = homology(rp2);
    CHECK(h.betti == std::vector<long long>{1, 0, 0});
    CHECK(h.h1_invariant_factors == std::vector<BigInt>{2});
    CHECK(h.euler == 1);
}

TEST_CASE("two points in the line: chi = -1")
{
    const auto two = testing::load("twopoints");
    const auto w = *base_model(*two.gamma).complex;
    CHECK(euler_characteristic(w) == -1);
    CHECK(betti_numbers(w) == std::vector<long long>{1, 2});
}

TEST_CASE("pi1 presentations: examples")
{
    const auto point = testing::load("point");
    {
        const auto theta = identity_cover(point.gamma);
        const auto m = build_model(theta);
        const auto p = pi1_presentation(m, theta, cw_cells(m, *point.faces));
        CHECK(p.generators.size() == 1);
        CHECK(p.relators.empty());
        CHECK(abelianization(p).free_rank == 1);
    }
    const auto two = testing::load("twopoints");
    {
        const auto theta = identity_cover(two.gamma);
        const auto m = build_model(theta);
        const auto p = pi1_presentation(m, theta, cw_cells(m, *two.faces));
        CHECK(p.generators.size() == 2);
        CHECK(p.relators.empty());
    }
    const auto lines = testing::load("twolines");
    {
        const auto theta = identity_cover(lines.gamma);
        const auto m = build_model(theta);
        const auto p = pi1_presentation(m, theta, cw_cells(m, *lines.faces));
        CHECK(p.generators.size() == 5);
        CHECK(p.relators.size() == 4);
        const auto ab = abelianization(p);
        CHECK(ab.free_rank == 2);
        CHECK(ab.torsion.empty());
        // Text format.
        const std::string text = to_text(p);
        CHECK(text.rfind("gens: e", 0) == 0);
        CHECK(text.find("\nrel: ") != std::string::npos);
    }
}

TEST_CASE("abelianization of small presentations")
{
    GroupPresentation p{{"a"}, {}};
    CHECK(abelianization(p).free_rank == 1);
    p.relators.push_back({{0, 1}, {0, 1}});
    const auto ab = abelianization(p);
    CHECK(ab.free_rank == 0);
    CHECK(ab.torsion == std::vector<BigInt>{2});
    CHECK(to_text(p) == "gens: a\nrel: a a\n");
    GroupPresentation bad{{"a"}, {{{3, 1}}}};
    CHECK_THROWS_AS(abelianization(bad), PreconditionError);
}

TEST_CASE("spanning forest: deterministic BFS from the least vertex")
{
    const auto lines = testing::load("twolines");
    const auto& g = lines.gamma->graph();
    const auto tree = spanning_forest(g);
    CHECK(std::count(tree.begin(), tree.end(), true) == static_cast<long>(g.size()) - 1);
    CHECK(spanning_forest(g) == tree);
}

TEST_CASE("homology of the models against the Whitney oracle")
{
    const std::map<std::string, std::pair<std::vector<long long>, long long>> expected{
        {"point", {{1, 1}, 0}},        {"twopoints", {{1, 2}, -1}}, {"twolines", {{1, 2, 1}, 0}},
        {"threelines", {{1, 3, 2}, 0}}, {"generic", {{1, 3, 3}, 1}}, {"planes", {{1, 3, 3, 1}, 0}}};
    for (const auto& [name, values] : expected) {
        const auto l = testing::load(name);
        const auto w = *base_model(*l.gamma).complex;
        INFO(name);
        CHECK(trimmed(betti_numbers(w)) == values.first);
        CHECK(euler_characteristic(w) == values.second);
        std::vector<long long> whitney;
        for (const auto& x : intersection_poset(l.faces->arrangement()).whitney())
            whitney.push_back(static_cast<long long>(x));
        CHECK(whitney == values.first);
    }
}

TEST_CASE("presentation agrees with H_1 for covers")
{
    for (const char* name : {"point", "twopoints", "twolines", "threelines", "generic"}) {
        const auto l = testing::load(name);
        for (const std::string spec : {"winding:1", "winding:3", "crossing:2"}) {
            const auto theta = build_cover(l.gamma, deck_from_spec(*l.gamma, spec));
            const auto m = build_model(theta);
            const auto ab = abelianization(pi1_presentation(m, theta, cw_cells(m, *l.faces)));
            const auto h = homology(*m.total.complex);
            INFO(name << " " << spec);
            CHECK(ab.free_rank == (h.betti.size() > 1 ? h.betti[1] : 0));
            CHECK(ab.torsion == h.h1_invariant_factors);
        }
    }
}
