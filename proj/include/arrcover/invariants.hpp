#ifndef ARRCOVER_INVARIANTS_HPP
#define ARRCOVER_INVARIANTS_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "covers.hpp"
#include "errors.hpp"
#include "homology.hpp"
#include "model.hpp"

namespace arrcover {

struct Letter
{
    int generator;
    int exponent;  // +1 or -1

    bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

struct GroupPresentation
{
    std::vector<std::string> generators;
    std::vector<Word> relators;
};

inline std::string word_to_string(const GroupPresentation& p, const Word& w)
{
    std::string out;
    for (const auto& l : w) {
        if (!out.empty())
            out += ' ';
        out += p.generators[l.generator];
        if (l.exponent < 0)
            out += "^-1";
    }
    return out;
}

/// `gens: ...` line followed by one `rel: ...` line per relator.
inline std::string to_text(const GroupPresentation& p)
{
    std::string out = "gens:";
    for (const auto& g : p.generators)
        out += " " + g;
    out += '\n';
    for (const auto& r : p.relators) {
        out += "rel:";
        if (!r.empty())
            out += " " + word_to_string(p, r);
        out += '\n';
    }
    return out;
}

/// Edges of a spanning forest of Theta, grown by BFS from the least
/// unvisited vertex; neighbours are visited in edge-index order.
inline std::vector<bool> spanning_forest(const OrientedGraph& g)
{
    std::vector<std::vector<int>> incident(g.size());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        incident[g.edge(e).source].push_back(static_cast<int>(e));
        if (g.edge(e).target != g.edge(e).source)
            incident[g.edge(e).target].push_back(static_cast<int>(e));
    }
    for (auto& list : incident)
        std::sort(list.begin(), list.end());
    std::vector<bool> tree(g.edge_count(), false), seen(g.size(), false);
    for (std::size_t root = 0; root < g.size(); ++root) {
        if (seen[root])
            continue;
        seen[root] = true;
        std::deque<int> queue{static_cast<int>(root)};
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (int e : incident[v]) {
                const int w = g.edge(e).source == v ? g.edge(e).target : g.edge(e).source;
                if (seen[w])
                    continue;
                seen[w] = true;
                tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    return tree;
}

/**
 * Presentation of pi_1 of the CW complex W_rho: generators are the edges of
 * Theta outside the spanning forest, and each 2-cell contributes the word of
 * its first boundary path times the inverse of the second.
 */
inline GroupPresentation pi1_presentation(const CoverModel& model, const CoverGraph& theta, const std::vector<CWCell>& cells)
{
    const auto& g = theta.graph();
    const auto tree = spanning_forest(g);
    GroupPresentation p;
    std::vector<int> gen_of(g.edge_count(), -1);
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (!tree[e]) {
            gen_of[e] = static_cast<int>(p.generators.size());
            p.generators.push_back("e" + std::to_string(e));
        }
    std::size_t ones = 0;
    for (const auto& cell : cells) {
        if (cell.element < 0 || static_cast<std::size_t>(cell.element) >= model.total.size() ||
            model.total.face[cell.element] != cell.face || model.total.vertex[cell.element] != cell.vertex)
            throw PreconditionError("cell does not belong to this model");
        if (cell.dim == 1)
            ++ones;
        if (cell.dim != 2)
            continue;
        const auto [first, second] = cell_boundary(model, theta, cell);
        std::vector<Step> loop = first.steps;
        const Path back = inverse(g, second);
        loop.insert(loop.end(), back.steps.begin(), back.steps.end());
        std::vector<Step> kept;
        for (const auto& s : loop)
            if (!tree[s.edge])
                kept.push_back(s);
        Word w;
        for (const auto& s : freely_reduce(kept))
            w.push_back({gen_of[s.edge], s.exponent});
        p.relators.push_back(std::move(w));
    }
    if (ones != g.edge_count())
        throw PreconditionError("1-cells do not match the edges of Theta");
    return p;
}

struct Abelianization
{
    long long free_rank = 0;
    std::vector<BigInt> torsion;  // invariant factors > 1
};

/// Smith normal form of the exponent-sum matrix (relators x generators).
inline Abelianization abelianization(const GroupPresentation& p)
{
    SparseMatrix m(p.relators.size(), p.generators.size());
    for (std::size_t r = 0; r < p.relators.size(); ++r)
        for (const auto& l : p.relators[r]) {
            if (l.generator < 0 || static_cast<std::size_t>(l.generator) >= p.generators.size())
                throw PreconditionError("relator letter is not a generator");
            m.add(static_cast<int>(r), l.generator, BigInt(l.exponent));
        }
    const auto factors = smith_invariants(m);
    Abelianization a;
    a.free_rank = static_cast<long long>(p.generators.size()) - static_cast<long long>(factors.size());
    for (const auto& f : factors)
        if (f > 1)
            a.torsion.push_back(f);
    return a;
}

}  // namespace arrcover

#endif
