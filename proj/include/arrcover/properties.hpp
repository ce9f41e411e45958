#ifndef ARRCOVER_PROPERTIES_HPP
#define ARRCOVER_PROPERTIES_HPP

#include <algorithm>
#include <deque>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arrangement.hpp"
#include "covers.hpp"
#include "diagrams.hpp"
#include "homology.hpp"
#include "invariants.hpp"
#include "model.hpp"
#include "oriented_system.hpp"

namespace arrcover {

struct Check
{
    std::string name;
    bool ok = true;
    std::string witness;  // first failure, empty when ok
};

/// Collects named checks; within one check only the first failure is kept.
class CheckList
{
public:
    Check& open(const std::string& name)
    {
        checks_.push_back({name, true, {}});
        return checks_.back();
    }

    static void expect(Check& c, bool cond, const std::string& witness)
    {
        if (!cond && c.ok) {
            c.ok = false;
            c.witness = witness;
        }
    }

    const std::deque<Check>& checks() const { return checks_; }
    bool ok() const
    {
        return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.ok; });
    }

private:
    std::deque<Check> checks_;
};

/// Signs at w + eps (p - w) for eps small enough that no nonzero sign at w flips.
inline SignVector signs_near(const Arrangement& a, const RationalVector& w, const RationalVector& p)
{
    RationalVector dir(w.size());
    for (std::size_t k = 0; k < w.size(); ++k)
        dir[k] = p[k] - w[k];
    Rational eps = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Rational value = dot(a[i].normal, w) - a[i].offset;
        const Rational slope = dot(a[i].normal, dir);
        if (value == 0 || slope == 0)
            continue;
        const Rational bound = abs(value) / (2 * abs(slope));
        if (bound < eps)
            eps = bound;
    }
    RationalVector x(w.size());
    for (std::size_t k = 0; k < w.size(); ++k)
        x[k] = w[k] + eps * dir[k];
    return a.signs_at(x);
}

inline void check_faces(const FacePoset& faces, bool exhaustive, CheckList& out)
{
    const auto& a = faces.arrangement();
    auto& sample = out.open("faces: sample points realize their sign vectors");
    for (const auto& f : faces.faces()) {
        CheckList::expect(sample, a.signs_at(f.sample) == f.signs, f.str());
        std::vector<int> zeros;
        for (std::size_t i = 0; i < f.signs.size(); ++i)
            if (f.signs[i] == Sign::Zero)
                zeros.push_back(static_cast<int>(i));
        CheckList::expect(sample, static_cast<std::size_t>(f.codim) == a.normal_rank(zeros), "codim of " + f.str());
    }

    auto& minimal = out.open("faces: chambers are exactly the minimal elements");
    const auto mins = faces.poset().minimal_elements();
    std::set<int> min_set(mins.begin(), mins.end());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        CheckList::expect(minimal, faces.is_chamber(f) == min_set.contains(static_cast<int>(f)), faces[f].str());
        CheckList::expect(minimal, !faces.chambers_below(f).empty(), faces[f].str() + " lies over no chamber");
    }

    auto& order = out.open("faces: sign order agrees with closure containment");
    for (std::size_t i = 0; i < faces.size(); ++i)
        for (std::size_t j = 0; j < faces.size(); ++j) {
            const bool sign_rule = face_geq(faces[i].signs, faces[j].signs);
            const bool geometric = in_closure(a, faces[j].signs, faces[i].sample);
            CheckList::expect(order, faces.geq(i, j) == sign_rule && sign_rule == geometric,
                              faces[i].str() + " vs " + faces[j].str());
        }

    if (exhaustive) {
        auto& brute = out.open("faces: brute force over all sign vectors");
        const std::size_t n = a.size();
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i)
            total *= 3;
        std::size_t found = 0;
        for (std::size_t code = 0; code < total; ++code) {
            SignVector s(n);
            std::size_t c = code;
            for (std::size_t i = 0; i < n; ++i, c /= 3)
                s[i] = sign_from_int(static_cast<int>(c % 3) - 1);
            const bool feasible = realize(a, s).has_value();
            found += feasible;
            CheckList::expect(brute, feasible == faces.find(s).has_value(), to_string(s));
        }
        CheckList::expect(brute, found == faces.size(), "face count");
    }
}

inline void check_composition(const FacePoset& faces, CheckList& out)
{
    const auto& a = faces.arrangement();
    auto& geo = out.open("compose: sign rule agrees with the geometric oracle");
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (std::size_t p = 0; p < faces.size(); ++p)
            CheckList::expect(geo, signs_near(a, faces[f].sample, faces[p].sample) == faces[faces.compose(f, p)].signs,
                              faces[f].str() + " o " + faces[p].str());

    auto& c1 = out.open("compose: F1 o F2 = F2 for F1 >= F2");
    auto& c2 = out.open("compose: F o C is a chamber");
    auto& c3 = out.open("compose: (C_F1)_F2 = C_(F1 o F2)");
    for (std::size_t f1 = 0; f1 < faces.size(); ++f1)
        for (std::size_t f2 = 0; f2 < faces.size(); ++f2) {
            const std::string w = faces[f1].str() + ", " + faces[f2].str();
            if (faces.geq(f1, f2))
                CheckList::expect(c1, faces.compose(f1, f2) == static_cast<int>(f2), w);
            for (int c : faces.chambers()) {
                if (f2 == 0)
                    CheckList::expect(c2, faces.is_chamber(faces.compose(f1, c)), faces[f1].str() + " o " + faces[c].str());
                CheckList::expect(c3, faces.compose(f2, faces.compose(f1, c)) == faces.compose(faces.compose(f2, f1), c),
                                  w + ", " + faces[c].str());
                if (faces.geq(f1, f2))
                    CheckList::expect(c3, faces.compose(f2, faces.compose(f1, c)) == faces.compose(f2, c),
                                      w + ", " + faces[c].str());
            }
        }

    auto& opp = out.open("opposite_chamber: realizable, below F, involution");
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (int c : faces.chambers_below(f)) {
            const int o = opposite_chamber(faces, static_cast<int>(f), c);
            CheckList::expect(opp, faces.is_chamber(o) && faces.geq(f, o), faces[f].str() + ", " + faces[c].str());
            CheckList::expect(opp, opposite_chamber(faces, static_cast<int>(f), o) == c,
                              faces[f].str() + ", " + faces[c].str());
        }
}

/// Are all positive minimal paths from u to v linked by substitutions of
/// one arc of a generating pair for the other?
inline bool minimal_paths_connected(const OrientedSystem& gamma, const std::vector<RelationPair>& rels, int u, int v)
{
    const auto& g = gamma.graph();
    const auto paths = all_minimal_positive_paths(gamma, u, v);
    if (paths.size() <= 1)
        return true;
    std::vector<std::vector<int>> seqs;
    for (const auto& p : paths)
        seqs.push_back(vertices_along(g, p));
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < seqs.size(); ++i)
        index.emplace(seqs[i], static_cast<int>(i));
    std::vector<std::pair<std::vector<int>, std::vector<int>>> swaps;
    for (const auto& r : rels) {
        swaps.emplace_back(vertices_along(g, r.first), vertices_along(g, r.second));
        swaps.emplace_back(vertices_along(g, r.second), vertices_along(g, r.first));
    }
    std::vector<bool> seen(seqs.size(), false);
    std::deque<int> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        const auto cur = seqs[queue.front()];
        queue.pop_front();
        for (const auto& [from, to] : swaps)
            for (std::size_t i = 0; i + from.size() <= cur.size(); ++i) {
                if (!std::equal(from.begin(), from.end(), cur.begin() + static_cast<std::ptrdiff_t>(i)))
                    continue;
                auto next = cur;
                std::copy(to.begin(), to.end(), next.begin() + static_cast<std::ptrdiff_t>(i));
                auto it = index.find(next);
                if (it != index.end() && !seen[it->second]) {
                    seen[it->second] = true;
                    queue.push_back(it->second);
                }
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

inline void check_paths(const OrientedSystem& gamma, bool exhaustive, CheckList& out)
{
    const auto& g = gamma.graph();
    const auto& faces = gamma.faces();
    auto& adj = out.open("gamma: edges are exactly the adjacent chamber pairs");
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v = 0; v < g.size(); ++v) {
            const bool adjacent = gamma.separating(static_cast<int>(u), static_cast<int>(v)).size() == 1;
            CheckList::expect(adj, adjacent == g.find_edge(static_cast<int>(u), static_cast<int>(v)).has_value(),
                              g.label(u) + " " + g.label(v));
        }

    auto& minimal = out.open("paths: canonical minimal path has length |S|");
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v = 0; v < g.size(); ++v) {
            const Path p = minimal_positive_path(gamma, static_cast<int>(u), static_cast<int>(v));
            CheckList::expect(minimal, is_positive_minimal(gamma, p) && path_end(g, p) == static_cast<int>(v),
                              to_string(g, p));
        }

    const auto rels = relation_generators(gamma);
    auto& gens = out.open("paths: generating pairs are positive minimal with equal ends");
    for (const auto& r : rels) {
        const std::string w = to_string(g, r.first) + " | " + to_string(g, r.second);
        CheckList::expect(gens, r.first.start == r.second.start && path_end(g, r.first) == path_end(g, r.second), w);
        CheckList::expect(gens, is_positive_minimal(gamma, r.first) && is_positive_minimal(gamma, r.second), w);
        CheckList::expect(gens, !(r.first == r.second), w);
    }

    auto& factor = out.open("paths: factor_via_chamber lengths add up to |S|");
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (std::size_t c1 = 0; c1 < g.size(); ++c1)
            for (int c2face : faces.chambers_below(f)) {
                const int c2 = gamma.vertex_of_face(c2face);
                const auto [alpha, beta] = factor_via_chamber(gamma, static_cast<int>(c1), c2, static_cast<int>(f));
                const Path joined = concat(g, alpha, beta);
                CheckList::expect(factor, is_positive_minimal(gamma, joined),
                                  faces[f].str() + ": " + to_string(g, joined));
            }

    if (exhaustive) {
        auto& conn = out.open("paths: minimal paths are linked by generator substitutions");
        for (std::size_t u = 0; u < g.size(); ++u)
            for (std::size_t v = 0; v < g.size(); ++v)
                CheckList::expect(conn, minimal_paths_connected(gamma, rels, static_cast<int>(u), static_cast<int>(v)),
                                  g.label(u) + " -> " + g.label(v));
    }
}

inline std::string betti_string(const std::vector<long long>& b)
{
    std::string s = "(";
    for (std::size_t i = 0; i < b.size(); ++i)
        s += (i ? "," : "") + std::to_string(b[i]);
    return s + ")";
}

inline std::vector<long long> trimmed(std::vector<long long> b)
{
    while (b.size() > 1 && b.back() == 0)
        b.pop_back();
    return b;
}

inline void check_models(const OrientedSystem& gamma, CheckList& out)
{
    const auto& faces = gamma.faces();
    const DiagramModel w = base_model(gamma);
    const auto direct = salvetti_direct(faces);
    auto& iso = out.open("salvetti: Delta(Plim D_id) equals the direct Salvetti complex");
    const auto r = iso_check(*w.complex, direct);
    CheckList::expect(iso, r.ok, r.witness ? "simplex of size " + std::to_string(r.witness->size()) : "");

    auto& chains = out.open("diagrams: chamber coordinate along Plim D_id chains is F o C_top");
    const auto& pl = w.plim.poset;
    for (std::size_t i = 0; i < pl.size(); ++i)
        for (std::size_t j = 0; j < pl.size(); ++j)
            if (pl.geq(i, j))
                CheckList::expect(chains,
                                  w.vertex[j] == gamma.vertex_of_face(faces.compose(w.face[j], gamma.face_of(w.vertex[i]))),
                                  pl.label(i) + " > " + pl.label(j));

    const auto betti = trimmed(betti_numbers(*w.complex));
    auto& euler = out.open("homology: alternating Betti sum equals Euler characteristic");
    long long alt = 0;
    for (std::size_t k = 0; k < betti.size(); ++k)
        alt += (k % 2 ? -1 : 1) * betti[k];
    CheckList::expect(euler, alt == euler_characteristic(*w.complex), betti_string(betti));

    auto& whitney = out.open("homology: Betti numbers match Whitney numbers of L(A)");
    std::vector<long long> wn;
    for (const auto& x : intersection_poset(faces.arrangement()).whitney())
        wn.push_back(static_cast<long long>(x));
    CheckList::expect(whitney, trimmed(wn) == betti, betti_string(betti) + " vs " + betti_string(wn));

    auto& mu = out.open("diagrams: Betti of Plim mu*D_id equals Betti of Plim D_id");
    const auto mb = trimmed(betti_numbers(order_complex(plim(mu_star(diagram_id(faces))).poset)));
    CheckList::expect(mu, mb == betti, betti_string(mb));

    auto& falk = out.open("diagrams: Betti of Plim E equals Betti of Plim D_id");
    const auto fb = trimmed(betti_numbers(order_complex(plim(diagram_falk(faces)).poset)));
    CheckList::expect(falk, fb == betti, betti_string(fb));
}

/// Checks that depend on a cover Theta built from a deck labeling.
inline void check_cover(const CoverGraph& theta, const DeckLabeling& deck, bool exhaustive, CheckList& out)
{
    const auto& gamma = theta.base();
    const auto& bg = gamma.graph();
    const auto& g = theta.graph();

    auto& valid = out.open("cover: deck labeling respects the generating relations");
    const auto report = validate_deck(gamma, deck, exhaustive);
    CheckList::expect(valid, report.ok,
                      report.violations.empty() ? "" : to_string(bg, report.violations.front().first) + " | " +
                                                          to_string(bg, report.violations.front().second));

    auto& lifts = out.open("cover: unique path lifting and projection of lifts");
    const std::size_t max_len = exhaustive ? 4 : 2;
    for (std::size_t v = 0; v < theta.size(); ++v) {
        Path base{theta.projection(static_cast<int>(v)), {}};
        auto walk = [&](auto&& self, int at) -> void {
            const auto lifted = theta.try_lift(static_cast<int>(v), base);
            CheckList::expect(lifts, lifted.has_value(), g.label(v) + ": " + to_string(bg, base));
            if (lifted) {
                Path projected{theta.projection(lifted->start), {}};
                for (const auto& s : lifted->steps)
                    projected.steps.push_back({theta.edge_projection(s.edge), s.exponent});
                CheckList::expect(lifts, projected == base, g.label(v) + ": " + to_string(bg, base));
            }
            if (base.steps.size() == max_len)
                return;
            for (int e : bg.out_edges(at)) {
                base.steps.push_back({e, 1});
                self(self, bg.edge(e).target);
                base.steps.pop_back();
            }
            for (int e : bg.in_edges(at)) {
                base.steps.push_back({e, -1});
                self(self, bg.edge(e).source);
                base.steps.pop_back();
            }
        };
        walk(walk, base.start);
        for (int e : bg.out_edges(base.start)) {
            int count = 0;
            for (int te : g.out_edges(v))
                count += theta.edge_projection(te) == e;
            CheckList::expect(lifts, count == 1, g.label(v) + " over edge " + std::to_string(e));
        }
    }

    auto& coherent = out.open("cover: generating pairs lift to paths with equal ends");
    for (const auto& r : relation_generators(gamma))
        for (int v : theta.fiber(r.chamber))
            CheckList::expect(coherent, path_end(g, theta.lift_path(v, r.first)) == path_end(g, theta.lift_path(v, r.second)),
                              g.label(v) + ": " + to_string(bg, r.first));

    auto& round = out.open("cover: v_of inverts lift_endpoint");
    for (std::size_t v = 0; v < theta.size(); ++v)
        for (std::size_t c = 0; c < gamma.size(); ++c) {
            const auto w = theta.lift_endpoint(static_cast<int>(v), static_cast<int>(c));
            CheckList::expect(round, w && theta.v_of(theta.projection(static_cast<int>(v)), *w) == static_cast<int>(v),
                              g.label(v) + " -> " + bg.label(c));
        }

    auto& fibers = out.open("cover: fiber over every chamber equals the orbit size");
    for (int comp = 0; comp < theta.component_count(); ++comp)
        for (std::size_t c = 0; c < gamma.size(); ++c) {
            int count = 0;
            for (int v : theta.fiber(static_cast<int>(c)))
                count += theta.component_of(v) == comp;
            CheckList::expect(fibers, count == theta.fiber_size(comp),
                              "component " + std::to_string(comp) + " over " + bg.label(c));
        }

    const CoverModel model = build_model(theta);
    auto& covering = out.open("model: Lambda_rho is a covering map");
    const auto rep = verify_covering(model.projection);
    CheckList::expect(covering, rep.ok, rep.witness ? rep.witness->reason : "");
    CheckList::expect(covering, rep.components == theta.component_count(), "component count");

    auto& mult = out.open("model: chi(W_rho) = fiber x chi(W) per component");
    const long long chi_w = euler_characteristic(*model.base.complex);
    const auto comps = model.total.complex->components();
    for (int c = 0; c < rep.components; ++c) {
        std::vector<int> keep;
        for (std::size_t v = 0; v < comps.size(); ++v)
            if (comps[v] == c)
                keep.push_back(static_cast<int>(v));
        const long long chi = euler_characteristic(model.total.complex->induced(keep));
        CheckList::expect(mult, chi == rep.component_fibers[c] * chi_w,
                          "component " + std::to_string(c) + ": " + std::to_string(chi));
    }

    const auto cells = cw_cells(model, gamma.faces());
    auto& cw = out.open("model: CW cells are balls with sphere boundaries");
    std::vector<long long> counts;
    for (const auto& cell : cells) {
        if (static_cast<std::size_t>(cell.dim) >= counts.size())
            counts.resize(cell.dim + 1, 0);
        ++counts[cell.dim];
        const auto cc = check_cell(model, cell);
        CheckList::expect(cw, cc.ok, model.total.plim.poset.label(cell.element));
    }
    CheckList::expect(cw, counts.size() > 0 && counts[0] == static_cast<long long>(theta.size()), "0-cells vs V(Theta)");
    CheckList::expect(cw, counts.size() < 2 || counts[1] == static_cast<long long>(g.edge_count()), "1-cells vs E(Theta)");
    long long alt = 0;
    for (std::size_t k = 0; k < counts.size(); ++k)
        alt += (k % 2 ? -1 : 1) * counts[k];
    CheckList::expect(cw, alt == euler_characteristic(*model.total.complex), "cell count chi");

    auto& pi1 = out.open("invariants: abelianized pi_1 presentation equals H_1(W_rho)");
    const auto pres = pi1_presentation(model, theta, cells);
    const auto ab = abelianization(pres);
    const auto h = homology(*model.total.complex);
    const long long b1 = h.betti.size() > 1 ? h.betti[1] : 0;
    CheckList::expect(pi1, ab.free_rank == b1 && ab.torsion == h.h1_invariant_factors,
                      "rank " + std::to_string(ab.free_rank) + " vs b1 " + std::to_string(b1));
}

}  // namespace arrcover

#endif
