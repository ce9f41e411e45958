#ifndef ARRCOVER_MODEL_HPP
#define ARRCOVER_MODEL_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arrangement.hpp"
#include "complex.hpp"
#include "covers.hpp"
#include "diagrams.hpp"
#include "errors.hpp"
#include "homology.hpp"

namespace arrcover {

/// Vertex (F, C) label shared by the direct Salvetti complex and Plim D_id.
inline std::string salvetti_label(const FacePoset& faces, int face, int chamber_face)
{
    return "(" + faces[face].str() + "," + faces[chamber_face].str() + ")";
}

/**
 * Sal(A) built straight from the face poset: vertices (F, C) with C <= F,
 * and one maximal simplex Delta(phi, C) for every maximal chain phi of F(A)
 * and chamber C <= max(phi), with vertices (F_i, F_i o C).
 */
inline SimplicialComplex salvetti_direct(const FacePoset& faces)
{
    std::vector<std::string> labels;
    std::map<std::pair<int, int>, int> index;
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (int c : faces.chambers_below(f)) {
            index.emplace(std::make_pair(static_cast<int>(f), c), static_cast<int>(labels.size()));
            labels.push_back(salvetti_label(faces, static_cast<int>(f), c));
        }
    const auto& p = faces.poset();
    std::vector<Simplex> simplices;
    std::vector<int> chain;
    auto walk = [&](auto&& self, int f) -> void {
        chain.push_back(f);
        if (p.lower_covers(f).empty()) {
            for (int c : faces.chambers_below(chain.front())) {
                Simplex s;
                for (int g : chain)
                    s.push_back(index.at({g, faces.compose(g, c)}));
                simplices.push_back(std::move(s));
            }
        }
        for (int g : p.lower_covers(f))
            self(self, g);
        chain.pop_back();
    };
    for (int top : p.maximal_elements())
        walk(walk, top);
    return SimplicialComplex(std::move(labels), std::move(simplices));
}

/// Delta(Plim D) for D_id or D_rho, with the (face, vertex) coordinates of
/// every element. For D_id the vertex is the chamber vertex of Gamma.
struct DiagramModel
{
    Plim plim;
    std::vector<int> face;
    std::vector<int> vertex;
    std::shared_ptr<const SimplicialComplex> complex;

    std::size_t size() const { return face.size(); }
    std::optional<int> find(int f, int v) const
    {
        for (std::size_t i = 0; i < face.size(); ++i)
            if (face[i] == f && vertex[i] == v)
                return static_cast<int>(i);
        return std::nullopt;
    }
};

/// W = Delta(Plim D_id).
inline DiagramModel base_model(const OrientedSystem& gamma)
{
    const auto& faces = gamma.faces();
    DiagramModel m;
    m.plim = plim(diagram_id(faces));
    for (const auto& [f, q] : m.plim.coordinates) {
        m.face.push_back(f);
        m.vertex.push_back(gamma.vertex_of_face(faces.chambers_below(f)[q]));
    }
    m.complex = std::make_shared<const SimplicialComplex>(order_complex(m.plim.poset));
    return m;
}

/// W_rho together with Lambda_rho : W_rho -> W.
struct CoverModel
{
    DiagramModel base;
    DiagramModel total;
    SimplicialMap projection;
};

namespace detail {

/// The quotient description of the vertex set: F x V(Theta) modulo
/// (F, v) ~ (F, end of the lift of rho(v) -> rho(v)_F), each class must meet
/// the elements of Plim D_rho exactly once.
inline void check_vertex_set(const CoverGraph& theta, const DiagramModel& total)
{
    const auto& gamma = theta.base();
    const auto& faces = gamma.faces();
    const std::size_t nv = theta.size();
    const std::size_t n = faces.size() * nv;
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (std::size_t v = 0; v < nv; ++v) {
            const int c = theta.projection(static_cast<int>(v));
            const int target = gamma.vertex_of_face(faces.compose(f, gamma.face_of(c)));
            const auto w = theta.lift_endpoint(static_cast<int>(v), target);
            if (!w)
                throw VerificationError("vertex-set check needs a complete cover");
            parent[find(f * nv + v)] = find(f * nv + static_cast<std::size_t>(*w));
        }
    std::map<std::size_t, int> hits;
    for (std::size_t i = 0; i < total.size(); ++i)
        ++hits[find(static_cast<std::size_t>(total.face[i]) * nv + static_cast<std::size_t>(total.vertex[i]))];
    std::set<std::size_t> classes;
    for (std::size_t x = 0; x < n; ++x)
        classes.insert(find(x));
    if (hits.size() != classes.size() || std::any_of(hits.begin(), hits.end(), [](const auto& kv) { return kv.second != 1; }))
        throw VerificationError("vertex set of W_rho does not match F x V(Theta) / ~");
}

}  // namespace detail

/**
 * W_rho = Delta(Plim D_rho) and the simplicial map (F, v) -> (F, rho(v)).
 * For complete covers the vertex-set description is checked as well.
 */
inline CoverModel build_model(const CoverGraph& theta)
{
    const auto& gamma = theta.base();
    DiagramModel base = base_model(gamma);
    DiagramModel total;
    total.plim = plim(diagram_rho(theta));
    std::map<int, std::vector<int>> spaces;
    for (const auto& [f, q] : total.plim.coordinates) {
        auto it = spaces.find(f);
        if (it == spaces.end())
            it = spaces.emplace(f, rho_space(theta, f)).first;
        total.face.push_back(f);
        total.vertex.push_back(it->second[q]);
    }
    total.complex = std::make_shared<const SimplicialComplex>(order_complex(total.plim.poset));
    std::map<std::pair<int, int>, int> base_index;
    for (std::size_t i = 0; i < base.size(); ++i)
        base_index.emplace(std::make_pair(base.face[i], base.vertex[i]), static_cast<int>(i));
    std::vector<int> vmap;
    for (std::size_t i = 0; i < total.size(); ++i)
        vmap.push_back(base_index.at({total.face[i], theta.projection(total.vertex[i])}));
    if (theta.complete())
        detail::check_vertex_set(theta, total);
    SimplicialMap lambda(total.complex, base.complex, std::move(vmap));
    return CoverModel{std::move(base), std::move(total), std::move(lambda)};
}

struct IsoResult
{
    bool ok = true;
    std::optional<Simplex> witness;  // maximal simplex with no counterpart
    bool witness_in_first = true;
};

/// Vertex bijection K1 -> K2 by equal labels; throws if not total.
inline std::vector<int> label_bijection(const SimplicialComplex& k1, const SimplicialComplex& k2)
{
    if (k1.vertex_count() != k2.vertex_count())
        throw PreconditionError("iso_check: vertex sets have different sizes");
    std::map<std::string, int> pos;
    for (std::size_t i = 0; i < k2.vertex_count(); ++i)
        pos.emplace(k2.vertex(i), static_cast<int>(i));
    std::vector<int> out;
    for (const auto& l : k1.vertices()) {
        auto it = pos.find(l);
        if (it == pos.end())
            throw PreconditionError("iso_check: vertex '" + l + "' has no counterpart");
        out.push_back(it->second);
    }
    return out;
}

/// Does the bijection carry the simplices of K1 exactly onto those of K2?
inline IsoResult iso_check(const SimplicialComplex& k1, const SimplicialComplex& k2, const std::vector<int>& bijection)
{
    if (bijection.size() != k1.vertex_count() || k1.vertex_count() != k2.vertex_count())
        throw PreconditionError("iso_check: bijection is not total");
    std::vector<int> inverse(k2.vertex_count(), -1);
    for (std::size_t i = 0; i < bijection.size(); ++i) {
        const int j = bijection[i];
        if (j < 0 || static_cast<std::size_t>(j) >= inverse.size() || inverse[j] >= 0)
            throw PreconditionError("iso_check: vertex map is not a bijection");
        inverse[j] = static_cast<int>(i);
    }
    std::set<Simplex> mapped;
    for (const auto& s : k1.maximal_simplices()) {
        Simplex t;
        for (int v : s)
            t.push_back(bijection[v]);
        std::sort(t.begin(), t.end());
        mapped.insert(std::move(t));
    }
    const std::set<Simplex> target(k2.maximal_simplices().begin(), k2.maximal_simplices().end());
    IsoResult r;
    for (const auto& t : mapped)
        if (!target.contains(t)) {
            Simplex back;
            for (int v : t)
                back.push_back(inverse[v]);
            std::sort(back.begin(), back.end());
            return {false, back, true};
        }
    for (const auto& t : target)
        if (!mapped.contains(t))
            return {false, t, false};
    return r;
}

inline IsoResult iso_check(const SimplicialComplex& k1, const SimplicialComplex& k2)
{
    return iso_check(k1, k2, label_bijection(k1, k2));
}

struct StarWitness
{
    int vertex;  // source vertex whose closed star fails
    std::string reason;
};

struct CoveringReport
{
    bool ok = true;
    int fiber = 0;                       // preimages per base vertex (0 if not constant)
    std::vector<int> component_fibers;   // per source component
    int components = 0;                  // source components
    int stars_checked = 0;
    std::optional<StarWitness> witness;
};

/**
 * Combinatorial covering test for a simplicial map: surjective on vertices
 * and maximal simplices, an isomorphism from the closed star of every source
 * vertex onto the closed star of its image, and constant fiber cardinality
 * over each base component.
 */
inline CoveringReport verify_covering(const SimplicialMap& map)
{
    const auto& src = map.source();
    const auto& dst = map.target();
    CoveringReport rep;

    std::vector<std::vector<int>> src_star(src.vertex_count()), dst_star(dst.vertex_count());
    for (std::size_t i = 0; i < src.maximal_simplices().size(); ++i)
        for (int v : src.maximal_simplices()[i])
            src_star[v].push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < dst.maximal_simplices().size(); ++i)
        for (int v : dst.maximal_simplices()[i])
            dst_star[v].push_back(static_cast<int>(i));

    auto fail = [&](int v, std::string why) {
        if (rep.ok)
            rep.witness = StarWitness{v, std::move(why)};
        rep.ok = false;
    };

    // Surjectivity.
    std::vector<int> preimages(dst.vertex_count(), 0);
    for (std::size_t v = 0; v < src.vertex_count(); ++v)
        ++preimages[map(static_cast<int>(v))];
    std::set<Simplex> images;
    for (const auto& s : src.maximal_simplices())
        images.insert(map.image(s));
    for (std::size_t y = 0; y < dst.vertex_count(); ++y)
        if (preimages[y] == 0) {
            fail(-1, "base vertex " + dst.vertex(y) + " has no preimage");
            break;
        }
    for (const auto& t : dst.maximal_simplices())
        if (!images.contains(t)) {
            fail(-1, "a maximal base simplex is not covered");
            break;
        }

    // Closed stars.
    for (std::size_t x = 0; x < src.vertex_count(); ++x) {
        ++rep.stars_checked;
        const int y = map(static_cast<int>(x));
        std::map<int, int> vertex_image;  // base vertex -> source vertex
        bool injective = true;
        std::set<Simplex> star_images;
        for (int si : src_star[x]) {
            const auto& s = src.maximal_simplices()[si];
            for (int v : s) {
                auto [it, inserted] = vertex_image.emplace(map(v), v);
                if (!inserted && it->second != v)
                    injective = false;
            }
            star_images.insert(map.image(s));
        }
        if (!injective) {
            fail(static_cast<int>(x), "map is not injective on the closed star of " + src.vertex(x));
            continue;
        }
        std::set<Simplex> base_star;
        for (int ti : dst_star[y])
            base_star.insert(dst.maximal_simplices()[ti]);
        if (star_images != base_star)
            fail(static_cast<int>(x), "closed star of " + src.vertex(x) + " does not map onto the star of " + dst.vertex(y));
    }

    // Fibers.
    const auto src_comp = src.components();
    const auto dst_comp = dst.components();
    rep.components = src_comp.empty() ? 0 : *std::max_element(src_comp.begin(), src_comp.end()) + 1;
    rep.component_fibers.assign(rep.components, 0);
    {
        std::vector<std::map<int, int>> per_component(rep.components);  // base vertex -> count
        for (std::size_t v = 0; v < src.vertex_count(); ++v)
            ++per_component[src_comp[v]][map(static_cast<int>(v))];
        for (int c = 0; c < rep.components; ++c) {
            // Over each base component the count must be constant.
            std::map<int, std::set<int>> counts_by_base_component;
            for (const auto& [y, k] : per_component[c])
                counts_by_base_component[dst_comp[y]].insert(k);
            int fiber = -1;
            for (const auto& [bc, ks] : counts_by_base_component) {
                std::size_t base_size = 0;
                for (std::size_t y = 0; y < dst.vertex_count(); ++y)
                    base_size += dst_comp[y] == bc;
                const std::size_t covered = std::count_if(per_component[c].begin(), per_component[c].end(),
                                                          [&](const auto& kv) { return dst_comp[kv.first] == bc; });
                if (ks.size() != 1 || covered != base_size)
                    fail(-1, "fiber cardinality is not constant on a component");
                fiber = *ks.begin();
            }
            rep.component_fibers[c] = fiber;
        }
    }
    std::set<int> totals(preimages.begin(), preimages.end());
    rep.fiber = totals.size() == 1 ? *totals.begin() : 0;
    if (totals.size() != 1) {
        // Different fibers over different base components are allowed.
        std::map<int, std::set<int>> by_component;
        for (std::size_t y = 0; y < dst.vertex_count(); ++y)
            by_component[dst_comp[y]].insert(preimages[y]);
        for (const auto& [bc, ks] : by_component)
            if (ks.size() != 1)
                fail(-1, "fiber cardinality is not constant");
    }
    return rep;
}

/// A cell [F, v] of the CW structure on W_rho.
struct CWCell
{
    int element;  // index in Plim D_rho
    int face;
    int vertex;   // cover vertex with rho(v) <= F
    int dim;      // codim F
};

/// One cell per Plim element, in Plim order.
inline std::vector<CWCell> cw_cells(const CoverModel& model, const FacePoset& faces)
{
    std::vector<CWCell> cells;
    for (std::size_t i = 0; i < model.total.size(); ++i)
        cells.push_back({static_cast<int>(i), model.total.face[i], model.total.vertex[i], faces[model.total.face[i]].codim});
    return cells;
}

/// Plim elements strictly below the cell's element.
inline std::vector<int> cell_boundary_elements(const CoverModel& model, const CWCell& cell)
{
    std::vector<int> out;
    const Bits& down = model.total.plim.poset.down_set(cell.element);
    for (std::size_t j = down.find_first(); j != Bits::npos; j = down.find_next(j))
        if (static_cast<int>(j) != cell.element)
            out.push_back(static_cast<int>(j));
    return out;
}

struct CellCheck
{
    bool ok = true;
    std::vector<long long> ball_betti;
    std::vector<long long> sphere_betti;
};

/**
 * Homology signature of the closed cell (the chains below (F, v)) and of
 * its boundary: Betti (1) for the ball, and for the boundary the Betti
 * numbers of the (dim-1)-sphere.
 */
inline CellCheck check_cell(const CoverModel& model, const CWCell& cell)
{
    CellCheck r;
    std::vector<int> closed = cell_boundary_elements(model, cell);
    const std::vector<int> boundary = closed;
    closed.push_back(cell.element);
    std::sort(closed.begin(), closed.end());
    r.ball_betti = betti_numbers(order_complex(model.total.plim.poset.induced(closed)));
    r.ok = !r.ball_betti.empty() && r.ball_betti[0] == 1 &&
           std::all_of(r.ball_betti.begin() + 1, r.ball_betti.end(), [](long long b) { return b == 0; });
    if (cell.dim == 0)
        return r;
    if (boundary.empty()) {
        r.ok = false;
        return r;
    }
    r.sphere_betti = betti_numbers(order_complex(model.total.plim.poset.induced(boundary)));
    std::vector<long long> expected(cell.dim, 0);
    if (cell.dim == 1)
        expected[0] = 2;
    else {
        expected[0] = 1;
        expected[cell.dim - 1] = 1;
    }
    r.sphere_betti.resize(std::max(r.sphere_betti.size(), expected.size()), 0);
    expected.resize(r.sphere_betti.size(), 0);
    r.ok = r.ok && r.sphere_betti == expected;
    return r;
}

/// The edge of Theta underlying a 1-cell [F, v]: from v across the wall F.
inline int cell_edge(const CoverModel& model, const CoverGraph& theta, const CWCell& cell)
{
    if (cell.dim != 1)
        throw PreconditionError("cell_edge needs a 1-cell");
    const auto& poset = model.total.plim.poset;
    int head = -1;
    for (int low : poset.lower_covers(cell.element))
        if (model.total.vertex[low] != cell.vertex)
            head = model.total.vertex[low];
    if (head < 0)
        throw VerificationError("1-cell " + poset.label(cell.element) + " has a single endpoint");
    for (int e : theta.graph().out_edges(cell.vertex))
        if (theta.graph().edge(e).target == head)
            return e;
    throw VerificationError("1-cell " + poset.label(cell.element) + " is not an edge of Theta");
}

/**
 * The two positive paths in Theta from the unique source to the unique sink
 * of the boundary of a 2-cell, ordered by the index of their first edge.
 */
inline std::pair<Path, Path> cell_boundary(const CoverModel& model, const CoverGraph& theta, const CWCell& cell)
{
    if (cell.dim != 2)
        throw PreconditionError("cell_boundary needs a 2-cell");
    const auto& poset = model.total.plim.poset;
    std::map<int, std::vector<int>> out;  // cover vertex -> edges of the boundary
    std::map<int, int> in_degree;
    for (int j : cell_boundary_elements(model, cell)) {
        if (poset.lower_covers(j).empty()) {
            out.try_emplace(model.total.vertex[j]);
            in_degree.try_emplace(model.total.vertex[j], 0);
            continue;
        }
        const CWCell one{j, model.total.face[j], model.total.vertex[j], 1};
        const int e = cell_edge(model, theta, one);
        out[theta.graph().edge(e).source].push_back(e);
        ++in_degree[theta.graph().edge(e).target];
        in_degree.try_emplace(theta.graph().edge(e).source, 0);
    }
    int source = -1, sink = -1;
    for (const auto& [v, d] : in_degree) {
        if (d == 0) {
            if (source >= 0)
                throw VerificationError("boundary of " + poset.label(cell.element) + " has two sources");
            source = v;
        }
        if (out[v].empty()) {
            if (sink >= 0)
                throw VerificationError("boundary of " + poset.label(cell.element) + " has two sinks");
            sink = v;
        }
    }
    if (source < 0 || sink < 0 || out[source].size() != 2)
        throw VerificationError("boundary of " + poset.label(cell.element) + " is not two arcs");
    std::vector<int> first = out[source];
    std::sort(first.begin(), first.end());
    auto follow = [&](int e) {
        Path p{source, {}};
        std::set<int> seen{source};
        for (;;) {
            p.steps.push_back({e, 1});
            const int v = theta.graph().edge(e).target;
            if (v == sink)
                return p;
            if (out[v].size() != 1 || !seen.insert(v).second)
                throw VerificationError("boundary of " + poset.label(cell.element) + " is not two arcs");
            e = out[v].front();
        }
    };
    return {follow(first[0]), follow(first[1])};
}

}  // namespace arrcover

#endif
