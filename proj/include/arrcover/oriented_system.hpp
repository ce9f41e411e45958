#ifndef ARRCOVER_ORIENTED_SYSTEM_HPP
#define ARRCOVER_ORIENTED_SYSTEM_HPP

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "arrangement.hpp"
#include "errors.hpp"

namespace arrcover {

struct Edge
{
    int source;
    int target;
};

/// Directed multigraph with labelled vertices. `opposite(e)` is the first
/// edge running the other way between the same endpoints, or -1.
class OrientedGraph
{
public:
    OrientedGraph() = default;

    OrientedGraph(std::vector<std::string> labels, std::vector<Edge> edges)
        : labels_(std::move(labels)), edges_(std::move(edges))
    {
        const int n = static_cast<int>(labels_.size());
        out_.assign(n, {});
        in_.assign(n, {});
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const auto [s, t] = edges_[e];
            if (s < 0 || t < 0 || s >= n || t >= n)
                throw PreconditionError("edge endpoint out of range");
            out_[s].push_back(static_cast<int>(e));
            in_[t].push_back(static_cast<int>(e));
        }
        opposite_.assign(edges_.size(), -1);
        for (std::size_t e = 0; e < edges_.size(); ++e)
            for (int f : out_[edges_[e].target])
                if (edges_[f].target == edges_[e].source) {
                    opposite_[e] = f;
                    break;
                }
    }

    std::size_t size() const { return labels_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::string& label(std::size_t v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const Edge& edge(std::size_t e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& out_edges(std::size_t v) const { return out_[v]; }
    const std::vector<int>& in_edges(std::size_t v) const { return in_[v]; }
    int opposite(std::size_t e) const { return opposite_[e]; }

    std::optional<int> find_edge(int source, int target) const
    {
        for (int e : out_[source])
            if (edges_[e].target == target)
                return e;
        return std::nullopt;
    }

    std::string to_dot(const std::string& name = "G") const
    {
        std::ostringstream out;
        out << "digraph " << name << " {\n";
        for (std::size_t v = 0; v < labels_.size(); ++v)
            out << "  v" << v << " [label=\"" << labels_[v] << "\"];\n";
        for (std::size_t e = 0; e < edges_.size(); ++e)
            out << "  v" << edges_[e].source << " -> v" << edges_[e].target << " [label=\"e" << e << "\"];\n";
        out << "}\n";
        return out.str();
    }

private:
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
    std::vector<int> opposite_;
};

/// One traversal of an edge, forwards (+1) or backwards (-1).
struct Step
{
    int edge;
    int exponent;

    bool operator==(const Step&) const = default;
    auto operator<=>(const Step&) const = default;
};

/// An edge path; begin is stored, end is derived from the graph.
struct Path
{
    int start = 0;
    std::vector<Step> steps;

    std::size_t length() const { return steps.size(); }
    bool is_positive() const
    {
        return std::all_of(steps.begin(), steps.end(), [](const Step& s) { return s.exponent == 1; });
    }

    bool operator==(const Path&) const = default;
};

/// Vertices visited by the path, starting with `start`. Throws if the steps
/// do not chain.
inline std::vector<int> vertices_along(const OrientedGraph& g, const Path& p)
{
    std::vector<int> vs{p.start};
    for (const auto& s : p.steps) {
        if (s.edge < 0 || static_cast<std::size_t>(s.edge) >= g.edge_count() || (s.exponent != 1 && s.exponent != -1))
            throw PreconditionError("invalid path step");
        const Edge& e = g.edge(s.edge);
        const int from = s.exponent == 1 ? e.source : e.target;
        if (from != vs.back())
            throw PreconditionError("path steps do not chain");
        vs.push_back(s.exponent == 1 ? e.target : e.source);
    }
    return vs;
}

inline int path_end(const OrientedGraph& g, const Path& p)
{
    return vertices_along(g, p).back();
}

inline Path inverse(const OrientedGraph& g, const Path& p)
{
    Path q{path_end(g, p), {}};
    for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it)
        q.steps.push_back({it->edge, -it->exponent});
    return q;
}

inline Path concat(const OrientedGraph& g, const Path& a, const Path& b)
{
    if (path_end(g, a) != b.start)
        throw PreconditionError("concat: paths do not meet");
    Path c = a;
    c.steps.insert(c.steps.end(), b.steps.begin(), b.steps.end());
    return c;
}

/// Cancel adjacent e e^-1 pairs.
inline std::vector<Step> freely_reduce(const std::vector<Step>& word)
{
    std::vector<Step> out;
    for (const auto& s : word) {
        if (!out.empty() && out.back().edge == s.edge && out.back().exponent == -s.exponent)
            out.pop_back();
        else
            out.push_back(s);
    }
    return out;
}

/// Whitespace-separated vertex labels along the path.
inline std::string to_string(const OrientedGraph& g, const Path& p)
{
    std::string out;
    for (int v : vertices_along(g, p)) {
        if (!out.empty())
            out += ' ';
        out += g.label(v);
    }
    return out;
}

/// Parse a positive path given as a sequence of vertex labels.
inline Path parse_path(const OrientedGraph& g, const std::string& text)
{
    std::istringstream in(text);
    std::vector<int> vs;
    for (std::string tok; in >> tok;) {
        const auto& labels = g.labels();
        auto it = std::find(labels.begin(), labels.end(), tok);
        if (it == labels.end())
            throw ParseError("unknown vertex '" + tok + "' in path");
        vs.push_back(static_cast<int>(it - labels.begin()));
    }
    if (vs.empty())
        throw ParseError("empty path");
    Path p{vs.front(), {}};
    for (std::size_t i = 1; i < vs.size(); ++i) {
        const auto e = g.find_edge(vs[i - 1], vs[i]);
        if (!e)
            throw ParseError("no edge " + g.label(vs[i - 1]) + " -> " + g.label(vs[i]));
        p.steps.push_back({*e, 1});
    }
    return p;
}

/**
 * The oriented system Gamma(A): vertices are the chambers (vertex i is the
 * i-th chamber in face order), with an edge in each direction between
 * chambers separated by exactly one hyperplane. Equivalence of paths is
 * kept intensionally: positive paths of minimal length with equal
 * endpoints are equivalent.
 */
class OrientedSystem
{
public:
    static constexpr const char* relation_kind = "arrangement-minimal";

    explicit OrientedSystem(std::shared_ptr<const FacePoset> faces) : faces_(std::move(faces))
    {
        const auto& chambers = faces_->chambers();
        std::vector<std::string> labels;
        for (int c : chambers)
            labels.push_back((*faces_)[c].str());
        std::vector<Edge> edges;
        for (std::size_t u = 0; u < chambers.size(); ++u) {
            for (std::size_t v = 0; v < chambers.size(); ++v) {
                const auto s = separating_set((*faces_)[chambers[u]], (*faces_)[chambers[v]]);
                if (s.size() == 1) {
                    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
                    crossing_.push_back(s.front());
                }
            }
        }
        graph_ = OrientedGraph(std::move(labels), std::move(edges));
    }

    const FacePoset& faces() const { return *faces_; }
    const std::shared_ptr<const FacePoset>& face_poset() const { return faces_; }
    const OrientedGraph& graph() const { return graph_; }
    std::size_t size() const { return graph_.size(); }

    /// Face index of chamber vertex v.
    int face_of(int v) const
    {
        check_vertex(v);
        return faces_->chambers()[v];
    }

    /// Chamber vertex of a face index; throws if the face is not a chamber.
    int vertex_of_face(int face) const
    {
        const int c = faces_->chamber_index(face);
        if (c < 0)
            throw PreconditionError("'" + (*faces_)[face].str() + "' is not a chamber");
        return c;
    }

    int vertex_of(const std::string& signs) const { return vertex_of_face(faces_->index_of(signs)); }

    /// The hyperplane crossed by edge e.
    int crossed_hyperplane(int e) const { return crossing_[e]; }

    std::vector<int> separating(int u, int v) const
    {
        check_vertex(u);
        check_vertex(v);
        return separating_set((*faces_)[face_of(u)], (*faces_)[face_of(v)]);
    }

    bool below(int v, int face) const { return faces_->geq(face, face_of(v)); }

    void check_vertex(int v) const
    {
        if (v < 0 || static_cast<std::size_t>(v) >= graph_.size())
            throw PreconditionError("chamber index out of range");
    }

private:
    std::shared_ptr<const FacePoset> faces_;
    OrientedGraph graph_;
    std::vector<int> crossing_;
};

inline OrientedSystem gamma_of(std::shared_ptr<const FacePoset> faces)
{
    return OrientedSystem(std::move(faces));
}

inline OrientedSystem gamma_of(const Arrangement& a)
{
    return OrientedSystem(std::make_shared<const FacePoset>(enumerate_faces(a)));
}

namespace detail {

inline bool separates(const OrientedSystem& gamma, int hyperplane, int u, int v)
{
    const auto& f = gamma.faces();
    return f[gamma.face_of(u)].signs[hyperplane] != f[gamma.face_of(v)].signs[hyperplane];
}

}  // namespace detail

/// Canonical positive minimal path: at every step take the smallest-index
/// neighbouring chamber across a wall that still separates from the target.
/// With `within`, only chambers below that face are used.
inline Path minimal_positive_path(const OrientedSystem& gamma, int from, int to, std::optional<int> within = std::nullopt)
{
    gamma.check_vertex(from);
    gamma.check_vertex(to);
    if (within && (!gamma.below(from, *within) || !gamma.below(to, *within)))
        throw PreconditionError("minimal_positive_path: endpoints not below the restricting face");
    const auto& g = gamma.graph();
    Path p{from, {}};
    int cur = from;
    while (cur != to) {
        bool moved = false;
        for (int e : g.out_edges(cur)) {
            const int next = g.edge(e).target;
            if (!detail::separates(gamma, gamma.crossed_hyperplane(e), cur, to))
                continue;
            if (within && !gamma.below(next, *within))
                continue;
            p.steps.push_back({e, 1});
            cur = next;
            moved = true;
            break;
        }
        if (!moved)
            throw VerificationError("no wall separates " + g.label(cur) + " from " + g.label(to));
    }
    return p;
}

/// Every positive minimal path between two chambers (optionally restricted
/// to chambers below a face), in lexicographic order of edge indices.
inline std::vector<Path> all_minimal_positive_paths(const OrientedSystem& gamma, int from, int to,
                                                    std::optional<int> within = std::nullopt)
{
    const auto& g = gamma.graph();
    std::vector<Path> out;
    Path cur{from, {}};
    auto walk = [&](auto&& self, int v) -> void {
        if (v == to) {
            out.push_back(cur);
            return;
        }
        for (int e : g.out_edges(v)) {
            const int next = g.edge(e).target;
            if (!detail::separates(gamma, gamma.crossed_hyperplane(e), v, to))
                continue;
            if (within && !gamma.below(next, *within))
                continue;
            cur.steps.push_back({e, 1});
            self(self, next);
            cur.steps.pop_back();
        }
    };
    walk(walk, from);
    return out;
}

/// Positive, and of length |S(begin, end)|.
inline bool is_positive_minimal(const OrientedSystem& gamma, const Path& p)
{
    if (!p.is_positive())
        return false;
    const int end = path_end(gamma.graph(), p);
    return p.length() == gamma.separating(p.start, end).size();
}

/// The two boundary arcs of the 2-cell [F, C]: positive minimal paths from
/// C to the opposite chamber inside the chambers below F.
struct RelationPair
{
    int face;     // face index, codim 2
    int chamber;  // chamber vertex C
    Path first;
    Path second;
};

inline std::vector<RelationPair> relation_generators(const OrientedSystem& gamma)
{
    const auto& faces = gamma.faces();
    std::vector<RelationPair> out;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        if (faces[f].codim != 2)
            continue;
        for (int c : faces.chambers_below(f)) {
            const int from = gamma.vertex_of_face(c);
            const int to = gamma.vertex_of_face(opposite_chamber(faces, static_cast<int>(f), c));
            auto arcs = all_minimal_positive_paths(gamma, from, to, static_cast<int>(f));
            if (arcs.size() != 2)
                throw VerificationError("codim-2 face " + faces[f].str() + " does not have two boundary arcs");
            // Arc through the smaller-index chamber first.
            auto key = [&](const Path& p) { return vertices_along(gamma.graph(), p); };
            if (key(arcs[1]) < key(arcs[0]))
                std::swap(arcs[0], arcs[1]);
            out.push_back({static_cast<int>(f), from, std::move(arcs[0]), std::move(arcs[1])});
        }
    }
    return out;
}

/// Split a positive minimal path C1 -> C2 (C2 <= F) through the chamber F o C1.
inline std::pair<Path, Path> factor_via_chamber(const OrientedSystem& gamma, int c1, int c2, int face)
{
    if (!gamma.below(c2, face))
        throw PreconditionError("factor_via_chamber: C2 is not below F");
    const int mid = gamma.vertex_of_face(gamma.faces().compose(face, gamma.face_of(c1)));
    return {minimal_positive_path(gamma, c1, mid), minimal_positive_path(gamma, mid, c2)};
}

}  // namespace arrcover

#endif
