#ifndef ARRCOVER_COVERS_HPP
#define ARRCOVER_COVERS_HPP

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "oriented_system.hpp"

namespace arrcover {

/// Permutation of {0, ..., m-1}, acting as s -> images[s].
class Permutation
{
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : images_(std::move(images))
    {
        std::vector<bool> hit(images_.size(), false);
        for (int x : images_) {
            if (x < 0 || static_cast<std::size_t>(x) >= images_.size() || hit[x])
                throw PreconditionError("not a permutation");
            hit[x] = true;
        }
    }

    static Permutation identity(std::size_t m)
    {
        std::vector<int> v(m);
        std::iota(v.begin(), v.end(), 0);
        return Permutation(std::move(v));
    }

    std::size_t degree() const { return images_.size(); }
    int operator()(int s) const { return images_[s]; }
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const
    {
        std::vector<int> v(images_.size());
        for (std::size_t s = 0; s < images_.size(); ++s)
            v[images_[s]] = static_cast<int>(s);
        return Permutation(std::move(v));
    }

    /// First this, then `next`.
    Permutation then(const Permutation& next) const
    {
        std::vector<int> v(images_.size());
        for (std::size_t s = 0; s < images_.size(); ++s)
            v[s] = next(images_[s]);
        return Permutation(std::move(v));
    }

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> images_;
};

inline std::string to_string(const Permutation& p)
{
    std::string out;
    for (int x : p.images()) {
        if (!out.empty())
            out += ' ';
        out += std::to_string(x);
    }
    return out;
}

/// Sheet permutations for every directed edge of Gamma. Opposite edges are
/// labelled independently.
struct DeckLabeling
{
    int degree = 1;
    std::vector<std::optional<Permutation>> labels;

    const Permutation& at(int edge) const
    {
        if (!labels.at(edge))
            throw PreconditionError("missing label for edge e" + std::to_string(edge));
        return *labels[edge];
    }

    /// Action of a path on the sheets (inverse labels on backward steps).
    Permutation along(const Path& p) const
    {
        Permutation r = Permutation::identity(degree);
        for (const auto& s : p.steps)
            r = r.then(s.exponent == 1 ? at(s.edge) : at(s.edge).inverse());
        return r;
    }
};

/// Every edge acts as s -> s + 1 mod k (both directions alike).
inline DeckLabeling winding_labeling(const OrientedSystem& gamma, int k)
{
    if (k < 1)
        throw PreconditionError("winding labeling needs k >= 1");
    std::vector<int> shift(k);
    for (int s = 0; s < k; ++s)
        shift[s] = (s + 1) % k;
    DeckLabeling deck{k, {}};
    deck.labels.assign(gamma.graph().edge_count(), Permutation(shift));
    return deck;
}

/// An edge crossing hyperplane i adds e_i in (Z/k)^n, acting on itself.
inline DeckLabeling crossing_labeling(const OrientedSystem& gamma, int k)
{
    if (k < 1)
        throw PreconditionError("crossing labeling needs k >= 1");
    const std::size_t n = gamma.faces().arrangement().size();
    long long degree = 1;
    for (std::size_t i = 0; i < n; ++i) {
        degree *= k;
        if (degree > 1'000'000)
            throw PreconditionError("crossing labeling degree too large");
    }
    std::vector<Permutation> per_hyperplane;
    long long stride = 1;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> v(degree);
        for (long long s = 0; s < degree; ++s) {
            const long long digit = (s / stride) % k;
            v[s] = static_cast<int>(s - digit * stride + ((digit + 1) % k) * stride);
        }
        per_hyperplane.emplace_back(std::move(v));
        stride *= k;
    }
    DeckLabeling deck{static_cast<int>(degree), {}};
    for (std::size_t e = 0; e < gamma.graph().edge_count(); ++e)
        deck.labels.emplace_back(per_hyperplane[gamma.crossed_hyperplane(static_cast<int>(e))]);
    return deck;
}

/// Parse `deck <m>` followed by
/// `edge <source-signs> <target-signs> perm <p0> ... <p(m-1)>` lines.
inline DeckLabeling parse_deck(std::istream& in, const OrientedSystem& gamma)
{
    const auto& g = gamma.graph();
    std::optional<int> degree;
    DeckLabeling deck;
    deck.labels.assign(g.edge_count(), std::nullopt);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#')
            continue;
        const std::string where = " (line " + std::to_string(lineno) + ")";
        if (!degree) {
            std::string tok;
            if (head != "deck" || !(ls >> tok) || !is_integer_token(tok) || std::stol(tok) < 1)
                throw ParseError("expected 'deck <m>' header" + where);
            degree = static_cast<int>(std::stol(tok));
            deck.degree = *degree;
            continue;
        }
        std::string src, dst, kw;
        if (head != "edge" || !(ls >> src >> dst >> kw) || kw != "perm")
            throw ParseError("expected 'edge <src> <dst> perm ...'" + where);
        std::vector<int> images;
        for (std::string t; ls >> t;) {
            if (!is_integer_token(t))
                throw ParseError("malformed permutation entry '" + t + "'" + where);
            images.push_back(static_cast<int>(std::stol(t)));
        }
        if (images.size() != static_cast<std::size_t>(*degree))
            throw ParseError("permutation must list " + std::to_string(*degree) + " images" + where);
        int u = 0, v = 0;
        try {
            u = gamma.vertex_of(src);
            v = gamma.vertex_of(dst);
        } catch (const PreconditionError& e) {
            throw ParseError(std::string(e.what()) + where);
        }
        const auto edge = g.find_edge(u, v);
        if (!edge)
            throw ParseError("no edge " + src + " -> " + dst + where);
        if (deck.labels[*edge])
            throw ParseError("edge " + src + " -> " + dst + " labelled twice" + where);
        try {
            deck.labels[*edge] = Permutation(std::move(images));
        } catch (const PreconditionError& e) {
            throw ParseError(std::string(e.what()) + where);
        }
    }
    if (!degree)
        throw ParseError("missing 'deck <m>' header");
    return deck;
}

inline std::string deck_to_text(const OrientedSystem& gamma, const DeckLabeling& deck)
{
    const auto& g = gamma.graph();
    std::ostringstream out;
    out << "deck " << deck.degree << '\n';
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (!deck.labels[e])
            continue;
        out << "edge " << g.label(g.edge(e).source) << ' ' << g.label(g.edge(e).target) << " perm "
            << to_string(*deck.labels[e]) << '\n';
    }
    return out.str();
}

/// `winding:<k>`, `crossing:<k>`, or a path to a deck file.
inline DeckLabeling deck_from_spec(const OrientedSystem& gamma, const std::string& spec)
{
    auto parse_k = [&](std::string_view rest) {
        if (!is_integer_token(rest) || rest[0] == '-' || rest[0] == '+')
            throw ParseError("malformed deck spec '" + spec + "'");
        const long k = std::stol(std::string(rest));
        if (k < 1)
            throw ParseError("deck spec needs k >= 1");
        return static_cast<int>(k);
    };
    const std::string_view sv(spec);
    if (sv.starts_with("winding:"))
        return winding_labeling(gamma, parse_k(sv.substr(8)));
    if (sv.starts_with("crossing:"))
        return crossing_labeling(gamma, parse_k(sv.substr(9)));
    std::ifstream in(spec);
    if (!in)
        throw ParseError("cannot read deck file '" + spec + "'");
    return parse_deck(in, gamma);
}

struct DeckViolation
{
    Path first;
    Path second;
    Permutation first_action;
    Permutation second_action;
};

struct DeckReport
{
    bool ok = true;
    std::size_t pairs_checked = 0;
    std::vector<DeckViolation> violations;
};

/**
 * Check that equivalent paths act identically on the sheets. The generating
 * pairs (boundary arcs of the codim-2 cells) suffice; `exhaustive` also
 * compares every pair of positive minimal paths with equal endpoints.
 */
inline DeckReport validate_deck(const OrientedSystem& gamma, const DeckLabeling& deck, bool exhaustive = false)
{
    if (deck.labels.size() != gamma.graph().edge_count())
        throw PreconditionError("deck labeling does not match the oriented system");
    for (std::size_t e = 0; e < deck.labels.size(); ++e) {
        if (!deck.labels[e])
            throw PreconditionError("missing label for edge " + gamma.graph().label(gamma.graph().edge(e).source) +
                                    " -> " + gamma.graph().label(gamma.graph().edge(e).target));
        if (deck.labels[e]->degree() != static_cast<std::size_t>(deck.degree))
            throw PreconditionError("edge label has wrong degree");
    }
    DeckReport report;
    auto compare = [&](const Path& a, const Path& b) {
        ++report.pairs_checked;
        auto pa = deck.along(a);
        auto pb = deck.along(b);
        if (!(pa == pb)) {
            report.ok = false;
            report.violations.push_back({a, b, std::move(pa), std::move(pb)});
        }
    };
    for (const auto& rel : relation_generators(gamma))
        compare(rel.first, rel.second);
    if (exhaustive) {
        for (std::size_t u = 0; u < gamma.size(); ++u)
            for (std::size_t v = 0; v < gamma.size(); ++v) {
                const auto paths = all_minimal_positive_paths(gamma, static_cast<int>(u), static_cast<int>(v));
                for (std::size_t i = 1; i < paths.size(); ++i)
                    compare(paths.front(), paths[i]);
            }
    }
    return report;
}

/**
 * A cover Theta -> Gamma: a directed graph whose vertices and edges project
 * onto Gamma. Covers built from deck labelings are complete (every lift
 * exists); universal-cover balls are finite fragments where lifts leaving
 * the fragment are undefined.
 */
class CoverGraph
{
public:
    const OrientedSystem& base() const { return *base_; }
    const std::shared_ptr<const OrientedSystem>& base_ptr() const { return base_; }
    const OrientedGraph& graph() const { return graph_; }
    std::size_t size() const { return graph_.size(); }

    /// Chamber vertex under v.
    int projection(int v) const { return chamber_of_[v]; }
    int edge_projection(int e) const { return base_edge_[e]; }
    const std::vector<int>& projection() const { return chamber_of_; }

    bool complete() const { return complete_; }
    /// For fragments: whether vertices are exact equivalence classes.
    bool exact() const { return exact_; }
    int degree() const { return degree_; }

    int component_of(int v) const { return component_[v]; }
    int component_count() const { return component_count_; }
    /// Number of vertices over each chamber in the component.
    int fiber_size(int component) const { return fiber_[component]; }

    std::vector<int> fiber(int chamber) const
    {
        std::vector<int> out;
        for (std::size_t v = 0; v < size(); ++v)
            if (chamber_of_[v] == chamber)
                out.push_back(static_cast<int>(v));
        return out;
    }

    /// Lift of one step of a base path starting at v.
    std::optional<int> step(int v, const Step& s) const
    {
        if (s.exponent == 1) {
            for (int e : graph_.out_edges(v))
                if (base_edge_[e] == s.edge)
                    return graph_.edge(e).target;
        } else {
            for (int e : graph_.in_edges(v))
                if (base_edge_[e] == s.edge)
                    return graph_.edge(e).source;
        }
        return std::nullopt;
    }

    std::optional<Path> try_lift(int v, const Path& alpha) const
    {
        check_vertex(v);
        if (chamber_of_[v] != alpha.start)
            throw PreconditionError("lift_path: basepoint does not lie over the start of the path");
        Path lifted{v, {}};
        int cur = v;
        for (const auto& s : alpha.steps) {
            const auto& edges = s.exponent == 1 ? graph_.out_edges(cur) : graph_.in_edges(cur);
            std::optional<int> found;
            for (int e : edges)
                if (base_edge_[e] == s.edge) {
                    found = e;
                    break;
                }
            if (!found)
                return std::nullopt;
            lifted.steps.push_back({*found, s.exponent});
            cur = s.exponent == 1 ? graph_.edge(*found).target : graph_.edge(*found).source;
        }
        return lifted;
    }

    /// The unique lift of alpha starting at v.
    Path lift_path(int v, const Path& alpha) const
    {
        auto p = try_lift(v, alpha);
        if (!p)
            throw PreconditionError("lift leaves the cover fragment");
        return *p;
    }

    /// End of the lift at v of the canonical minimal positive path
    /// rho(v) -> chamber.
    std::optional<int> lift_endpoint(int v, int chamber) const
    {
        const auto p = try_lift(v, minimal_positive_path(*base_, chamber_of_[v], chamber));
        if (!p)
            return std::nullopt;
        return path_end(graph_, *p);
    }

    /// The vertex v over `chamber` whose lift of chamber -> rho(w) ends at w.
    std::optional<int> v_of(int chamber, int w) const
    {
        check_vertex(w);
        const Path back = inverse(base_->graph(), minimal_positive_path(*base_, chamber, chamber_of_[w]));
        const auto p = try_lift(w, back);
        if (!p)
            return std::nullopt;
        return path_end(graph_, *p);
    }

    std::string to_dot() const { return graph_.to_dot("Theta"); }

    void check_vertex(int v) const
    {
        if (v < 0 || static_cast<std::size_t>(v) >= size())
            throw PreconditionError("cover vertex out of range");
    }

private:
    friend CoverGraph build_cover(std::shared_ptr<const OrientedSystem>, const DeckLabeling&);
    friend CoverGraph universal_cover_ball(std::shared_ptr<const OrientedSystem>, int);
    friend CoverGraph identity_cover(std::shared_ptr<const OrientedSystem>);

    CoverGraph(std::shared_ptr<const OrientedSystem> base, OrientedGraph graph, std::vector<int> chamber_of,
               std::vector<int> base_edge, bool complete, bool exact, int degree)
        : base_(std::move(base)), graph_(std::move(graph)), chamber_of_(std::move(chamber_of)),
          base_edge_(std::move(base_edge)), complete_(complete), exact_(exact), degree_(degree)
    {
        find_components();
    }

    void find_components()
    {
        const std::size_t n = graph_.size();
        component_.assign(n, -1);
        component_count_ = 0;
        for (std::size_t root = 0; root < n; ++root) {
            if (component_[root] >= 0)
                continue;
            std::deque<int> queue{static_cast<int>(root)};
            component_[root] = component_count_;
            while (!queue.empty()) {
                const int v = queue.front();
                queue.pop_front();
                auto visit = [&](int w) {
                    if (component_[w] < 0) {
                        component_[w] = component_count_;
                        queue.push_back(w);
                    }
                };
                for (int e : graph_.out_edges(v))
                    visit(graph_.edge(e).target);
                for (int e : graph_.in_edges(v))
                    visit(graph_.edge(e).source);
            }
            ++component_count_;
        }
        // Fiber size of a component: vertices over chamber 0 (Gamma is connected).
        fiber_.assign(component_count_, 0);
        for (std::size_t v = 0; v < n; ++v)
            if (chamber_of_[v] == 0)
                ++fiber_[component_[v]];
    }

    std::shared_ptr<const OrientedSystem> base_;
    OrientedGraph graph_;
    std::vector<int> chamber_of_;
    std::vector<int> base_edge_;
    bool complete_ = true;
    bool exact_ = true;
    int degree_ = 1;
    std::vector<int> component_;
    int component_count_ = 0;
    std::vector<int> fiber_;
};

/// Theta with vertices (chamber, sheet), chamber-major, and an edge
/// (C, s) -> (C', label(e)(s)) over every base edge e: C -> C'. Refuses
/// labelings that fail validation.
inline CoverGraph build_cover(std::shared_ptr<const OrientedSystem> gamma, const DeckLabeling& deck)
{
    const auto report = validate_deck(*gamma, deck);
    if (!report.ok)
        throw PreconditionError("deck labeling violates the path equivalence (" +
                                std::to_string(report.violations.size()) + " generating pairs fail)");
    const auto& g = gamma->graph();
    const int m = deck.degree;
    std::vector<std::string> labels;
    std::vector<int> chamber_of;
    for (std::size_t c = 0; c < g.size(); ++c)
        for (int s = 0; s < m; ++s) {
            labels.push_back(g.label(c) + "#" + std::to_string(s));
            chamber_of.push_back(static_cast<int>(c));
        }
    std::vector<Edge> edges;
    std::vector<int> base_edge;
    for (std::size_t c = 0; c < g.size(); ++c)
        for (int s = 0; s < m; ++s)
            for (int e : g.out_edges(c)) {
                const int t = g.edge(e).target;
                edges.push_back({static_cast<int>(c) * m + s, t * m + deck.at(e)(s)});
                base_edge.push_back(e);
            }
    return CoverGraph(gamma, OrientedGraph(std::move(labels), std::move(edges)), std::move(chamber_of),
                      std::move(base_edge), true, true, m);
}

inline CoverGraph identity_cover(std::shared_ptr<const OrientedSystem> gamma)
{
    const auto& g = gamma->graph();
    std::vector<int> chamber_of(g.size());
    std::iota(chamber_of.begin(), chamber_of.end(), 0);
    std::vector<int> base_edge(g.edge_count());
    std::iota(base_edge.begin(), base_edge.end(), 0);
    OrientedGraph copy = g;
    return CoverGraph(gamma, std::move(copy), std::move(chamber_of), std::move(base_edge), true, true, 1);
}

namespace detail {

/// Oriented rewriting rules l -> r with r shortlex-smaller than l, derived
/// from the generating pairs and their inverses.
inline std::vector<std::pair<std::vector<Step>, std::vector<Step>>> rewriting_rules(const OrientedSystem& gamma)
{
    std::vector<std::pair<std::vector<Step>, std::vector<Step>>> rules;
    auto add = [&](std::vector<Step> a, std::vector<Step> b) {
        if (a == b)
            return;
        if (a < b)
            std::swap(a, b);
        rules.emplace_back(std::move(a), std::move(b));
    };
    const auto& g = gamma.graph();
    for (const auto& rel : relation_generators(gamma)) {
        add(rel.first.steps, rel.second.steps);
        add(inverse(g, rel.first).steps, inverse(g, rel.second).steps);
    }
    return rules;
}

inline std::vector<Step> normal_form(std::vector<Step> word,
                                     const std::vector<std::pair<std::vector<Step>, std::vector<Step>>>& rules)
{
    for (bool changed = true; changed;) {
        changed = false;
        word = freely_reduce(word);
        for (const auto& [lhs, rhs] : rules) {
            auto it = std::search(word.begin(), word.end(), lhs.begin(), lhs.end());
            if (it == word.end())
                continue;
            const auto pos = it - word.begin();
            word.erase(word.begin() + pos, word.begin() + pos + static_cast<std::ptrdiff_t>(lhs.size()));
            word.insert(word.begin() + pos, rhs.begin(), rhs.end());
            changed = true;
            break;
        }
    }
    return word;
}

inline std::string word_label(const std::vector<Step>& word)
{
    if (word.empty())
        return "1";
    std::string out;
    for (const auto& s : word) {
        if (!out.empty())
            out += '*';
        out += 'e' + std::to_string(s.edge);
        if (s.exponent == -1)
            out += "^-1";
    }
    return out;
}

}  // namespace detail

/**
 * Ball of radius r around the base chamber (vertex 0) in the universal
 * cover of (Gamma, ~). Vertices are classes of paths from the base chamber,
 * represented by normal-form words. Without codim-2 faces the path
 * equivalence is just free reduction and the ball is exact; otherwise words
 * are rewritten by the generating pairs and the fragment is marked inexact.
 */
inline CoverGraph universal_cover_ball(std::shared_ptr<const OrientedSystem> gamma, int radius)
{
    if (radius < 0)
        throw PreconditionError("radius must be nonnegative");
    const auto& g = gamma->graph();
    const auto rules = detail::rewriting_rules(*gamma);
    const bool exact = rules.empty();

    std::map<std::vector<Step>, int> index;
    std::vector<std::vector<Step>> words;
    std::vector<int> chamber_of;
    auto end_of = [&](const std::vector<Step>& w) { return path_end(g, Path{0, w}); };

    index.emplace(std::vector<Step>{}, 0);
    words.emplace_back();
    chamber_of.push_back(0);
    std::vector<int> depth{0};
    for (std::size_t head = 0; head < words.size(); ++head) {
        if (depth[head] == radius)
            continue;
        const auto w = words[head];
        const int c = chamber_of[head];
        std::vector<Step> moves;
        for (int e : g.out_edges(c))
            moves.push_back({e, 1});
        for (int e : g.in_edges(c))
            moves.push_back({e, -1});
        for (const auto& m : moves) {
            auto next = w;
            next.push_back(m);
            next = detail::normal_form(std::move(next), rules);
            if (index.contains(next))
                continue;
            index.emplace(next, static_cast<int>(words.size()));
            chamber_of.push_back(end_of(next));
            depth.push_back(depth[head] + 1);
            words.push_back(std::move(next));
        }
    }

    std::vector<std::string> labels;
    for (std::size_t v = 0; v < words.size(); ++v)
        labels.push_back(g.label(chamber_of[v]) + "@" + detail::word_label(words[v]));
    std::vector<Edge> edges;
    std::vector<int> base_edge;
    for (std::size_t v = 0; v < words.size(); ++v) {
        for (int e : g.out_edges(chamber_of[v])) {
            auto next = words[v];
            next.push_back({e, 1});
            next = detail::normal_form(std::move(next), rules);
            const auto it = index.find(next);
            if (it == index.end())
                continue;
            edges.push_back({static_cast<int>(v), it->second});
            base_edge.push_back(e);
        }
    }
    return CoverGraph(gamma, OrientedGraph(std::move(labels), std::move(edges)), std::move(chamber_of),
                      std::move(base_edge), false, exact, 0);
}

}  // namespace arrcover

#endif
