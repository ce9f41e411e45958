#ifndef ARRCOVER_DIAGRAMS_HPP
#define ARRCOVER_DIAGRAMS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arrangement.hpp"
#include "complex.hpp"
#include "covers.hpp"
#include "errors.hpp"
#include "poset.hpp"

namespace arrcover {

/**
 * A diagram of posets: an index poset P, a finite poset Q_p for every p and
 * a monotone map f_{p>q}: Q_p -> Q_q for every strict relation p > q.
 *
 * Diagrams over finite fragments of infinite covers are `partial`: a map
 * entry of -1 means the image lies outside the fragment.
 */
class PosetDiagram
{
public:
    using MapTable = std::map<std::pair<int, int>, std::vector<int>>;

    PosetDiagram(FinitePoset index, std::vector<FinitePoset> spaces, MapTable maps, bool partial = false)
        : index_(std::move(index)), spaces_(std::move(spaces)), maps_(std::move(maps)), partial_(partial)
    {
        if (spaces_.size() != index_.size())
            throw PreconditionError("diagram needs one space per index element");
        check();
    }

    const FinitePoset& index() const { return index_; }
    const FinitePoset& space(std::size_t p) const { return spaces_[p]; }
    const std::vector<FinitePoset>& spaces() const { return spaces_; }
    bool partial() const { return partial_; }

    /// f_{p>q}; the identity when p == q.
    int apply(int p, int q, int x) const
    {
        if (p == q)
            return x;
        auto it = maps_.find({p, q});
        if (it == maps_.end())
            throw PreconditionError("no map for " + index_.label(p) + " > " + index_.label(q));
        return it->second[x];
    }

    const MapTable& maps() const { return maps_; }

    /// Restriction to a subset of index elements (kept in the given order).
    PosetDiagram restrict_to(const std::vector<int>& subset) const
    {
        std::vector<FinitePoset> spaces;
        for (int p : subset)
            spaces.push_back(spaces_[p]);
        MapTable maps;
        for (std::size_t a = 0; a < subset.size(); ++a)
            for (std::size_t b = 0; b < subset.size(); ++b)
                if (index_.greater(subset[a], subset[b]))
                    maps.emplace(std::make_pair(static_cast<int>(a), static_cast<int>(b)),
                                 maps_.at({subset[a], subset[b]}));
        return PosetDiagram(index_.induced(subset), std::move(spaces), std::move(maps), partial_);
    }

private:
    void check() const
    {
        const std::size_t n = index_.size();
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                if (!index_.greater(p, q))
                    continue;
                auto it = maps_.find({static_cast<int>(p), static_cast<int>(q)});
                if (it == maps_.end())
                    throw PreconditionError("missing map for " + index_.label(p) + " > " + index_.label(q));
                const auto& f = it->second;
                const auto& src = spaces_[p];
                const auto& dst = spaces_[q];
                if (f.size() != src.size())
                    throw PreconditionError("map for " + index_.label(p) + " > " + index_.label(q) + " has wrong size");
                for (int y : f)
                    if (y < -1 || y >= static_cast<int>(dst.size()) || (y == -1 && !partial_))
                        throw PreconditionError("map image out of range");
                for (std::size_t x = 0; x < src.size(); ++x)
                    for (std::size_t y = 0; y < src.size(); ++y)
                        if (src.greater(x, y) && f[x] >= 0 && f[y] >= 0 && !dst.geq(f[x], f[y]))
                            throw VerificationError("map " + index_.label(p) + " > " + index_.label(q) +
                                                    " is not monotone");
            }
        }
        // Functoriality over every chain p > q > r.
        for (const auto& [pq, f] : maps_) {
            const auto [p, q] = pq;
            const Bits& below_q = index_.down_set(q);
            for (std::size_t r = below_q.find_first(); r != Bits::npos; r = below_q.find_next(r)) {
                if (static_cast<int>(r) == q)
                    continue;
                const auto& g = maps_.at({q, static_cast<int>(r)});
                const auto& h = maps_.at({p, static_cast<int>(r)});
                for (std::size_t x = 0; x < f.size(); ++x) {
                    if (f[x] < 0 || g[f[x]] < 0)
                        continue;
                    if (h[x] != g[f[x]])
                        throw VerificationError("diagram is not functorial on " + index_.label(p) + " > " +
                                                index_.label(q) + " > " + index_.label(r));
                }
            }
        }
    }

    FinitePoset index_;
    std::vector<FinitePoset> spaces_;
    MapTable maps_;
    bool partial_ = false;
};

/// The poset limit together with the (p, q) coordinates of each element.
struct Plim
{
    FinitePoset poset;
    std::vector<std::pair<int, int>> coordinates;

    std::optional<int> find(int p, int q) const
    {
        auto it = std::lower_bound(coordinates.begin(), coordinates.end(), std::make_pair(p, q));
        if (it == coordinates.end() || *it != std::make_pair(p, q))
            return std::nullopt;
        return static_cast<int>(it - coordinates.begin());
    }
};

/**
 * Plim D: elements (p, q) with q in Q_p, and (p1, q1) >= (p2, q2) iff
 * p1 >= p2 and f_{p1>p2}(q1) >= q2. For partial diagrams, elements with an
 * undefined image are left out.
 */
inline Plim plim(const PosetDiagram& d)
{
    const auto& index = d.index();
    Plim out;
    for (std::size_t p = 0; p < index.size(); ++p) {
        const Bits& below = index.down_set(p);
        for (std::size_t q = 0; q < d.space(p).size(); ++q) {
            bool defined = true;
            for (std::size_t r = below.find_first(); r != Bits::npos && defined; r = below.find_next(r))
                defined = d.apply(static_cast<int>(p), static_cast<int>(r), static_cast<int>(q)) >= 0;
            if (defined)
                out.coordinates.emplace_back(static_cast<int>(p), static_cast<int>(q));
        }
    }
    const std::size_t n = out.coordinates.size();
    std::vector<std::string> labels;
    std::vector<Bits> rows(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto [p, q] = out.coordinates[i];
        labels.push_back("(" + index.label(p) + "," + d.space(p).label(q) + ")");
        const Bits& below = index.down_set(p);
        for (std::size_t r = below.find_first(); r != Bits::npos; r = below.find_next(r)) {
            const int img = d.apply(p, static_cast<int>(r), q);
            const Bits& under = d.space(r).down_set(img);
            for (std::size_t s = under.find_first(); s != Bits::npos; s = under.find_next(s))
                if (auto j = out.find(static_cast<int>(r), static_cast<int>(s)))
                    rows[i].set(*j);
        }
    }
    out.poset = FinitePoset::from_order(std::move(labels), std::move(rows));
    return out;
}

/// Order complex: vertices are the poset elements, maximal simplices the
/// maximal chains.
inline SimplicialComplex order_complex(const FinitePoset& p)
{
    std::vector<Simplex> chains;
    Simplex cur;
    auto walk = [&](auto&& self, int v) -> void {
        cur.push_back(v);
        if (p.lower_covers(v).empty())
            chains.push_back(cur);
        for (int w : p.lower_covers(v))
            self(self, w);
        cur.pop_back();
    };
    for (int top : p.maximal_elements())
        walk(walk, top);
    return SimplicialComplex(p.labels(), std::move(chains));
}

/// D_id: Q_F = chambers C <= F (antichain), f_{F1>F2}(C) = F2 o C.
inline PosetDiagram diagram_id(const FacePoset& faces)
{
    const std::size_t n = faces.size();
    std::vector<std::vector<int>> members(n);
    std::vector<FinitePoset> spaces;
    for (std::size_t f = 0; f < n; ++f) {
        members[f] = faces.chambers_below(f);
        std::vector<std::string> labels;
        for (int c : members[f])
            labels.push_back(faces[c].str());
        spaces.push_back(FinitePoset::antichain(std::move(labels)));
    }
    PosetDiagram::MapTable maps;
    for (std::size_t f1 = 0; f1 < n; ++f1)
        for (std::size_t f2 = 0; f2 < n; ++f2) {
            if (!faces.greater(f1, f2))
                continue;
            std::vector<int> img;
            for (int c : members[f1]) {
                const int target = faces.compose(f2, c);
                const auto pos = std::find(members[f2].begin(), members[f2].end(), target);
                img.push_back(static_cast<int>(pos - members[f2].begin()));
            }
            maps.emplace(std::make_pair(static_cast<int>(f1), static_cast<int>(f2)), std::move(img));
        }
    return PosetDiagram(faces.poset(), std::move(spaces), std::move(maps));
}

/// Cover vertices v with rho(v) <= F, in vertex order.
inline std::vector<int> rho_space(const CoverGraph& theta, int face)
{
    std::vector<int> out;
    const auto& gamma = theta.base();
    for (std::size_t v = 0; v < theta.size(); ++v)
        if (gamma.below(theta.projection(static_cast<int>(v)), face))
            out.push_back(static_cast<int>(v));
    return out;
}

/**
 * D_rho: Q_F = {v : rho(v) <= F} (antichain), and
 * f_{F1>F2}(v) = end of the lift at v of rho(v) -> F2 o rho(v).
 */
inline PosetDiagram diagram_rho(const CoverGraph& theta)
{
    const auto& gamma = theta.base();
    const auto& faces = gamma.faces();
    const std::size_t n = faces.size();
    std::vector<std::vector<int>> members(n);
    std::vector<std::map<int, int>> position(n);
    std::vector<FinitePoset> spaces;
    for (std::size_t f = 0; f < n; ++f) {
        members[f] = rho_space(theta, static_cast<int>(f));
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < members[f].size(); ++i) {
            labels.push_back(theta.graph().label(members[f][i]));
            position[f].emplace(members[f][i], static_cast<int>(i));
        }
        spaces.push_back(FinitePoset::antichain(std::move(labels)));
    }
    PosetDiagram::MapTable maps;
    for (std::size_t f1 = 0; f1 < n; ++f1)
        for (std::size_t f2 = 0; f2 < n; ++f2) {
            if (!faces.greater(f1, f2))
                continue;
            std::vector<int> img;
            for (int v : members[f1]) {
                const int c = theta.projection(v);
                const int target = gamma.vertex_of_face(faces.compose(f2, gamma.face_of(c)));
                const auto w = theta.lift_endpoint(v, target);
                img.push_back(w ? position[f2].at(*w) : -1);
            }
            maps.emplace(std::make_pair(static_cast<int>(f1), static_cast<int>(f2)), std::move(img));
        }
    return PosetDiagram(faces.poset(), std::move(spaces), std::move(maps), !theta.complete());
}

/// All nonempty chains of P, each as sorted element indices.
inline std::vector<std::vector<int>> chains_of(const FinitePoset& p)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto extend = [&](auto&& self, std::size_t from) -> void {
        for (std::size_t j = from; j < p.size(); ++j) {
            const bool comparable = std::all_of(cur.begin(), cur.end(), [&](int i) { return p.geq(i, j) || p.geq(j, i); });
            if (!comparable)
                continue;
            cur.push_back(static_cast<int>(j));
            out.push_back(cur);
            self(self, j + 1);
            cur.pop_back();
        }
    };
    extend(extend, 0);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    return out;
}

/**
 * mu*D over the chain poset: chains of P ordered by reverse inclusion, the
 * space at a chain is the space at its minimum, and maps are the maps of D
 * between minima.
 */
inline PosetDiagram mu_star(const PosetDiagram& d)
{
    const auto& p = d.index();
    const auto chains = chains_of(p);
    const std::size_t n = chains.size();
    std::vector<int> minimum(n);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = chains[i];
        int m = c.front();
        for (int x : c)
            if (p.geq(m, x))
                m = x;
        minimum[i] = m;
        // List the chain from its minimum upwards.
        auto ordered = c;
        std::sort(ordered.begin(), ordered.end(), [&](int a, int b) { return p.greater(b, a); });
        std::string label = "{";
        for (std::size_t k = 0; k < ordered.size(); ++k) {
            if (k)
                label += "<";
            label += p.label(ordered[k]);
        }
        labels.push_back(label + "}");
    }
    std::vector<Bits> rows(n, Bits(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (std::includes(chains[b].begin(), chains[b].end(), chains[a].begin(), chains[a].end()))
                rows[a].set(b);
    auto index = FinitePoset::from_order(std::move(labels), std::move(rows));

    std::vector<FinitePoset> spaces;
    for (std::size_t i = 0; i < n; ++i)
        spaces.push_back(d.space(minimum[i]));
    PosetDiagram::MapTable maps;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (!index.greater(a, b))
                continue;
            std::vector<int> img(spaces[a].size());
            for (std::size_t x = 0; x < img.size(); ++x)
                img[x] = d.apply(minimum[a], minimum[b], static_cast<int>(x));
            maps.emplace(std::make_pair(static_cast<int>(a), static_cast<int>(b)), std::move(img));
        }
    return PosetDiagram(std::move(index), std::move(spaces), std::move(maps), d.partial());
}

/**
 * Falk's diagram E on F(A)^op: the space at F is Plim of D_id restricted to
 * the ideal F_{<=F} (the Salvetti complex of the localization at F), and for
 * F1 <= F2 the map E(F1) -> E(F2) is the inclusion.
 */
inline PosetDiagram diagram_falk(const FacePoset& faces)
{
    const auto did = diagram_id(faces);
    const std::size_t n = faces.size();
    std::vector<std::vector<std::pair<int, int>>> coords(n);  // (global face, chamber face)
    std::vector<FinitePoset> spaces;
    for (std::size_t f = 0; f < n; ++f) {
        const auto ideal = faces.ideal(f);
        const auto local = plim(did.restrict_to(ideal));
        for (const auto& [g, q] : local.coordinates)
            coords[f].emplace_back(ideal[g], faces.chambers_below(ideal[g])[q]);
        spaces.push_back(local.poset);
    }
    const auto index = faces.poset().opposite();
    PosetDiagram::MapTable maps;
    for (std::size_t f1 = 0; f1 < n; ++f1)
        for (std::size_t f2 = 0; f2 < n; ++f2) {
            if (!index.greater(f1, f2))
                continue;
            std::vector<int> img;
            for (const auto& c : coords[f1]) {
                const auto pos = std::find(coords[f2].begin(), coords[f2].end(), c);
                if (pos == coords[f2].end())
                    throw VerificationError("Falk diagram: inclusion is not defined");
                img.push_back(static_cast<int>(pos - coords[f2].begin()));
            }
            maps.emplace(std::make_pair(static_cast<int>(f1), static_cast<int>(f2)), std::move(img));
        }
    return PosetDiagram(index, std::move(spaces), std::move(maps));
}

}  // namespace arrcover

#endif
