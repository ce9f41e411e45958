#ifndef ARRCOVER_COMPLEX_HPP
#define ARRCOVER_COMPLEX_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace arrcover {

using Simplex = std::vector<int>;  // sorted vertex indices

/**
 * Abstract simplicial complex given by its maximal simplices. The full
 * simplex set is the closure under subsets and is generated on demand.
 */
class SimplicialComplex
{
public:
    SimplicialComplex() = default;

    /// Build from any generating family of simplices; keeps only the
    /// maximal ones. Every vertex must occur in some simplex.
    SimplicialComplex(std::vector<std::string> vertices, std::vector<Simplex> simplices)
        : vertices_(std::move(vertices))
    {
        for (auto& s : simplices) {
            std::sort(s.begin(), s.end());
            if (s.empty() || std::adjacent_find(s.begin(), s.end()) != s.end())
                throw PreconditionError("simplex must be a nonempty set of distinct vertices");
            if (s.front() < 0 || static_cast<std::size_t>(s.back()) >= vertices_.size())
                throw PreconditionError("simplex vertex out of range");
        }
        std::sort(simplices.begin(), simplices.end(),
                  [](const Simplex& a, const Simplex& b) { return a.size() != b.size() ? a.size() > b.size() : a < b; });
        simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());
        // Containment test against larger simplices through the vertex stars.
        std::vector<std::vector<int>> star(vertices_.size());
        for (auto& s : simplices) {
            bool contained = false;
            for (int m : star[s.front()]) {
                const auto& big = maximal_[m];
                if (big.size() > s.size() && std::includes(big.begin(), big.end(), s.begin(), s.end())) {
                    contained = true;
                    break;
                }
            }
            if (contained)
                continue;
            for (int v : s)
                star[v].push_back(static_cast<int>(maximal_.size()));
            maximal_.push_back(std::move(s));
        }
        std::sort(maximal_.begin(), maximal_.end());
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            if (star[v].empty())
                throw PreconditionError("vertex '" + vertices_[v] + "' lies in no simplex");
    }

    std::size_t vertex_count() const { return vertices_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::string& vertex(std::size_t i) const { return vertices_[i]; }
    const std::vector<Simplex>& maximal_simplices() const { return maximal_; }

    int dimension() const
    {
        int d = -1;
        for (const auto& s : maximal_)
            d = std::max(d, static_cast<int>(s.size()) - 1);
        return d;
    }

    /// All simplices, grouped by dimension, each group sorted.
    std::vector<std::vector<Simplex>> all_simplices() const
    {
        const int dim = dimension();
        std::vector<std::set<Simplex>> sets(dim + 1);
        for (const auto& m : maximal_) {
            const std::size_t k = m.size();
            for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
                Simplex s;
                for (std::size_t i = 0; i < k; ++i)
                    if (mask & (1ul << i))
                        s.push_back(m[i]);
                sets[s.size() - 1].insert(std::move(s));
            }
        }
        std::vector<std::vector<Simplex>> out(dim + 1);
        for (int d = 0; d <= dim; ++d)
            out[d].assign(sets[d].begin(), sets[d].end());
        return out;
    }

    bool contains(const Simplex& s) const
    {
        for (const auto& m : maximal_)
            if (m.size() >= s.size() && std::includes(m.begin(), m.end(), s.begin(), s.end()))
                return true;
        return false;
    }

    /// Maximal simplices containing vertex v.
    std::vector<Simplex> star(int v) const
    {
        std::vector<Simplex> out;
        for (const auto& m : maximal_)
            if (std::binary_search(m.begin(), m.end(), v))
                out.push_back(m);
        return out;
    }

    /// Connected component index of every vertex, numbered by first vertex.
    std::vector<int> components() const
    {
        std::vector<int> parent(vertices_.size());
        for (std::size_t i = 0; i < parent.size(); ++i)
            parent[i] = static_cast<int>(i);
        auto find = [&](int x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& m : maximal_)
            for (std::size_t i = 1; i < m.size(); ++i)
                parent[find(m[i])] = find(m[0]);
        std::map<int, int> ids;
        std::vector<int> out(vertices_.size());
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            out[v] = ids.try_emplace(find(static_cast<int>(v)), static_cast<int>(ids.size())).first->second;
        return out;
    }

    /// Full subcomplex spanned by the given vertices (kept in given order).
    SimplicialComplex induced(const std::vector<int>& keep) const
    {
        std::map<int, int> renumber;
        std::vector<std::string> labels;
        for (int v : keep) {
            renumber.emplace(v, static_cast<int>(labels.size()));
            labels.push_back(vertices_[v]);
        }
        std::vector<Simplex> simplices;
        for (const auto& m : maximal_) {
            Simplex s;
            for (int v : m)
                if (auto it = renumber.find(v); it != renumber.end())
                    s.push_back(it->second);
            if (!s.empty())
                simplices.push_back(std::move(s));
        }
        return SimplicialComplex(std::move(labels), std::move(simplices));
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Simplex> maximal_;
};

/// A vertex map between complexes; construction checks that every simplex
/// goes to a simplex.
class SimplicialMap
{
public:
    SimplicialMap(std::shared_ptr<const SimplicialComplex> source, std::shared_ptr<const SimplicialComplex> target,
                  std::vector<int> vertex_map)
        : source_(std::move(source)), target_(std::move(target)), map_(std::move(vertex_map))
    {
        if (map_.size() != source_->vertex_count())
            throw PreconditionError("vertex map has wrong size");
        for (int t : map_)
            if (t < 0 || static_cast<std::size_t>(t) >= target_->vertex_count())
                throw PreconditionError("vertex map image out of range");
        for (const auto& s : source_->maximal_simplices()) {
            const Simplex img = image(s);
            if (!target_->contains(img))
                throw PreconditionError("map is not simplicial: image of a simplex is not a simplex");
        }
    }

    const SimplicialComplex& source() const { return *source_; }
    const SimplicialComplex& target() const { return *target_; }
    const std::shared_ptr<const SimplicialComplex>& source_ptr() const { return source_; }
    const std::shared_ptr<const SimplicialComplex>& target_ptr() const { return target_; }
    int operator()(int v) const { return map_[v]; }
    const std::vector<int>& vertex_map() const { return map_; }

    Simplex image(const Simplex& s) const
    {
        Simplex out;
        for (int v : s)
            out.push_back(map_[v]);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    std::shared_ptr<const SimplicialComplex> source_;
    std::shared_ptr<const SimplicialComplex> target_;
    std::vector<int> map_;
};

}  // namespace arrcover

#endif
