#ifndef ARRCOVER_POSET_HPP
#define ARRCOVER_POSET_HPP

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace arrcover {

using Bits = boost::dynamic_bitset<>;

/**
 * A finite partially ordered set with string labels.
 *
 * The full order is stored as one bitset per element (`geq(i, j)` is the
 * bit j of row i); cover relations are derived once at construction.
 * Instances are immutable.
 */
class FinitePoset
{
public:
    FinitePoset() = default;

    /// Build from the full relation; rows[i][j] means i >= j. Validates the
    /// partial-order axioms.
    static FinitePoset from_order(std::vector<std::string> labels, std::vector<Bits> rows)
    {
        const std::size_t n = labels.size();
        if (rows.size() != n)
            throw PreconditionError("poset relation has wrong number of rows");
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n)
                throw PreconditionError("poset relation row has wrong width");
            if (!rows[i].test(i))
                throw VerificationError("poset relation is not reflexive at '" + labels[i] + "'");
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = rows[i].find_first(); j != Bits::npos; j = rows[i].find_next(j)) {
                if (j != i && rows[j].test(i))
                    throw VerificationError("poset relation is not antisymmetric: '" + labels[i] + "', '" +
                                            labels[j] + "'");
                if (!rows[j].is_subset_of(rows[i]))
                    throw VerificationError("poset relation is not transitive through '" + labels[j] + "'");
            }
        }
        FinitePoset p;
        p.labels_ = std::move(labels);
        p.geq_ = std::move(rows);
        p.finish();
        return p;
    }

    /// Build from cover pairs (upper, lower) by transitive closure. Pairs that
    /// are implied transitively are rejected.
    static FinitePoset from_covers(std::vector<std::string> labels,
                                   const std::vector<std::pair<int, int>>& covers)
    {
        const std::size_t n = labels.size();
        std::vector<Bits> rows(n, Bits(n));
        std::vector<std::vector<int>> lower(n);
        for (auto [u, l] : covers) {
            if (u < 0 || l < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(l) >= n || u == l)
                throw PreconditionError("invalid cover pair");
            lower[u].push_back(l);
        }
        // Depth-first closure with cycle detection.
        std::vector<int> state(n, 0);
        auto visit = [&](auto&& self, int v) -> void {
            state[v] = 1;
            rows[v].set(v);
            for (int w : lower[v]) {
                if (state[w] == 1)
                    throw VerificationError("cover relations contain a cycle through '" + labels[w] + "'");
                if (state[w] == 0)
                    self(self, w);
                rows[v] |= rows[w];
            }
            state[v] = 2;
        };
        for (std::size_t v = 0; v < n; ++v)
            if (state[v] == 0)
                visit(visit, static_cast<int>(v));
        FinitePoset p;
        p.labels_ = std::move(labels);
        p.geq_ = std::move(rows);
        p.finish();
        if (p.covers_.size() != covers.size())
            throw VerificationError("cover list contains transitively implied pairs");
        return p;
    }

    static FinitePoset antichain(std::vector<std::string> labels)
    {
        const std::size_t n = labels.size();
        std::vector<Bits> rows(n, Bits(n));
        for (std::size_t i = 0; i < n; ++i)
            rows[i].set(i);
        FinitePoset p;
        p.labels_ = std::move(labels);
        p.geq_ = std::move(rows);
        p.finish();
        return p;
    }

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    bool geq(std::size_t i, std::size_t j) const { return geq_[i].test(j); }
    bool greater(std::size_t i, std::size_t j) const { return i != j && geq_[i].test(j); }
    /// Elements j with i >= j.
    const Bits& down_set(std::size_t i) const { return geq_[i]; }

    /// Cover pairs (upper, lower), sorted.
    const std::vector<std::pair<int, int>>& covers() const { return covers_; }
    const std::vector<int>& lower_covers(std::size_t i) const { return lower_[i]; }
    const std::vector<int>& upper_covers(std::size_t i) const { return upper_[i]; }

    std::vector<int> maximal_elements() const
    {
        std::vector<int> out;
        for (std::size_t i = 0; i < size(); ++i)
            if (upper_[i].empty())
                out.push_back(static_cast<int>(i));
        return out;
    }

    std::vector<int> minimal_elements() const
    {
        std::vector<int> out;
        for (std::size_t i = 0; i < size(); ++i)
            if (lower_[i].empty())
                out.push_back(static_cast<int>(i));
        return out;
    }

    std::optional<int> index_of(const std::string& label) const
    {
        auto it = index_.find(label);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    /// The same set with the order reversed.
    FinitePoset opposite() const
    {
        const std::size_t n = size();
        std::vector<Bits> rows(n, Bits(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = geq_[i].find_first(); j != Bits::npos; j = geq_[i].find_next(j))
                rows[j].set(i);
        FinitePoset p;
        p.labels_ = labels_;
        p.geq_ = std::move(rows);
        p.finish();
        return p;
    }

    /// Induced subposet on the given elements (in the given order).
    FinitePoset induced(const std::vector<int>& subset) const
    {
        const std::size_t m = subset.size();
        std::vector<std::string> labels;
        labels.reserve(m);
        std::vector<Bits> rows(m, Bits(m));
        for (std::size_t a = 0; a < m; ++a) {
            labels.push_back(labels_[subset[a]]);
            for (std::size_t b = 0; b < m; ++b)
                if (geq_[subset[a]].test(subset[b]))
                    rows[a].set(b);
        }
        FinitePoset p;
        p.labels_ = std::move(labels);
        p.geq_ = std::move(rows);
        p.finish();
        return p;
    }

private:
    void finish()
    {
        const std::size_t n = labels_.size();
        index_.clear();
        for (std::size_t i = 0; i < n; ++i)
            index_.emplace(labels_[i], static_cast<int>(i));
        lower_.assign(n, {});
        upper_.assign(n, {});
        covers_.clear();
        for (std::size_t i = 0; i < n; ++i) {
            Bits strict = geq_[i];
            strict.reset(i);
            Bits candidates = strict;
            for (std::size_t k = strict.find_first(); k != Bits::npos; k = strict.find_next(k)) {
                Bits below_k = geq_[k];
                below_k.reset(k);
                candidates -= below_k;
            }
            for (std::size_t j = candidates.find_first(); j != Bits::npos; j = candidates.find_next(j)) {
                lower_[i].push_back(static_cast<int>(j));
                upper_[j].push_back(static_cast<int>(i));
                covers_.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }

    std::vector<std::string> labels_;
    std::vector<Bits> geq_;
    std::vector<std::pair<int, int>> covers_;
    std::vector<std::vector<int>> lower_;
    std::vector<std::vector<int>> upper_;
    std::unordered_map<std::string, int> index_;
};

}  // namespace arrcover

#endif
