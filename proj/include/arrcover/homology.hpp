#ifndef ARRCOVER_HOMOLOGY_HPP
#define ARRCOVER_HOMOLOGY_HPP

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "rational.hpp"

namespace arrcover {

/// Integer matrix stored as sparse rows.
struct SparseMatrix
{
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::map<int, BigInt>> entries;  // entries[row][col]

    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r) {}

    void add(int r, int c, const BigInt& v)
    {
        auto& x = entries[r][c];
        x += v;
        if (x == 0)
            entries[r].erase(c);
    }
};

namespace detail {

inline BigInt abs_value(const BigInt& x)
{
    return x < 0 ? BigInt(-x) : x;
}

inline void divide_content(std::map<int, BigInt>& row)
{
    BigInt g = 0;
    for (const auto& [c, v] : row)
        g = boost::multiprecision::gcd(g, abs_value(v));
    if (g > 1)
        for (auto& [c, v] : row)
            v /= g;
}

}  // namespace detail

/// Rank over Q by fraction-free row reduction (rows scaled to primitive
/// content after every combination).
inline std::size_t rational_rank(const SparseMatrix& m)
{
    std::map<int, std::map<int, BigInt>> pivots;  // leading column -> row
    for (const auto& original : m.entries) {
        auto row = original;
        while (!row.empty()) {
            const auto [lead, a] = *row.begin();
            auto it = pivots.find(lead);
            if (it == pivots.end()) {
                detail::divide_content(row);
                pivots.emplace(lead, std::move(row));
                break;
            }
            const BigInt p = it->second.begin()->second;
            const BigInt factor = a;
            std::map<int, BigInt> next;
            for (const auto& [c, v] : row)
                next[c] += p * v;
            for (const auto& [c, v] : it->second)
                next[c] -= factor * v;
            std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
            detail::divide_content(next);
            row = std::move(next);
        }
    }
    return pivots.size();
}

/// Nonzero invariant factors of the Smith normal form, ascending (each
/// divides the next).
inline std::vector<BigInt> smith_invariants(const SparseMatrix& m)
{
    std::vector<std::map<int, BigInt>> rows = m.entries;
    std::vector<std::set<int>> col_rows(m.cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r])
            col_rows[c].insert(static_cast<int>(r));
    std::vector<bool> row_alive(rows.size(), true);
    std::vector<BigInt> factors;

    // Eliminate unit pivots sparsely; each contributes an invariant factor 1.
    for (bool found = true; found;) {
        found = false;
        for (std::size_t r = 0; r < rows.size() && !found; ++r) {
            if (!row_alive[r])
                continue;
            for (const auto& [c, v] : rows[r]) {
                if (v != 1 && v != -1)
                    continue;
                found = true;
                const int col = c;
                const BigInt pivot = v;
                const auto pivot_row = rows[r];
                const std::vector<int> others(col_rows[col].begin(), col_rows[col].end());
                for (int r2 : others) {
                    if (r2 == static_cast<int>(r))
                        continue;
                    const BigInt q = rows[r2].at(col) * pivot;  // pivot is its own inverse
                    for (const auto& [pc, pv] : pivot_row) {
                        auto& x = rows[r2][pc];
                        x -= q * pv;
                        if (x == 0) {
                            rows[r2].erase(pc);
                            col_rows[pc].erase(r2);
                        } else {
                            col_rows[pc].insert(r2);
                        }
                    }
                }
                for (const auto& [pc, pv] : pivot_row)
                    col_rows[pc].erase(static_cast<int>(r));
                rows[r].clear();
                row_alive[r] = false;
                factors.push_back(1);
                break;
            }
        }
    }

    // Dense Smith normal form on what is left.
    std::vector<int> live_rows, live_cols;
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (row_alive[r] && !rows[r].empty())
            live_rows.push_back(static_cast<int>(r));
    for (std::size_t c = 0; c < m.cols; ++c)
        if (!col_rows[c].empty())
            live_cols.push_back(static_cast<int>(c));
    const std::size_t R = live_rows.size(), C = live_cols.size();
    std::vector<std::vector<BigInt>> a(R, std::vector<BigInt>(C, BigInt(0)));
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j)
            if (auto it = rows[live_rows[i]].find(live_cols[j]); it != rows[live_rows[i]].end())
                a[i][j] = it->second;

    bool exhausted = false;
    for (std::size_t t = 0; t < std::min(R, C) && !exhausted; ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pi = R, pj = C;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j)
                    if (a[i][j] != 0 && (pi == R || detail::abs_value(a[i][j]) < detail::abs_value(a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == R) {
                exhausted = true;
                break;
            }
            std::swap(a[t], a[pi]);
            for (auto& row : a)
                std::swap(row[t], row[pj]);
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (a[i][t] == 0)
                    continue;
                const BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < C; ++j)
                    a[i][j] -= q * a[t][j];
                if (a[i][t] != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (a[t][j] == 0)
                    continue;
                const BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < R; ++i)
                    a[i][j] -= q * a[i][t];
                if (a[t][j] != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // Enforce divisibility of the rest of the block.
            bool divisible = true;
            for (std::size_t i = t + 1; i < R && divisible; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < C; ++k)
                            a[t][k] += a[i][k];
                        divisible = false;
                        break;
                    }
            if (divisible)
                break;
        }
        if (!exhausted)
            factors.push_back(detail::abs_value(a[t][t]));
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

/// Simplicial chain complex of K: simplices by dimension and boundary maps.
struct ChainComplex
{
    std::vector<std::vector<Simplex>> simplices;

    explicit ChainComplex(const SimplicialComplex& k) : simplices(k.all_simplices()) {}

    int dimension() const { return static_cast<int>(simplices.size()) - 1; }

    /// Boundary C_k -> C_{k-1}, with rows indexed by (k-1)-simplices.
    SparseMatrix boundary(int k) const
    {
        if (k <= 0 || k > dimension())
            return SparseMatrix(0, 0);
        const auto& lower = simplices[k - 1];
        SparseMatrix m(lower.size(), simplices[k].size());
        for (std::size_t j = 0; j < simplices[k].size(); ++j) {
            const auto& s = simplices[k][j];
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex face = s;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                const auto row = std::lower_bound(lower.begin(), lower.end(), face) - lower.begin();
                m.add(static_cast<int>(row), static_cast<int>(j), (i % 2 == 0) ? BigInt(1) : BigInt(-1));
            }
        }
        return m;
    }
};

inline long long euler_characteristic(const SimplicialComplex& k)
{
    long long chi = 0;
    const auto all = k.all_simplices();
    for (std::size_t d = 0; d < all.size(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(all[d].size());
    return chi;
}

/// Betti numbers over Q, one per degree 0..dim.
inline std::vector<long long> betti_numbers(const SimplicialComplex& k)
{
    const ChainComplex cc(k);
    const int dim = cc.dimension();
    std::vector<std::size_t> ranks(dim + 2, 0);  // ranks[k] = rank of boundary C_k -> C_{k-1}
    for (int d = 1; d <= dim; ++d)
        ranks[d] = rational_rank(cc.boundary(d));
    std::vector<long long> betti(dim + 1);
    for (int d = 0; d <= dim; ++d)
        betti[d] = static_cast<long long>(cc.simplices[d].size()) - static_cast<long long>(ranks[d]) -
                   static_cast<long long>(ranks[d + 1]);
    return betti;
}

struct HomologySummary
{
    std::vector<long long> betti;
    std::vector<BigInt> h1_invariant_factors;  // torsion of H_1 (factors > 1)
    long long euler = 0;
};

/// Betti numbers plus H_1 torsion from the integral boundary C_2 -> C_1.
inline HomologySummary homology(const SimplicialComplex& k)
{
    HomologySummary h;
    h.betti = betti_numbers(k);
    h.euler = euler_characteristic(k);
    const ChainComplex cc(k);
    if (cc.dimension() >= 2)
        for (const auto& f : smith_invariants(cc.boundary(2)))
            if (f > 1)
                h.h1_invariant_factors.push_back(f);
    return h;
}

}  // namespace arrcover

#endif
