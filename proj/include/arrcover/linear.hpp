#ifndef ARRCOVER_LINEAR_HPP
#define ARRCOVER_LINEAR_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace arrcover::linear {

/// Linear constraint `coeffs . x  (rel)  rhs`.
struct Constraint
{
    RationalVector coeffs;
    Rational rhs;
};

/// Row echelon form computed in place; returns the pivot column of each
/// nonzero row, in order.
inline std::vector<std::size_t> row_reduce(std::vector<RationalVector>& rows, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0)
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[r], rows[p]);
        const Rational inv = 1 / rows[r][c];
        for (auto& x : rows[r])
            x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0)
                continue;
            const Rational f = rows[i][c];
            for (std::size_t j = c; j < cols; ++j)
                rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(std::vector<RationalVector> rows)
{
    if (rows.empty())
        return 0;
    const std::size_t cols = rows.front().size();
    return row_reduce(rows, cols).size();
}

/// Solution set of a consistent linear system, x = base + sum_j t_j directions[j].
struct AffineSolution
{
    RationalVector base;
    std::vector<RationalVector> directions;

    RationalVector at(const RationalVector& t) const
    {
        RationalVector x = base;
        for (std::size_t j = 0; j < directions.size(); ++j)
            for (std::size_t i = 0; i < x.size(); ++i)
                x[i] += t[j] * directions[j][i];
        return x;
    }
};

/// Solve `a_i . x = b_i` over Q^dim; nullopt when inconsistent.
inline std::optional<AffineSolution> solve_equalities(const std::vector<Constraint>& equations, std::size_t dim)
{
    std::vector<RationalVector> rows;
    rows.reserve(equations.size());
    for (const auto& e : equations) {
        RationalVector row = e.coeffs;
        row.push_back(e.rhs);
        rows.push_back(std::move(row));
    }
    const auto pivots = row_reduce(rows, dim + 1);
    if (!pivots.empty() && pivots.back() == dim)
        return std::nullopt;

    AffineSolution sol;
    sol.base.assign(dim, Rational(0));
    std::vector<bool> is_pivot(dim, false);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        is_pivot[pivots[r]] = true;
        sol.base[pivots[r]] = rows[r][dim];
    }
    for (std::size_t free = 0; free < dim; ++free) {
        if (is_pivot[free])
            continue;
        RationalVector dir(dim, Rational(0));
        dir[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            dir[pivots[r]] = -rows[r][free];
        sol.directions.push_back(std::move(dir));
    }
    return sol;
}

namespace detail {

// Scale so the first nonzero coefficient has absolute value one; strict
// inequalities keep their direction under positive scaling.
inline Constraint normalized(Constraint c)
{
    for (const auto& x : c.coeffs) {
        if (x != 0) {
            const Rational s = x < 0 ? Rational(-x) : x;
            for (auto& y : c.coeffs)
                y /= s;
            c.rhs /= s;
            break;
        }
    }
    return c;
}

// Keeps one (tightest) strict constraint per direction. Returns false if a
// constant constraint `0 > rhs` is violated.
inline bool insert_strict(std::map<RationalVector, Rational>& sys, Constraint c)
{
    c = normalized(std::move(c));
    const bool constant = std::all_of(c.coeffs.begin(), c.coeffs.end(), [](const Rational& x) { return x == 0; });
    if (constant)
        return c.rhs < 0;
    auto [it, inserted] = sys.try_emplace(c.coeffs, c.rhs);
    if (!inserted && it->second < c.rhs)
        it->second = c.rhs;
    return true;
}

}  // namespace detail

/// Fourier-Motzkin elimination for a system of strict inequalities
/// `c_i . t > e_i`. Returns a rational witness or nullopt when empty.
inline std::optional<RationalVector> strict_feasible_point(const std::vector<Constraint>& strict, std::size_t vars)
{
    using System = std::map<RationalVector, Rational>;
    // stages[k] involves only variables 0..k-1
    std::vector<System> stages(vars + 1);
    for (const auto& c : strict)
        if (!detail::insert_strict(stages[vars], c))
            return std::nullopt;

    for (std::size_t k = vars; k-- > 0;) {
        const System& cur = stages[k + 1];
        System& next = stages[k];
        std::vector<Constraint> pos, neg;
        for (const auto& [coeffs, rhs] : cur) {
            const int s = sign_of(coeffs[k]);
            Constraint c{coeffs, rhs};
            if (s == 0) {
                if (!detail::insert_strict(next, std::move(c)))
                    return std::nullopt;
            } else {
                (s > 0 ? pos : neg).push_back(std::move(c));
            }
        }
        for (const auto& p : pos) {
            for (const auto& n : neg) {
                const Rational wp = 1 / p.coeffs[k];
                const Rational wn = -1 / n.coeffs[k];
                Constraint combined{RationalVector(p.coeffs.size()), p.rhs * wp + n.rhs * wn};
                for (std::size_t j = 0; j < combined.coeffs.size(); ++j)
                    combined.coeffs[j] = p.coeffs[j] * wp + n.coeffs[j] * wn;
                combined.coeffs[k] = 0;
                if (!detail::insert_strict(next, std::move(combined)))
                    return std::nullopt;
            }
        }
    }

    // Back substitution: choose t_k strictly inside its interval.
    RationalVector t(vars, Rational(0));
    for (std::size_t k = 0; k < vars; ++k) {
        std::optional<Rational> lower, upper;
        for (const auto& [coeffs, rhs] : stages[k + 1]) {
            if (coeffs[k] == 0)
                continue;
            Rational rest = rhs;
            for (std::size_t j = 0; j < k; ++j)
                rest -= coeffs[j] * t[j];
            const Rational bound = rest / coeffs[k];
            if (coeffs[k] > 0) {
                if (!lower || bound > *lower)
                    lower = bound;
            } else if (!upper || bound < *upper) {
                upper = bound;
            }
        }
        if (lower && upper)
            t[k] = (*lower + *upper) / 2;
        else if (lower)
            t[k] = *lower + 1;
        else if (upper)
            t[k] = *upper - 1;
    }
    return t;
}

/// A point x with `a . x = b` for every equation and `a . x > b` for every
/// strict constraint, or nullopt when no such point exists.
inline std::optional<RationalVector> find_point(const std::vector<Constraint>& equations,
                                                const std::vector<Constraint>& strict,
                                                std::size_t dim)
{
    const auto sol = solve_equalities(equations, dim);
    if (!sol)
        return std::nullopt;
    const std::size_t vars = sol->directions.size();
    std::vector<Constraint> reduced;
    reduced.reserve(strict.size());
    for (const auto& c : strict) {
        Constraint r{RationalVector(vars), c.rhs - dot(c.coeffs, sol->base)};
        for (std::size_t j = 0; j < vars; ++j)
            r.coeffs[j] = dot(c.coeffs, sol->directions[j]);
        reduced.push_back(std::move(r));
    }
    const auto t = strict_feasible_point(reduced, vars);
    if (!t)
        return std::nullopt;
    return sol->at(*t);
}

}  // namespace arrcover::linear

#endif
