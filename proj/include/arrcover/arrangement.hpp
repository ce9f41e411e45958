#ifndef ARRCOVER_ARRANGEMENT_HPP
#define ARRCOVER_ARRANGEMENT_HPP

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linear.hpp"
#include "poset.hpp"
#include "rational.hpp"

namespace arrcover {

enum class Sign : std::int8_t { Minus = -1, Zero = 0, Plus = 1 };

using SignVector = std::vector<Sign>;

inline char sign_char(Sign s)
{
    switch (s) {
    case Sign::Minus: return '-';
    case Sign::Zero: return '0';
    case Sign::Plus: return '+';
    }
    return '?';
}

inline Sign sign_from_int(int s)
{
    return s < 0 ? Sign::Minus : (s > 0 ? Sign::Plus : Sign::Zero);
}

inline Sign negate(Sign s)
{
    return static_cast<Sign>(-static_cast<int>(s));
}

inline std::string to_string(const SignVector& v)
{
    std::string s;
    s.reserve(v.size());
    for (Sign x : v)
        s.push_back(sign_char(x));
    return s;
}

inline SignVector parse_signs(const std::string& text)
{
    SignVector v;
    v.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '-': v.push_back(Sign::Minus); break;
        case '0': v.push_back(Sign::Zero); break;
        case '+': v.push_back(Sign::Plus); break;
        default: throw ParseError("invalid sign character '" + std::string(1, c) + "' in '" + text + "'");
        }
    }
    return v;
}

// Face ordering convention: lexicographic with 0 < - < +.
inline int sign_rank(Sign s)
{
    switch (s) {
    case Sign::Zero: return 0;
    case Sign::Minus: return 1;
    case Sign::Plus: return 2;
    }
    return 3;
}

inline bool sign_less(const SignVector& a, const SignVector& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](Sign x, Sign y) { return sign_rank(x) < sign_rank(y); });
}

/// The affine hyperplane normal . x = offset.
struct Hyperplane
{
    RationalVector normal;
    Rational offset;

    Sign side(const RationalVector& x) const { return sign_from_int(sign_of(dot(normal, x) - offset)); }

    bool operator==(const Hyperplane&) const = default;
};

/// Scale to a primitive integer equation whose first nonzero normal entry is
/// positive.
inline Hyperplane canonicalize(Hyperplane h)
{
    BigInt lcm = 1;
    auto absorb = [&](const Rational& r) {
        const BigInt d = boost::multiprecision::denominator(r);
        lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    };
    for (const auto& a : h.normal)
        absorb(a);
    absorb(h.offset);
    BigInt g = 0;
    auto gather = [&](const Rational& r) {
        const BigInt n = boost::multiprecision::numerator(Rational(r * lcm));
        g = boost::multiprecision::gcd(g, n < 0 ? BigInt(-n) : n);
    };
    for (const auto& a : h.normal)
        gather(a);
    gather(h.offset);
    Rational scale = Rational(lcm) / Rational(g);
    for (const auto& a : h.normal) {
        if (a != 0) {
            if (a < 0)
                scale = -scale;
            break;
        }
    }
    for (auto& a : h.normal)
        a *= scale;
    h.offset *= scale;
    return h;
}

/**
 * A real affine hyperplane arrangement in Q^dim. Hyperplanes keep their file
 * order and are stored canonicalized, so sign_i(x) = sign(a_i . x - b_i)
 * refers to the canonical equation.
 */
class Arrangement
{
public:
    Arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes) : dim_(dim)
    {
        if (dim == 0)
            throw PreconditionError("arrangement dimension must be positive");
        std::set<std::pair<RationalVector, Rational>> seen;
        for (auto& h : hyperplanes) {
            if (h.normal.size() != dim)
                throw PreconditionError("hyperplane normal has wrong length");
            if (std::all_of(h.normal.begin(), h.normal.end(), [](const Rational& x) { return x == 0; }))
                throw PreconditionError("hyperplane has zero normal vector");
            Hyperplane c = canonicalize(std::move(h));
            if (!seen.emplace(c.normal, c.offset).second)
                throw PreconditionError("duplicate hyperplane after canonicalization");
            hyperplanes_.push_back(std::move(c));
        }
    }

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return hyperplanes_.size(); }
    const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
    const Hyperplane& operator[](std::size_t i) const { return hyperplanes_[i]; }

    SignVector signs_at(const RationalVector& x) const
    {
        SignVector v;
        v.reserve(size());
        for (const auto& h : hyperplanes_)
            v.push_back(h.side(x));
        return v;
    }

    /// Rank of the normals of the hyperplanes with the given indices.
    std::size_t normal_rank(const std::vector<int>& indices) const
    {
        std::vector<RationalVector> rows;
        for (int i : indices)
            rows.push_back(hyperplanes_[i].normal);
        return linear::rank(std::move(rows));
    }

    std::string to_text() const
    {
        std::ostringstream out;
        out << "dim " << dim_ << '\n';
        for (const auto& h : hyperplanes_) {
            out << 'H';
            for (const auto& a : h.normal)
                out << ' ' << to_string(a);
            out << ' ' << to_string(h.offset) << '\n';
        }
        return out.str();
    }

private:
    std::size_t dim_;
    std::vector<Hyperplane> hyperplanes_;
};

/// Parse the `dim <d>` / `H <a1> ... <ad> <b>` text format.
inline Arrangement parse_arrangement(std::istream& in)
{
    std::optional<std::size_t> dim;
    std::vector<Hyperplane> hyperplanes;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#')
            continue;
        const std::string where = " (line " + std::to_string(lineno) + ")";
        if (!dim) {
            if (head != "dim")
                throw ParseError("missing dimension header" + where);
            std::string tok, extra;
            if (!(ls >> tok) || !is_integer_token(tok) || tok[0] == '-' || (ls >> extra))
                throw ParseError("malformed dimension header" + where);
            const long d = std::stol(tok);
            if (d <= 0)
                throw ParseError("dimension must be positive" + where);
            dim = static_cast<std::size_t>(d);
            continue;
        }
        if (head != "H")
            throw ParseError("expected 'H' line" + where);
        std::vector<std::string> tokens;
        for (std::string t; ls >> t;)
            tokens.push_back(t);
        if (tokens.size() != *dim + 1)
            throw ParseError("hyperplane needs " + std::to_string(*dim + 1) + " entries" + where);
        Hyperplane h;
        for (std::size_t i = 0; i < *dim; ++i)
            h.normal.push_back(parse_rational(tokens[i]));
        h.offset = parse_rational(tokens.back());
        if (std::all_of(h.normal.begin(), h.normal.end(), [](const Rational& x) { return x == 0; }))
            throw ParseError("zero normal vector" + where);
        hyperplanes.push_back(std::move(h));
    }
    if (!dim)
        throw ParseError("missing dimension header");
    try {
        return Arrangement(*dim, std::move(hyperplanes));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

inline Arrangement parse_arrangement(const std::string& text)
{
    std::istringstream in(text);
    return parse_arrangement(in);
}

/// A relatively open cell of the stratification, with a witness point.
struct Face
{
    SignVector signs;
    int codim = 0;
    RationalVector sample;

    bool is_chamber() const
    {
        return std::none_of(signs.begin(), signs.end(), [](Sign s) { return s == Sign::Zero; });
    }
    std::string str() const { return to_string(signs); }
};

/// F1 >= F2 iff every sign of F1 is 0 or equal to the sign of F2.
inline bool face_geq(const SignVector& f1, const SignVector& f2)
{
    for (std::size_t i = 0; i < f1.size(); ++i)
        if (f1[i] != Sign::Zero && f1[i] != f2[i])
            return false;
    return true;
}

/// F o P: the sign of F where nonzero, otherwise the sign of P.
inline SignVector compose(const SignVector& f, const SignVector& p)
{
    if (f.size() != p.size())
        throw PreconditionError("compose: sign vectors of different length");
    SignVector out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = f[i] != Sign::Zero ? f[i] : p[i];
    return out;
}

/// Geometric closure test: does x lie in the closure of the face with the
/// given sign vector?
inline bool in_closure(const Arrangement& a, const SignVector& face, const RationalVector& x)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Sign s = a[i].side(x);
        if (face[i] == Sign::Zero ? s != Sign::Zero : (s != Sign::Zero && s != face[i]))
            return false;
    }
    return true;
}

/// Exact feasibility of the sign vector; returns a point of the face.
inline std::optional<RationalVector> realize(const Arrangement& a, const SignVector& signs)
{
    std::vector<linear::Constraint> eq, strict;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        const auto& h = a[i];
        switch (signs[i]) {
        case Sign::Zero: eq.push_back({h.normal, h.offset}); break;
        case Sign::Plus: strict.push_back({h.normal, h.offset}); break;
        case Sign::Minus: {
            linear::Constraint c{h.normal, -h.offset};
            for (auto& x : c.coeffs)
                x = -x;
            strict.push_back(std::move(c));
            break;
        }
        }
    }
    return linear::find_point(eq, strict, a.dim());
}

/**
 * The face poset F(A): all realizable sign vectors, sorted lexicographically
 * with 0 < - < +, ordered by F1 >= F2 iff closure(F1) is contained in
 * closure(F2).
 */
class FacePoset
{
public:
    explicit FacePoset(Arrangement arrangement, std::vector<Face> faces)
        : arrangement_(std::move(arrangement)), faces_(std::move(faces))
    {
        std::vector<std::string> labels;
        std::vector<Bits> rows(faces_.size(), Bits(faces_.size()));
        for (std::size_t i = 0; i < faces_.size(); ++i) {
            labels.push_back(faces_[i].str());
            index_.emplace(labels.back(), static_cast<int>(i));
            if (faces_[i].is_chamber()) {
                chamber_of_face_.push_back(static_cast<int>(chambers_.size()));
                chambers_.push_back(static_cast<int>(i));
            } else {
                chamber_of_face_.push_back(-1);
            }
            for (std::size_t j = 0; j < faces_.size(); ++j)
                if (face_geq(faces_[i].signs, faces_[j].signs))
                    rows[i].set(j);
        }
        poset_ = FinitePoset::from_order(std::move(labels), std::move(rows));
    }

    const Arrangement& arrangement() const { return arrangement_; }
    std::size_t size() const { return faces_.size(); }
    const Face& operator[](std::size_t i) const { return faces_[i]; }
    const std::vector<Face>& faces() const { return faces_; }
    const FinitePoset& poset() const { return poset_; }

    bool geq(std::size_t i, std::size_t j) const { return poset_.geq(i, j); }
    bool greater(std::size_t i, std::size_t j) const { return poset_.greater(i, j); }

    /// Face indices of the chambers, in face order.
    const std::vector<int>& chambers() const { return chambers_; }
    /// Position of face i among the chambers, or -1.
    int chamber_index(std::size_t face) const { return chamber_of_face_[face]; }
    bool is_chamber(std::size_t face) const { return chamber_of_face_[face] >= 0; }

    std::optional<int> find(const SignVector& s) const
    {
        auto it = index_.find(to_string(s));
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    int index_of(const std::string& signs) const
    {
        auto it = index_.find(signs);
        if (it == index_.end())
            throw PreconditionError("'" + signs + "' is not a face of the arrangement");
        return it->second;
    }

    /// Index of F o P.
    int compose(std::size_t f, std::size_t p) const
    {
        const auto r = find(arrcover::compose(faces_[f].signs, faces_[p].signs));
        if (!r)
            throw VerificationError("composition of faces is not realizable");
        return *r;
    }

    /// Chambers C <= F (face indices), in face order.
    std::vector<int> chambers_below(std::size_t f) const
    {
        std::vector<int> out;
        for (int c : chambers_)
            if (geq(f, c))
                out.push_back(c);
        return out;
    }

    /// Faces G <= F, in face order.
    std::vector<int> ideal(std::size_t f) const
    {
        std::vector<int> out;
        const Bits& d = poset_.down_set(f);
        for (std::size_t j = d.find_first(); j != Bits::npos; j = d.find_next(j))
            out.push_back(static_cast<int>(j));
        return out;
    }

private:
    Arrangement arrangement_;
    std::vector<Face> faces_;
    FinitePoset poset_;
    std::vector<int> chambers_;
    std::vector<int> chamber_of_face_;
    std::unordered_map<std::string, int> index_;
};

/// Enumerate every realizable sign vector. Hyperplanes are added one at a
/// time; a prefix that is infeasible stays infeasible, so the result is the
/// same as testing all 3^n vectors.
inline FacePoset enumerate_faces(const Arrangement& a)
{
    const std::size_t n = a.size();
    std::vector<std::pair<SignVector, RationalVector>> partial{{SignVector{}, RationalVector(a.dim(), Rational(0))}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<SignVector, RationalVector>> next;
        // Restricted arrangement of the first i+1 hyperplanes.
        std::vector<Hyperplane> prefix(a.hyperplanes().begin(), a.hyperplanes().begin() + i + 1);
        const Arrangement sub(a.dim(), std::move(prefix));
        for (const auto& [signs, point] : partial) {
            for (Sign s : {Sign::Zero, Sign::Minus, Sign::Plus}) {
                SignVector ext = signs;
                ext.push_back(s);
                if (auto x = realize(sub, ext))
                    next.emplace_back(std::move(ext), std::move(*x));
            }
        }
        partial = std::move(next);
    }
    std::sort(partial.begin(), partial.end(), [](const auto& x, const auto& y) { return sign_less(x.first, y.first); });
    std::vector<Face> faces;
    faces.reserve(partial.size());
    for (auto& [signs, point] : partial) {
        std::vector<int> zeros;
        for (std::size_t i = 0; i < signs.size(); ++i)
            if (signs[i] == Sign::Zero)
                zeros.push_back(static_cast<int>(i));
        const int codim = static_cast<int>(a.normal_rank(zeros));
        faces.push_back(Face{std::move(signs), codim, std::move(point)});
    }
    return FacePoset(a, std::move(faces));
}

/// Hyperplanes separating two chambers.
inline std::vector<int> separating_set(const Face& c1, const Face& c2)
{
    if (!c1.is_chamber() || !c2.is_chamber())
        throw PreconditionError("separating_set: arguments must be chambers");
    if (c1.signs.size() != c2.signs.size())
        throw PreconditionError("separating_set: sign vectors of different length");
    std::vector<int> out;
    for (std::size_t i = 0; i < c1.signs.size(); ++i)
        if (c1.signs[i] == negate(c2.signs[i]))
            out.push_back(static_cast<int>(i));
    return out;
}

/// The chamber opposite to C with respect to F (C <= F): the signs of C
/// flipped on the hyperplanes containing F.
inline SignVector opposite_chamber(const Face& f, const Face& c)
{
    if (!c.is_chamber())
        throw PreconditionError("opposite_chamber: C is not a chamber");
    if (!face_geq(f.signs, c.signs))
        throw PreconditionError("opposite_chamber: C is not below F");
    SignVector out = c.signs;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (f.signs[i] == Sign::Zero)
            out[i] = negate(out[i]);
    return out;
}

inline int opposite_chamber(const FacePoset& poset, int f, int c)
{
    const auto r = poset.find(opposite_chamber(poset[f], poset[c]));
    if (!r)
        throw VerificationError("opposite chamber is not realizable");
    return *r;
}

/// Localization at F: the hyperplanes containing F, and the ideal F_{<=F}.
struct Localization
{
    std::vector<int> support;
    std::vector<int> ideal;
};

inline Localization localize(const FacePoset& poset, int f)
{
    Localization loc;
    const auto& s = poset[f].signs;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == Sign::Zero)
            loc.support.push_back(static_cast<int>(i));
    loc.ideal = poset.ideal(f);
    return loc;
}

/// A flat of the intersection poset, identified by the hyperplanes
/// containing it.
struct Flat
{
    std::vector<int> hyperplanes;
    int rank = 0;
    BigInt mobius = 0;
};

struct IntersectionPoset
{
    std::vector<Flat> flats;  // sorted by rank, then hyperplane set

    /// Unsigned Whitney numbers of the first kind, indexed by rank.
    std::vector<BigInt> whitney() const
    {
        std::vector<BigInt> w;
        for (const auto& f : flats) {
            if (static_cast<std::size_t>(f.rank) >= w.size())
                w.resize(f.rank + 1, BigInt(0));
            w[f.rank] += f.mobius < 0 ? BigInt(-f.mobius) : f.mobius;
        }
        return w;
    }
};

/// L(A) with Moebius values mu(R^d, X). Used as an external cross-check.
inline IntersectionPoset intersection_poset(const Arrangement& a)
{
    const std::size_t n = a.size();
    if (n > 20)
        throw PreconditionError("intersection_poset: too many hyperplanes");
    std::set<std::vector<int>> seen;
    IntersectionPoset out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<linear::Constraint> eq;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i))
                eq.push_back({a[i].normal, a[i].offset});
        const auto sol = linear::solve_equalities(eq, a.dim());
        if (!sol)
            continue;
        std::vector<int> containing;
        for (std::size_t i = 0; i < n; ++i) {
            bool contains = dot(a[i].normal, sol->base) == a[i].offset;
            for (const auto& d : sol->directions)
                contains = contains && dot(a[i].normal, d) == 0;
            if (contains)
                containing.push_back(static_cast<int>(i));
        }
        if (seen.insert(containing).second)
            out.flats.push_back(Flat{containing, static_cast<int>(a.normal_rank(containing)), 0});
    }
    std::sort(out.flats.begin(), out.flats.end(), [](const Flat& x, const Flat& y) {
        return std::tie(x.rank, x.hyperplanes) < std::tie(y.rank, y.hyperplanes);
    });
    for (std::size_t i = 0; i < out.flats.size(); ++i) {
        if (out.flats[i].hyperplanes.empty()) {
            out.flats[i].mobius = 1;
            continue;
        }
        BigInt sum = 0;
        for (std::size_t j = 0; j < i; ++j) {
            const auto& lo = out.flats[j].hyperplanes;
            const auto& hi = out.flats[i].hyperplanes;
            if (lo.size() < hi.size() && std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()))
                sum += out.flats[j].mobius;
        }
        out.flats[i].mobius = -sum;
    }
    return out;
}

}  // namespace arrcover

#endif
