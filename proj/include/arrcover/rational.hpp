#ifndef ARRCOVER_RATIONAL_HPP
#define ARRCOVER_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace arrcover {

// cpp_rational keeps numerator/denominator reduced with a positive
// denominator, so equality is structural.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

inline int sign_of(const Rational& r)
{
    return r.sign();
}

inline bool is_integer_token(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

/// Parse "n" or "p/q" (q nonzero) into a reduced rational.
inline Rational parse_rational(std::string_view token)
{
    const auto slash = token.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_token(token))
            throw ParseError("malformed rational '" + std::string(token) + "'");
        return Rational(BigInt(std::string(token)));
    }
    const auto num = token.substr(0, slash);
    const auto den = token.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("malformed rational '" + std::string(token) + "'");
    BigInt d(std::string{den});
    if (d == 0)
        throw ParseError("zero denominator in '" + std::string(token) + "'");
    return Rational(BigInt(std::string(num)), d);
}

inline std::string to_string(const Rational& r)
{
    return r.str();
}

inline Rational dot(const RationalVector& a, const RationalVector& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

}  // namespace arrcover

#endif
