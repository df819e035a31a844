#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace g4 {

using Integer = boost::multiprecision::cpp_int;
// Exact rational arithmetic, always stored in lowest terms with positive
// denominator (maintained by the backend).
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

inline std::string to_string(const Rational& q) {
    if (is_integer(q)) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

// Accepts "p" or "p/q", with optional leading sign.
inline std::optional<Rational> parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer p(s.substr(0, slash));
        Integer q(s.substr(slash + 1));
        if (q == 0) return std::nullopt;
        return Rational(p, q);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// Exact square root test: returns r >= 0 with r*r == n, if one exists.
inline std::optional<Integer> integer_sqrt_exact(const Integer& n) {
    if (n < 0) return std::nullopt;
    Integer r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

// Rational square root, exact or nothing.
inline std::optional<Rational> rational_sqrt_exact(const Rational& q) {
    if (q < 0) return std::nullopt;
    auto n = integer_sqrt_exact(num(q));
    if (!n) return std::nullopt;
    auto d = integer_sqrt_exact(den(q));
    if (!d) return std::nullopt;
    return Rational(*n, *d);
}

} // namespace g4
