#pragma once

#include <gmpxx.h>

#include <string>

#include "errors.hpp"

namespace pinczon {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" or "p" (surrounding whitespace not allowed). The result is canonical.
inline Rational parse_rational(const std::string& text) {
    auto valid_int = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw InvalidInput("not a rational: '" + text + "'");
    if (num[0] == '+') num.erase(0, 1);
    Rational r;
    r.get_num() = Integer(num, 10);
    r.get_den() = Integer(den, 10);
    if (r.get_den() == 0) throw InvalidInput("zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

/// Always "p/q" with q > 0 and gcd 1, so integers print as "p/1".
inline std::string format_rational(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline int parity(long v) { return static_cast<int>(((v % 2) + 2) % 2); }

/// (-1)^e as a machine integer.
inline int sign_pow(long e) { return parity(e) ? -1 : 1; }

}  // namespace pinczon
