#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tjurina {

using Integer = mpz_class;
using Rational = mpq_class;

// "p" when the denominator is 1, otherwise "p/q" in lowest terms, q > 0.
inline std::string rat_str(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Accepts the forms produced by rat_str plus an optional leading sign.
inline Rational rat_parse(const std::string& text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    bool digits = false, slash = false, den_digits = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
            (slash ? den_digits : digits) = true;
        } else if (c == '/' && digits && !slash) {
            slash = true;
        } else {
            throw std::invalid_argument("bad rational literal: " + text);
        }
    }
    if (!digits || (slash && !den_digits))
        throw std::invalid_argument("bad rational literal: " + text);
    Rational r(text);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
}

inline Integer rat_floor(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

} // namespace tjurina
