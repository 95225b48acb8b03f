#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "ucov/errors.hpp"

namespace ucov {

// All decision arithmetic is exact. Rat is always canonical: lowest terms,
// positive denominator (GMP maintains this for arithmetic results; explicit
// construction goes through make_rat which canonicalizes).
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(Int num, Int den) {
    if (sgn(den) == 0) throw InputError("rational with zero denominator");
    Rat q(std::move(num), std::move(den));
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Canonical text form: "p/q", or "p" when the denominator is 1.
inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline std::string int_to_string(const Int& z) { return z.get_str(); }

// Strict parse of the canonical text form. Accepts an optional sign, a
// decimal integer, and an optional "/<positive integer>" part. Anything
// else (in particular float literals like "0.3" or "1e-2") is rejected.
inline Rat parse_rat(const std::string& text) {
    if (text.empty()) throw InputError("empty rational literal");
    std::size_t i = 0;
    if (text[i] == '-' || text[i] == '+') ++i;
    std::size_t digits = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') { ++i; ++digits; }
    if (digits == 0) throw InputError("malformed rational literal '" + text + "'");
    std::string num = text.substr(0, i);
    std::string den = "1";
    if (i < text.size()) {
        if (text[i] != '/')
            throw InputError("malformed rational literal '" + text +
                             "' (decision inputs must be exact rationals, not floats)");
        ++i;
        std::size_t j = i;
        while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
        if (j == i || j != text.size())
            throw InputError("malformed rational literal '" + text + "'");
        den = text.substr(i);
    }
    Int n(num), d(den);
    if (sgn(d) == 0) throw InputError("zero denominator in '" + text + "'");
    return make_rat(n, d);
}

inline Int parse_int(const std::string& text) {
    Rat q = parse_rat(text);
    if (!is_integer(q)) throw InputError("expected integer, got '" + text + "'");
    return q.get_num();
}

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// Divides a vector by the gcd of its entries. Zero vectors stay zero.
inline void reduce_by_gcd(std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) g = int_gcd(g, x);
    if (g > 1)
        for (Int& x : v) x /= g;
}

// Exact rational square root, when one exists.
inline std::optional<Rat> rat_sqrt_exact(const Rat& q) {
    if (sgn(q) < 0) return std::nullopt;
    const Int& num = q.get_num();
    const Int& den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return make_rat(rn, rd);
}

// Lexicographic comparison of rational vectors, entrywise numeric order.
inline bool lex_less(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

inline bool lex_less(const std::vector<Int>& a, const std::vector<Int>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

} // namespace ucov
