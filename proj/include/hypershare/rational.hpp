#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

#include "hypershare/errors.hpp"

namespace hypershare {

// Exact rational arithmetic for entropy values, LP coefficients and bounds.
// GMP-backed: numerator/denominator are arbitrary precision and the backend
// keeps them canonical (denominator > 0, gcd(|num|, den) = 1).
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Renders "3/2" for proper fractions and "26" when the denominator is 1.
inline std::string to_fraction_string(const Rational& r) {
    return r.str();
}

// Accepts "n" or "n/d" with optional sign; d must be nonzero.
inline Rational parse_fraction(const std::string& text) {
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos) {
            return Rational(BigInt(text));
        }
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) {
            throw ParseError("rational with zero denominator: " + text);
        }
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw ParseError("cannot parse rational '" + text + "': " + e.what());
    }
}

} // namespace hypershare
