#pragma once

#include <gmpxx.h>

#include <string>

namespace planarmatch {

// Exact arithmetic is used everywhere; no floating point appears in the
// algorithms. Int and Rat alias the GMP classes so the rest of the code never
// names the gmp types directly.
using Int = mpz_class;
using Rat = mpq_class;

// Builds a canonical rational from a possibly unreduced fraction. mpq_class
// does not canonicalize on construction from numerator and denominator, so
// every place that forms a fraction by parts goes through here.
Rat makeRat(const Int& numerator, const Int& denominator);

// Integer square root that insists on exactness.
Int sqrtExact(const Int& value);

// Renders p/q with the denominator omitted when it is 1.
std::string toString(const Rat& value);
std::string toString(const Int& value);

// Parses "p" or "p/q" with an optional leading minus sign.
Rat parseRat(const std::string& text);

}
