#include "planarmatch/rational.hpp"

#include "planarmatch/error.hpp"

namespace planarmatch {

Rat makeRat(const Int& numerator, const Int& denominator) {
    require(sgn(denominator) != 0, Errc::InternalError, "rational with zero denominator");
    Rat value(numerator, denominator);
    value.canonicalize();
    return value;
}

Int sqrtExact(const Int& value) {
    if (sgn(value) < 0) fail(Errc::NotAPerfectSquare, "negative value " + toString(value));
    Int root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), value.get_mpz_t());
    if (sgn(rem) != 0) fail(Errc::NotAPerfectSquare, toString(value) + " is not a perfect square");
    return root;
}

std::string toString(const Rat& value) {
    return value.get_str();
}

std::string toString(const Int& value) {
    return value.get_str();
}

Rat parseRat(const std::string& text) {
    Rat value;
    if (text.empty() || value.set_str(text, 10) != 0) {
        fail(Errc::MalformedInput, "bad rational '" + text + "'");
    }
    if (sgn(value.get_den()) <= 0) {
        fail(Errc::MalformedInput, "bad rational denominator in '" + text + "'");
    }
    value.canonicalize();
    return value;
}

}
