#pragma once

#include <boost/multiprecision/gmp.hpp>

namespace seplab {

// Exact rational scalar shared by the geometric oracle and the exact-expectation
// cross checks. GMP-backed; never converted to floating point implicitly.
using Rational = boost::multiprecision::mpq_rational;

inline Rational rational_pow(Rational base, unsigned long exp) {
    // 0^0 == 1 by the empty-product convention used in the weight p^k q^(M-k).
    Rational out(1);
    while (exp) {
        if (exp & 1) out *= base;
        base *= base;
        exp >>= 1;
    }
    return out;
}

}  // namespace seplab
