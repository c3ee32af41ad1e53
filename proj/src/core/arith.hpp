#pragma once

// Exact scalar arithmetic: arbitrary-precision integers and rationals
// (GMP-backed) plus the combinatorial primitives everything else is
// built from: factorial, superfactorial, binomial, rising factorial.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace detlab {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Thrown when an input violates a documented precondition.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an internal exactness invariant breaks (inexact division,
// failed consistency assertion). Always a bug or a ring violation.
class internal_error : public std::runtime_error {
public:
    explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

BigInt factorial(long m);

// 1! 2! ... m!; empty product for m = 0.
BigInt superfactorial(long m);

// C(a,b) with C(a,b) = 0 for b < 0 or b > a. Rejects a < 0.
BigInt binomial(long a, long b);

// Rising factorial x(x+1)...(x+k-1). For k = -m < 0 this is
// 1/((x-m)(x-m+1)...(x-1)), the unique extension satisfying
// (x)_{a+b} = (x)_a (x+a)_b. Throws domain_error when a factor of the
// negative-index extension is zero.
BigRat pochhammer(const BigRat& x, long k);

// Exact integer quotient; throws internal_error if b does not divide a.
BigInt exact_div(const BigInt& a, const BigInt& b);

// Rational reduced to lowest terms with positive denominator.
BigRat make_rat(const BigInt& num, const BigInt& den);

std::string to_string(const BigInt& v);
std::string to_string(const BigRat& v);

BigInt parse_bigint(const std::string& text);
BigRat parse_bigrat(const std::string& text);

} // namespace detlab
