#pragma once

// Dense Laurent polynomials in one variable q over BigRat. A lowest-exponent
// offset makes negative powers of q first-class, so q-binomial entries carrying
// monomial prefactors q^{e} with e < 0 live in the same ring.

#include "core/arith.hpp"

#include <string>
#include <vector>

namespace detlab {

class QPoly {
public:
    QPoly() = default;
    QPoly(const BigRat& c);                     // constant
    QPoly(const BigInt& c) : QPoly(BigRat(c)) {}
    QPoly(long c) : QPoly(BigRat(c)) {}

    static QPoly monomial(const BigRat& coeff, long exponent);
    static QPoly variable() { return monomial(1, 1); }   // q

    bool is_zero() const { return coeffs_.empty(); }
    long low_exponent() const { return low_; }
    long high_exponent() const { return low_ + static_cast<long>(coeffs_.size()) - 1; }

    // Coefficient of q^e (0 outside the stored band).
    BigRat coefficient(long e) const;

    QPoly operator-() const;
    QPoly& operator+=(const QPoly& o);
    QPoly& operator-=(const QPoly& o);
    friend QPoly operator+(QPoly a, const QPoly& b) { a += b; return a; }
    friend QPoly operator-(QPoly a, const QPoly& b) { a -= b; return a; }
    friend QPoly operator*(const QPoly& a, const QPoly& b);

    bool operator==(const QPoly& o) const {
        return low_ == o.low_ && coeffs_ == o.coeffs_;
    }

    // Exact quotient; throws internal_error when the division leaves a
    // remainder (an entry-ring violation for the fraction-free engines).
    static QPoly exact_div(const QPoly& a, const QPoly& b);

    // Substitute q := value.
    BigRat evaluate(const BigRat& value) const;
    BigRat evaluate_at_one() const;

    // Substitute q := q^r (r >= 1).
    QPoly compose_power(long r) const;

    std::string to_string() const;              // canonical, space-free
    static QPoly parse(const std::string& text);

private:
    void normalize();

    long low_ = 0;
    std::vector<BigRat> coeffs_;                // coeffs_[t] is coeff of q^{low_+t}
};

// [n]_q = 1 + q + ... + q^{n-1}.
QPoly q_integer(long n);

// [n]!_q = [1]_q [2]_q ... [n]_q.
QPoly q_factorial(long n);

// Gaussian binomial; zero polynomial for k < 0 or k > n; rejects n < 0.
// The exact division by [k]!_q [n-k]!_q is checked.
QPoly q_binomial(long n, long k);

// [n]_{q^r} as a polynomial in q.
QPoly q_integer_base(long n, long r);

// [n]!_{q^r} as a polynomial in q.
QPoly q_factorial_base(long n, long r);

} // namespace detlab
