#include "core/arith.hpp"

namespace detlab {

BigInt factorial(long m) {
    if (m < 0) throw domain_error("factorial: negative argument");
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(m));
    return r;
}

BigInt superfactorial(long m) {
    if (m < 0) throw domain_error("superfactorial: negative argument");
    BigInt acc = 1;
    BigInt fac = 1;
    for (long k = 1; k <= m; ++k) {
        fac *= k;
        acc *= fac;
    }
    return acc;
}

BigInt binomial(long a, long b) {
    if (a < 0) throw domain_error("binomial: negative upper index");
    if (b < 0 || b > a) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a),
                 static_cast<unsigned long>(b));
    return r;
}

BigRat pochhammer(const BigRat& x, long k) {
    if (k >= 0) {
        BigRat acc = 1;
        BigRat t = x;
        for (long i = 0; i < k; ++i) {
            acc *= t;
            t += 1;
        }
        return acc;
    }
    // (x)_{-m} = 1 / ((x-m)(x-m+1)...(x-1))
    long m = -k;
    BigRat acc = 1;
    BigRat t = x - m;
    for (long i = 0; i < m; ++i) {
        if (t == 0)
            throw domain_error("pochhammer: zero factor in negative-index extension");
        acc *= t;
        t += 1;
    }
    return BigRat(1) / acc;
}

BigInt exact_div(const BigInt& a, const BigInt& b) {
    if (b == 0) throw internal_error("exact_div: division by zero");
    BigInt q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw internal_error("exact_div: nonzero remainder");
    return q;
}

BigRat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw domain_error("make_rat: zero denominator");
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const BigInt& v) { return v.get_str(); }

std::string to_string(const BigRat& v) { return v.get_str(); }

BigInt parse_bigint(const std::string& text) {
    mpz_class r;
    if (r.set_str(text, 10) != 0)
        throw domain_error("parse_bigint: bad integer '" + text + "'");
    return r;
}

BigRat parse_bigrat(const std::string& text) {
    mpq_class r;
    if (r.set_str(text, 10) != 0)
        throw domain_error("parse_bigrat: bad rational '" + text + "'");
    r.canonicalize();
    return r;
}

} // namespace detlab
