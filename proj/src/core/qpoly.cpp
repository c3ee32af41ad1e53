#include "core/qpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace detlab {

QPoly::QPoly(const BigRat& c) {
    if (c != 0) {
        low_ = 0;
        coeffs_.assign(1, c);
    }
}

QPoly QPoly::monomial(const BigRat& coeff, long exponent) {
    QPoly p;
    if (coeff != 0) {
        p.low_ = exponent;
        p.coeffs_.assign(1, coeff);
    }
    return p;
}

BigRat QPoly::coefficient(long e) const {
    long idx = e - low_;
    if (idx < 0 || idx >= static_cast<long>(coeffs_.size())) return 0;
    return coeffs_[static_cast<size_t>(idx)];
}

void QPoly::normalize() {
    size_t lo = 0, hi = coeffs_.size();
    while (hi > lo && coeffs_[hi - 1] == 0) --hi;
    while (lo < hi && coeffs_[lo] == 0) ++lo;
    if (lo == hi) {
        coeffs_.clear();
        low_ = 0;
        return;
    }
    if (lo > 0 || hi < coeffs_.size()) {
        std::vector<BigRat> trimmed(coeffs_.begin() + static_cast<long>(lo),
                                    coeffs_.begin() + static_cast<long>(hi));
        coeffs_.swap(trimmed);
        low_ += static_cast<long>(lo);
    }
}

QPoly QPoly::operator-() const {
    QPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

QPoly& QPoly::operator+=(const QPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) { *this = o; return *this; }
    long new_low = std::min(low_, o.low_);
    long new_high = std::max(high_exponent(), o.high_exponent());
    std::vector<BigRat> out(static_cast<size_t>(new_high - new_low + 1));
    for (size_t t = 0; t < coeffs_.size(); ++t)
        out[static_cast<size_t>(low_ - new_low) + t] = coeffs_[t];
    for (size_t t = 0; t < o.coeffs_.size(); ++t)
        out[static_cast<size_t>(o.low_ - new_low) + t] += o.coeffs_[t];
    low_ = new_low;
    coeffs_.swap(out);
    normalize();
    return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
    *this += -o;
    return *this;
}

namespace {

bool all_integral(const std::vector<BigRat>& v) {
    for (const auto& c : v)
        if (c.get_den() != 1) return false;
    return true;
}

} // namespace

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    QPoly r;
    const size_t na = a.coeffs_.size(), nb = b.coeffs_.size();
    r.low_ = a.low_ + b.low_;
    r.coeffs_.assign(na + nb - 1, BigRat(0));
    // Integer-coefficient polynomials dominate here; convolving over mpz
    // skips mpq canonicalization on every accumulate.
    if (all_integral(a.coeffs_) && all_integral(b.coeffs_)) {
        std::vector<mpz_class> acc(na + nb - 1);
        for (size_t i = 0; i < na; ++i) {
            const mpz_class& ai = a.coeffs_[i].get_num();
            if (ai == 0) continue;
            for (size_t j = 0; j < nb; ++j) {
                const mpz_class& bj = b.coeffs_[j].get_num();
                if (bj == 0) continue;
                mpz_addmul(acc[i + j].get_mpz_t(), ai.get_mpz_t(), bj.get_mpz_t());
            }
        }
        for (size_t t = 0; t < acc.size(); ++t) r.coeffs_[t] = BigRat(acc[t]);
    } else {
        for (size_t i = 0; i < na; ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (size_t j = 0; j < nb; ++j) {
                if (b.coeffs_[j] == 0) continue;
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
    }
    r.normalize();
    return r;
}

QPoly QPoly::exact_div(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw internal_error("QPoly::exact_div: division by zero");
    if (a.is_zero()) return QPoly();
    // Long division from the top; the offset just subtracts.
    std::vector<BigRat> rem = a.coeffs_;
    const std::vector<BigRat>& div = b.coeffs_;
    long qsize = static_cast<long>(rem.size()) - static_cast<long>(div.size()) + 1;
    if (qsize <= 0) throw internal_error("QPoly::exact_div: nonzero remainder");
    std::vector<BigRat> quot(static_cast<size_t>(qsize));
    const BigRat& lead = div.back();
    for (long t = qsize - 1; t >= 0; --t) {
        BigRat c = rem[static_cast<size_t>(t) + div.size() - 1] / lead;
        quot[static_cast<size_t>(t)] = c;
        if (c == 0) continue;
        for (size_t s = 0; s < div.size(); ++s)
            rem[static_cast<size_t>(t) + s] -= c * div[s];
    }
    for (const auto& c : rem)
        if (c != 0) throw internal_error("QPoly::exact_div: nonzero remainder");
    QPoly q;
    q.low_ = a.low_ - b.low_;
    q.coeffs_ = std::move(quot);
    q.normalize();
    return q;
}

BigRat QPoly::evaluate(const BigRat& value) const {
    if (is_zero()) return 0;
    if (value == 0) {
        if (low_ < 0) throw domain_error("QPoly::evaluate: pole at q=0");
        return coefficient(0);
    }
    // Horner over the dense band, then the offset power.
    BigRat acc = 0;
    for (size_t t = coeffs_.size(); t-- > 0;) acc = acc * value + coeffs_[t];
    BigRat p = 1;
    long e = low_ >= 0 ? low_ : -low_;
    BigRat base = value;
    for (long t = 0; t < e; ++t) p *= base;
    return low_ >= 0 ? BigRat(acc * p) : BigRat(acc / p);
}

BigRat QPoly::evaluate_at_one() const {
    BigRat acc = 0;
    for (const auto& c : coeffs_) acc += c;
    return acc;
}

QPoly QPoly::compose_power(long r) const {
    if (r < 1) throw domain_error("QPoly::compose_power: r must be >= 1");
    if (is_zero()) return QPoly();
    QPoly out;
    out.low_ = low_ * r;
    out.coeffs_.assign((coeffs_.size() - 1) * static_cast<size_t>(r) + 1, BigRat(0));
    for (size_t t = 0; t < coeffs_.size(); ++t)
        out.coeffs_[t * static_cast<size_t>(r)] = coeffs_[t];
    out.normalize();
    return out;
}

std::string QPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t t = 0; t < coeffs_.size(); ++t) {
        const BigRat& c = coeffs_[t];
        if (c == 0) continue;
        long e = low_ + static_cast<long>(t);
        BigRat mag = c < 0 ? BigRat(-c) : c;
        if (first) {
            if (c < 0) os << '-';
            first = false;
        } else {
            os << (c < 0 ? '-' : '+');
        }
        bool unit = (mag == 1);
        if (e == 0) {
            os << mag.get_str();
        } else {
            if (!unit) os << mag.get_str() << '*';
            os << 'q';
            if (e != 1) os << '^' << e;
        }
    }
    return os.str();
}

QPoly QPoly::parse(const std::string& text) {
    QPoly out;
    size_t pos = 0;
    const size_t n = text.size();
    auto skip_ws = [&] { while (pos < n && text[pos] == ' ') ++pos; };
    skip_ws();
    bool expect_term = true;
    int sign = 1;
    while (pos < n) {
        skip_ws();
        if (pos >= n) break;
        char ch = text[pos];
        if (ch == '+' || ch == '-') {
            sign = (ch == '-') ? -sign : sign;
            ++pos;
            expect_term = true;
            continue;
        }
        if (!expect_term) throw domain_error("QPoly::parse: unexpected '" + std::string(1, ch) + "'");
        BigRat coeff = 1;
        bool saw_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t start = pos;
            while (pos < n && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
            coeff = parse_bigrat(text.substr(start, pos - start));
            saw_coeff = true;
            if (pos < n && text[pos] == '*') ++pos;
        }
        long expo = 0;
        if (pos < n && text[pos] == 'q') {
            ++pos;
            expo = 1;
            if (pos < n && text[pos] == '^') {
                ++pos;
                size_t start = pos;
                if (pos < n && (text[pos] == '-' || text[pos] == '+')) ++pos;
                while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                expo = std::stol(text.substr(start, pos - start));
            }
        } else if (!saw_coeff) {
            throw domain_error("QPoly::parse: expected term in '" + text + "'");
        }
        out += monomial(sign < 0 ? BigRat(-coeff) : coeff, expo);
        sign = 1;
        expect_term = false;
    }
    if (expect_term && !out.is_zero())
        throw domain_error("QPoly::parse: dangling sign in '" + text + "'");
    return out;
}

QPoly q_integer(long n) {
    if (n < 0) throw domain_error("q_integer: negative argument");
    QPoly p;
    for (long e = 0; e < n; ++e) p += QPoly::monomial(1, e);
    return p;
}

QPoly q_factorial(long n) {
    if (n < 0) throw domain_error("q_factorial: negative argument");
    QPoly acc(1);
    for (long k = 1; k <= n; ++k) acc = acc * q_integer(k);
    return acc;
}

QPoly q_binomial(long n, long k) {
    if (n < 0) throw domain_error("q_binomial: negative upper index");
    if (k < 0 || k > n) return QPoly();
    // [n]!/([k]![n-k]!) built as a sequence of exact divisions:
    // prod_{t=1}^{k} [n-k+t]_q / [t]_q, every partial quotient polynomial.
    if (k > n - k) k = n - k;
    QPoly acc(1);
    for (long t = 1; t <= k; ++t) {
        acc = acc * q_integer(n - k + t);
        acc = QPoly::exact_div(acc, q_integer(t));
    }
    return acc;
}

QPoly q_integer_base(long n, long r) {
    return q_integer(n).compose_power(r);
}

QPoly q_factorial_base(long n, long r) {
    return q_factorial(n).compose_power(r);
}

} // namespace detlab
