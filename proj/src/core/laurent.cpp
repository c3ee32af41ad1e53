#include "core/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace detlab {

bool GradedLex::operator()(const ExpVec& a, const ExpVec& b) const {
    long da = 0, db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiLaurent MultiLaurent::constant(std::vector<std::string> vars, const BigRat& c) {
    MultiLaurent p(std::move(vars));
    if (c != 0) p.terms_.emplace(ExpVec(p.vars_.size(), 0), c);
    return p;
}

MultiLaurent MultiLaurent::monomial(std::vector<std::string> vars, const BigRat& c,
                                    ExpVec exponents) {
    MultiLaurent p(std::move(vars));
    if (exponents.size() != p.vars_.size())
        throw domain_error("MultiLaurent::monomial: arity mismatch");
    if (c != 0) p.terms_.emplace(std::move(exponents), c);
    return p;
}

MultiLaurent MultiLaurent::var(std::vector<std::string> vars, size_t index) {
    if (index >= vars.size()) throw domain_error("MultiLaurent::var: index out of range");
    ExpVec e(vars.size(), 0);
    e[index] = 1;
    return monomial(std::move(vars), 1, std::move(e));
}

BigRat MultiLaurent::coefficient(const ExpVec& exponents) const {
    if (exponents.size() != vars_.size())
        throw domain_error("MultiLaurent::coefficient: arity mismatch");
    auto it = terms_.find(exponents);
    return it == terms_.end() ? BigRat(0) : it->second;
}

void MultiLaurent::add_term(const ExpVec& e, const BigRat& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void MultiLaurent::check_compatible(const MultiLaurent& o) const {
    if (vars_ != o.vars_)
        throw domain_error("MultiLaurent: mixed variable tables");
}

MultiLaurent MultiLaurent::operator-() const {
    MultiLaurent r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MultiLaurent& MultiLaurent::operator+=(const MultiLaurent& o) {
    if (vars_.empty() && terms_.empty()) vars_ = o.vars_;
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiLaurent& MultiLaurent::operator-=(const MultiLaurent& o) {
    if (vars_.empty() && terms_.empty()) vars_ = o.vars_;
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, BigRat(-c));
    return *this;
}

MultiLaurent operator*(const MultiLaurent& a, const MultiLaurent& b) {
    a.check_compatible(b);
    MultiLaurent r(a.vars_);
    ExpVec sum(a.vars_.size());
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (size_t t = 0; t < sum.size(); ++t) sum[t] = ea[t] + eb[t];
            r.add_term(sum, ca * cb);
        }
    }
    return r;
}

MultiLaurent MultiLaurent::pow(long e) const {
    if (e < 0) throw domain_error("MultiLaurent::pow: negative exponent");
    MultiLaurent acc = constant(vars_, 1);
    MultiLaurent base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

MultiLaurent MultiLaurent::exact_div(const MultiLaurent& a, const MultiLaurent& b) {
    a.check_compatible(b);
    if (b.is_zero()) throw internal_error("MultiLaurent::exact_div: division by zero");
    if (a.is_zero()) return MultiLaurent(a.vars_);
    // When a = q*b, extreme per-variable exponents add, so every monomial of
    // q lies in a known box. A shift escaping the box proves inexactness and
    // bounds the leading-term descent (Laurent monomials are not well-ordered).
    const size_t arity = a.vars_.size();
    ExpVec box_lo(arity), box_hi(arity);
    for (size_t t = 0; t < arity; ++t) {
        box_lo[t] = static_cast<int>(a.min_exponent(t) - b.min_exponent(t));
        box_hi[t] = static_cast<int>(a.max_exponent(t) - b.max_exponent(t));
    }
    MultiLaurent quot(a.vars_);
    MultiLaurent rem = a;
    const ExpVec blead_exp = b.terms_.rbegin()->first;
    const BigRat blead_coeff = b.terms_.rbegin()->second;
    ExpVec shift(arity);
    while (!rem.is_zero()) {
        const ExpVec rlead_exp = rem.terms_.rbegin()->first;
        const BigRat rlead_coeff = rem.terms_.rbegin()->second;
        for (size_t t = 0; t < arity; ++t) {
            shift[t] = rlead_exp[t] - blead_exp[t];
            if (shift[t] < box_lo[t] || shift[t] > box_hi[t])
                throw internal_error("MultiLaurent::exact_div: nonzero remainder");
        }
        MultiLaurent piece = monomial(a.vars_, rlead_coeff / blead_coeff, shift);
        quot += piece;
        rem -= piece * b;
        if (!rem.is_zero() && !GradedLex{}(rem.terms_.rbegin()->first, rlead_exp))
            throw internal_error("MultiLaurent::exact_div: nonzero remainder");
    }
    return quot;
}

MultiLaurent MultiLaurent::ct(size_t var_index) const {
    if (var_index >= vars_.size())
        throw domain_error("MultiLaurent::ct: unknown variable index");
    std::vector<std::string> new_vars;
    for (size_t t = 0; t < vars_.size(); ++t)
        if (t != var_index) new_vars.push_back(vars_[t]);
    MultiLaurent out(new_vars);
    ExpVec reduced(new_vars.size());
    for (const auto& [e, c] : terms_) {
        if (e[var_index] != 0) continue;
        size_t w = 0;
        for (size_t t = 0; t < e.size(); ++t)
            if (t != var_index) reduced[w++] = e[t];
        out.add_term(reduced, c);
    }
    return out;
}

BigRat MultiLaurent::ct_all() const {
    return coefficient(ExpVec(vars_.size(), 0));
}

BigRat MultiLaurent::evaluate(const std::vector<BigRat>& values) const {
    if (values.size() != vars_.size())
        throw domain_error("MultiLaurent::evaluate: arity mismatch");
    BigRat acc = 0;
    for (const auto& [e, c] : terms_) {
        BigRat term = c;
        for (size_t t = 0; t < e.size(); ++t) {
            int k = e[t];
            if (k == 0) continue;
            if (values[t] == 0) {
                if (k < 0) throw domain_error("MultiLaurent::evaluate: pole at 0");
                term = 0;
                break;
            }
            BigRat p = 1;
            for (int s = 0; s < std::abs(k); ++s) p *= values[t];
            term = k > 0 ? BigRat(term * p) : BigRat(term / p);
        }
        acc += term;
    }
    return acc;
}

MultiLaurent MultiLaurent::substitute(size_t var_index, const BigRat& value) const {
    if (var_index >= vars_.size())
        throw domain_error("MultiLaurent::substitute: unknown variable index");
    std::vector<std::string> new_vars;
    for (size_t t = 0; t < vars_.size(); ++t)
        if (t != var_index) new_vars.push_back(vars_[t]);
    MultiLaurent out(new_vars);
    ExpVec reduced(new_vars.size());
    for (const auto& [e, c] : terms_) {
        int k = e[var_index];
        BigRat coeff = c;
        if (k != 0) {
            if (value == 0) {
                if (k < 0) throw domain_error("MultiLaurent::substitute: pole at 0");
                continue;
            }
            BigRat p = 1;
            for (int s = 0; s < std::abs(k); ++s) p *= value;
            coeff = k > 0 ? BigRat(coeff * p) : BigRat(coeff / p);
        }
        size_t w = 0;
        for (size_t t = 0; t < e.size(); ++t)
            if (t != var_index) reduced[w++] = e[t];
        out.add_term(reduced, coeff);
    }
    return out;
}

long MultiLaurent::min_exponent(size_t var_index) const {
    long m = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        (void)c;
        if (first || e[var_index] < m) m = e[var_index];
        first = false;
    }
    return m;
}

long MultiLaurent::max_exponent(size_t var_index) const {
    long m = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        (void)c;
        if (first || e[var_index] > m) m = e[var_index];
        first = false;
    }
    return m;
}

long MultiLaurent::total_degree() const {
    long best = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        (void)c;
        long d = 0;
        for (int x : e) d += x;
        if (first || d > best) best = d;
        first = false;
    }
    return best;
}

std::string MultiLaurent::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        BigRat mag = c < 0 ? BigRat(-c) : c;
        if (first) {
            if (c < 0) os << '-';
            first = false;
        } else {
            os << (c < 0 ? '-' : '+');
        }
        bool any_var = false;
        std::ostringstream vs;
        for (size_t t = 0; t < e.size(); ++t) {
            if (e[t] == 0) continue;
            if (any_var) vs << '*';
            vs << vars_[t];
            if (e[t] != 1) vs << '^' << e[t];
            any_var = true;
        }
        if (!any_var) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << '*';
            os << vs.str();
        }
    }
    return os.str();
}

MultiLaurent MultiLaurent::parse(std::vector<std::string> vars, const std::string& text) {
    MultiLaurent out(vars);
    size_t pos = 0;
    const size_t n = text.size();
    auto skip_ws = [&] { while (pos < n && text[pos] == ' ') ++pos; };
    auto var_index = [&](const std::string& name) -> size_t {
        for (size_t t = 0; t < vars.size(); ++t)
            if (vars[t] == name) return t;
        throw domain_error("MultiLaurent::parse: unknown variable '" + name + "'");
    };
    int sign = 1;
    bool expect_term = true;
    skip_ws();
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
        if (!expect_term)
            throw domain_error("MultiLaurent::parse: unexpected '" + std::string(1, ch) + "'");
        BigRat coeff = 1;
        ExpVec e(vars.size(), 0);
        bool saw_anything = false;
        while (pos < n) {
            skip_ws();
            if (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                size_t start = pos;
                while (pos < n && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
                coeff *= parse_bigrat(text.substr(start, pos - start));
                saw_anything = true;
            } else if (pos < n && (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
                size_t start = pos;
                while (pos < n && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
                size_t vi = var_index(text.substr(start, pos - start));
                long expo = 1;
                if (pos < n && text[pos] == '^') {
                    ++pos;
                    size_t s2 = pos;
                    if (pos < n && (text[pos] == '-' || text[pos] == '+')) ++pos;
                    while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                    expo = std::stol(text.substr(s2, pos - s2));
                }
                e[vi] += static_cast<int>(expo);
                saw_anything = true;
            } else {
                break;
            }
            skip_ws();
            if (pos < n && text[pos] == '*') { ++pos; continue; }
            break;
        }
        if (!saw_anything)
            throw domain_error("MultiLaurent::parse: expected term in '" + text + "'");
        out.add_term(e, sign < 0 ? BigRat(-coeff) : coeff);
        sign = 1;
        expect_term = false;
    }
    return out;
}

MultiLaurent vandermonde(long n) {
    if (n < 1) throw domain_error("vandermonde: n must be >= 1");
    std::vector<std::string> vars;
    for (long t = 0; t < n; ++t) vars.push_back("x" + std::to_string(t));
    MultiLaurent acc = MultiLaurent::constant(vars, 1);
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j)
            acc = acc * (MultiLaurent::var(vars, static_cast<size_t>(j)) -
                         MultiLaurent::var(vars, static_cast<size_t>(i)));
    return acc;
}

} // namespace detlab
