#include "core/formula.hpp"

#include <cctype>
#include <sstream>

namespace detlab {

namespace {

// Minimal cursor-based lexer shared by the expression parsers.
struct Cursor {
    const std::string& text;
    size_t pos = 0;

    void skip_ws() { while (pos < text.size() && text[pos] == ' ') ++pos; }
    bool done() { skip_ws(); return pos >= text.size(); }
    char peek() { skip_ws(); return pos < text.size() ? text[pos] : '\0'; }
    bool accept(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) { ++pos; return true; }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw domain_error("expected '" + std::string(1, c) + "' at position " +
                               std::to_string(pos) + " in '" + text + "'");
    }
    bool accept_word(const std::string& w) {
        skip_ws();
        if (text.compare(pos, w.size(), w) == 0) {
            // must not be a prefix of a longer identifier
            size_t end = pos + w.size();
            if (end < text.size() &&
                (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_'))
                return false;
            pos = end;
            return true;
        }
        return false;
    }
    std::string identifier() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (start == pos)
            throw domain_error("expected identifier at position " + std::to_string(pos) +
                               " in '" + text + "'");
        return text.substr(start, pos - start);
    }
    BigRat rational() {
        skip_ws();
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
            ++pos;
        if (start == pos)
            throw domain_error("expected number at position " + std::to_string(pos) +
                               " in '" + text + "'");
        return parse_bigrat(text.substr(start, pos - start));
    }
    long integer() {
        BigRat r = rational();
        if (r.get_den() != 1 || !r.get_num().fits_slong_p())
            throw domain_error("expected integer in '" + text + "'");
        return r.get_num().get_si();
    }
};

bool is_number_start(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::string rat_str(const BigRat& r) { return r.get_str(); }

// One product term of a linear form: optional rational coefficient times an
// optional product of names (index and/or parameter).
void linform_term(Cursor& cur, LinForm& lf, int sign) {
    BigRat coeff = 1;
    std::string index;     // "i", "j", "k" (or "u", mapped to i)
    std::string param;
    bool saw = false;
    for (;;) {
        char c = cur.peek();
        if (is_number_start(c)) {
            coeff *= cur.rational();
            saw = true;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = cur.identifier();
            if (name == "u") name = "i";
            if (name == "i" || name == "j" || name == "k") {
                if (!index.empty())
                    throw domain_error("linear form: repeated index in term");
                index = name;
            } else {
                if (!param.empty())
                    throw domain_error("linear form: two parameters in one term");
                param = name;
            }
            saw = true;
        } else {
            break;
        }
        if (!cur.accept('*')) break;
    }
    if (!saw) throw domain_error("linear form: empty term");
    if (sign < 0) coeff = -coeff;
    if (index.empty() && param.empty()) {
        lf.c0 += coeff;
    } else if (param.empty()) {
        if (index == "i") lf.ci += coeff;
        else if (index == "j") lf.cj += coeff;
        else lf.ck += coeff;
    } else if (index.empty()) {
        lf.cparam[param] += coeff;
    } else if (index == "i") {
        lf.cparam_i[param] += coeff;
    } else if (index == "j") {
        lf.cparam_j[param] += coeff;
    } else {
        throw domain_error("linear form: k*param not supported");
    }
}

LinForm parse_linform(Cursor& cur) {
    LinForm lf;
    int sign = 1;
    if (cur.accept('-')) sign = -1;
    else cur.accept('+');
    linform_term(cur, lf, sign);
    for (;;) {
        if (cur.accept('+')) sign = 1;
        else if (cur.accept('-')) sign = -1;
        else break;
        linform_term(cur, lf, sign);
    }
    // drop zero coefficients for canonical equality
    for (auto it = lf.cparam.begin(); it != lf.cparam.end();)
        it = it->second == 0 ? lf.cparam.erase(it) : std::next(it);
    for (auto it = lf.cparam_i.begin(); it != lf.cparam_i.end();)
        it = it->second == 0 ? lf.cparam_i.erase(it) : std::next(it);
    for (auto it = lf.cparam_j.begin(); it != lf.cparam_j.end();)
        it = it->second == 0 ? lf.cparam_j.erase(it) : std::next(it);
    return lf;
}

void append_term(std::ostringstream& os, bool& first, const BigRat& coeff,
                 const std::string& symbols) {
    if (coeff == 0) return;
    BigRat mag = coeff < 0 ? BigRat(-coeff) : coeff;
    if (first) {
        if (coeff < 0) os << '-';
        first = false;
    } else {
        os << (coeff < 0 ? '-' : '+');
    }
    if (symbols.empty()) {
        os << rat_str(mag);
    } else {
        if (mag != 1) os << rat_str(mag) << '*';
        os << symbols;
    }
}

} // namespace

BigRat LinForm::eval(long i, long j, long k, const ParamMap& params) const {
    BigRat acc = c0;
    acc += ci * BigRat(i);
    acc += cj * BigRat(j);
    acc += ck * BigRat(k);
    auto lookup = [&](const std::string& p) -> long {
        auto it = params.find(p);
        if (it == params.end())
            throw domain_error("linear form: unbound parameter '" + p + "'");
        return it->second;
    };
    for (const auto& [p, c] : cparam) acc += c * BigRat(lookup(p));
    for (const auto& [p, c] : cparam_i) acc += c * BigRat(lookup(p)) * BigRat(i);
    for (const auto& [p, c] : cparam_j) acc += c * BigRat(lookup(p)) * BigRat(j);
    return acc;
}

long LinForm::eval_int(long i, long j, long k, const ParamMap& params) const {
    BigRat v = eval(i, j, k, params);
    if (v.get_den() != 1 || !v.get_num().fits_slong_p())
        throw domain_error("linear form: non-integer value " + rat_str(v));
    return v.get_num().get_si();
}

bool LinForm::is_zero() const {
    return c0 == 0 && ci == 0 && cj == 0 && ck == 0 && cparam.empty() &&
           cparam_i.empty() && cparam_j.empty();
}

std::string LinForm::to_string() const {
    std::ostringstream os;
    bool first = true;
    append_term(os, first, ci, "i");
    append_term(os, first, cj, "j");
    append_term(os, first, ck, "k");
    for (const auto& [p, c] : cparam_i) append_term(os, first, c, "i*" + p);
    for (const auto& [p, c] : cparam_j) append_term(os, first, c, "j*" + p);
    for (const auto& [p, c] : cparam) append_term(os, first, c, p);
    append_term(os, first, c0, "");
    if (first) return "0";
    return os.str();
}

LinForm LinForm::parse(const std::string& text) {
    Cursor cur{text};
    LinForm lf = parse_linform(cur);
    if (!cur.done())
        throw domain_error("linear form: trailing input in '" + text + "'");
    return lf;
}

long Prefactor::exponent_value(long n) const {
    switch (exp) {
        case Exp::Const: return exp_const;
        case Exp::N: return n;
        case Exp::NM1: return n - 1;
        case Exp::NegN: return -n;
        case Exp::BinomN2: return n * (n - 1) / 2;
        case Exp::BinomNM12: return (n - 1) * (n - 2) / 2;
        case Exp::BinomN3: return n * (n - 1) * (n - 2) / 6;
    }
    throw internal_error("Prefactor: bad exponent kind");
}

BigRat poly_value(const std::vector<BigInt>& coeffs, const BigRat& at) {
    BigRat acc = 0;
    for (size_t t = coeffs.size(); t-- > 0;) acc = acc * at + BigRat(coeffs[t]);
    return acc;
}

namespace {

BigRat pow_rat(const BigRat& base, long e) {
    if (e == 0) return 1;
    bool neg = e < 0;
    unsigned long m = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    BigRat acc = 1, b = base;
    while (m > 0) {
        if (m & 1) acc *= b;
        m >>= 1;
        if (m) b *= b;
    }
    if (neg) {
        if (acc == 0) throw domain_error("prefactor: zero base with negative exponent");
        return BigRat(1) / acc;
    }
    return acc;
}

BigRat factor_value(const PFactor& f, long idx, const ParamMap& params) {
    BigRat base;
    switch (f.kind) {
        case PFactor::Kind::Fact: {
            long v = f.arg1.eval_int(idx, 0, 0, params);
            if (v < 0) throw domain_error("fact: negative argument in product");
            base = BigRat(factorial(v));
            break;
        }
        case PFactor::Kind::Binom: {
            long top = f.arg1.eval_int(idx, 0, 0, params);
            long bot = f.arg2.eval_int(idx, 0, 0, params);
            base = BigRat(binomial(top, bot));
            break;
        }
        case PFactor::Kind::Poch: {
            BigRat x = f.arg1.eval(idx, 0, 0, params);
            long cnt = f.arg2.eval_int(idx, 0, 0, params);
            base = pochhammer(x, cnt);
            break;
        }
        case PFactor::Kind::Lin: {
            base = f.arg1.eval(idx, 0, 0, params);
            break;
        }
        case PFactor::Kind::PolyProd: {
            base = 1;
            for (long t = 1; t <= idx; ++t) {
                BigRat num = poly_value(f.pnum, BigRat(t));
                BigRat den = poly_value(f.pden, BigRat(t));
                if (den == 0) throw domain_error("polyprod: zero denominator factor");
                base *= num / den;
            }
            break;
        }
    }
    if (f.exponent != 1 && base == 0 && f.exponent < 0)
        throw domain_error("product factor: zero base with negative exponent");
    return pow_rat(base, f.exponent);
}

} // namespace

BigRat ProductFormula::eval_rational(long n, const ParamMap& params) const {
    BigRat acc = 1;
    for (const auto& pf : prefactors) {
        BigRat base;
        switch (pf.base) {
            case Prefactor::Base::Number: base = pf.number; break;
            case Prefactor::Base::Param: {
                auto it = params.find(pf.name);
                if (it == params.end())
                    throw domain_error("prefactor: unbound parameter '" + pf.name + "'");
                base = BigRat(it->second);
                break;
            }
            case Prefactor::Base::Var:
                throw domain_error("prefactor: ring variable '" + pf.name +
                                   "' in numeric evaluation");
        }
        acc *= pow_rat(base, pf.exponent_value(n));
    }
    long upper = upper_nm1 ? n - 2 : n - 1;
    for (long idx = 0; idx <= upper; ++idx)
        for (const auto& f : factors) acc *= factor_value(f, idx, params);
    return acc;
}

MultiLaurent ProductFormula::eval_multi(const std::vector<std::string>& vars, long n,
                                        const ParamMap& params) const {
    BigRat numeric = 1;
    ExpVec mono(vars.size(), 0);
    for (const auto& pf : prefactors) {
        if (pf.base == Prefactor::Base::Var) {
            size_t vi = vars.size();
            for (size_t t = 0; t < vars.size(); ++t)
                if (vars[t] == pf.name) vi = t;
            if (vi == vars.size())
                throw domain_error("prefactor: unknown ring variable '" + pf.name + "'");
            long e = pf.exponent_value(n);
            mono[vi] += static_cast<int>(e);
        } else {
            BigRat base = pf.base == Prefactor::Base::Number
                              ? pf.number
                              : BigRat(params.at(pf.name));
            numeric *= pow_rat(base, pf.exponent_value(n));
        }
    }
    long upper = upper_nm1 ? n - 2 : n - 1;
    for (long idx = 0; idx <= upper; ++idx)
        for (const auto& f : factors) numeric *= factor_value(f, idx, params);
    return MultiLaurent::monomial(vars, numeric, mono);
}

namespace {

std::string prefactor_to_string(const Prefactor& pf) {
    std::ostringstream os;
    switch (pf.base) {
        case Prefactor::Base::Number: {
            bool wrap = pf.number < 0 || pf.number.get_den() != 1;
            if (wrap) os << '(' << rat_str(pf.number) << ')';
            else os << rat_str(pf.number);
            break;
        }
        case Prefactor::Base::Param:
        case Prefactor::Base::Var:
            os << pf.name;
            break;
    }
    os << '^';
    switch (pf.exp) {
        case Prefactor::Exp::Const: os << pf.exp_const; break;
        case Prefactor::Exp::N: os << 'n'; break;
        case Prefactor::Exp::NM1: os << "(n-1)"; break;
        case Prefactor::Exp::NegN: os << "(-n)"; break;
        case Prefactor::Exp::BinomN2: os << "binom(n,2)"; break;
        case Prefactor::Exp::BinomNM12: os << "binom(n-1,2)"; break;
        case Prefactor::Exp::BinomN3: os << "binom(n,3)"; break;
    }
    return os.str();
}

std::string factor_to_string(const PFactor& f, const char* index_name) {
    std::ostringstream os;
    auto lin = [&](const LinForm& lf) {
        std::string s = lf.to_string();
        if (std::string(index_name) == "u") {
            // the linear-form printer writes the index as 'i'
            for (auto& ch : s)
                if (ch == 'i') ch = 'u';
        }
        return s;
    };
    switch (f.kind) {
        case PFactor::Kind::Fact: os << "fact(" << lin(f.arg1) << ')'; break;
        case PFactor::Kind::Binom:
            os << "binom(" << lin(f.arg1) << ',' << lin(f.arg2) << ')';
            break;
        case PFactor::Kind::Poch:
            os << "poch(" << lin(f.arg1) << ',' << lin(f.arg2) << ')';
            break;
        case PFactor::Kind::Lin: os << "lin(" << lin(f.arg1) << ')'; break;
        case PFactor::Kind::PolyProd: {
            os << "polyprod(";
            for (size_t t = 0; t < f.pnum.size(); ++t)
                os << (t ? "," : "") << f.pnum[t].get_str();
            os << ';';
            for (size_t t = 0; t < f.pden.size(); ++t)
                os << (t ? "," : "") << f.pden[t].get_str();
            os << ')';
            break;
        }
    }
    if (f.exponent != 1) os << '^' << f.exponent;
    return os.str();
}

} // namespace

std::string ProductFormula::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& pf : prefactors) {
        if (!first) os << '*';
        os << prefactor_to_string(pf);
        first = false;
    }
    if (!factors.empty()) {
        if (!first) os << '*';
        os << (upper_nm1 ? "produ(" : "prodi(");
        // numerator factors first, then the inverted ones
        bool emitted = false;
        for (const auto& f : factors)
            if (f.exponent > 0) {
                if (emitted) os << '*';
                os << factor_to_string(f, upper_nm1 ? "u" : "i");
                emitted = true;
            }
        std::vector<const PFactor*> den;
        for (const auto& f : factors)
            if (f.exponent < 0) den.push_back(&f);
        if (!den.empty()) {
            if (!emitted) os << '1';
            os << '/';
            if (den.size() > 1 || den[0]->exponent < -1) os << '(';
            for (size_t t = 0; t < den.size(); ++t) {
                if (t) os << '*';
                PFactor flip = *den[t];
                flip.exponent = -flip.exponent;
                os << factor_to_string(flip, upper_nm1 ? "u" : "i");
            }
            if (den.size() > 1 || den[0]->exponent < -1) os << ')';
        }
        os << ')';
        first = false;
    }
    if (first) os << "1^1";
    return os.str();
}

namespace {

PFactor parse_pfactor(Cursor& cur) {
    PFactor f;
    if (cur.accept_word("fact")) {
        f.kind = PFactor::Kind::Fact;
        cur.expect('(');
        f.arg1 = parse_linform(cur);
        cur.expect(')');
    } else if (cur.accept_word("binom")) {
        f.kind = PFactor::Kind::Binom;
        cur.expect('(');
        f.arg1 = parse_linform(cur);
        cur.expect(',');
        f.arg2 = parse_linform(cur);
        cur.expect(')');
    } else if (cur.accept_word("poch")) {
        f.kind = PFactor::Kind::Poch;
        cur.expect('(');
        f.arg1 = parse_linform(cur);
        cur.expect(',');
        f.arg2 = parse_linform(cur);
        cur.expect(')');
    } else if (cur.accept_word("lin")) {
        f.kind = PFactor::Kind::Lin;
        cur.expect('(');
        f.arg1 = parse_linform(cur);
        cur.expect(')');
    } else if (cur.accept_word("polyprod")) {
        f.kind = PFactor::Kind::PolyProd;
        cur.expect('(');
        do {
            BigRat c = cur.rational();
            if (c.get_den() != 1) throw domain_error("polyprod: integer coefficients only");
            f.pnum.push_back(c.get_num());
        } while (cur.accept(','));
        cur.expect(';');
        do {
            BigRat c = cur.rational();
            if (c.get_den() != 1) throw domain_error("polyprod: integer coefficients only");
            f.pden.push_back(c.get_num());
        } while (cur.accept(','));
        cur.expect(')');
    } else {
        throw domain_error("product formula: unknown factor at position " +
                           std::to_string(cur.pos) + " in '" + cur.text + "'");
    }
    if (cur.accept('^')) f.exponent = cur.integer();
    return f;
}

void parse_factor_group(Cursor& cur, std::vector<PFactor>& out, int sign) {
    bool grouped = cur.accept('(');
    do {
        if (is_number_start(cur.peek())) {
            // bare "1" placeholder, as in "1/(...)"
            if (cur.rational() != 1)
                throw domain_error("product formula: numeric factor other than 1");
            continue;
        }
        PFactor f = parse_pfactor(cur);
        f.exponent *= sign;
        out.push_back(std::move(f));
    } while (cur.accept('*'));
    if (grouped) cur.expect(')');
}

Prefactor::Exp parse_prefexp(Cursor& cur, long& const_out) {
    if (cur.accept_word("binom")) {
        cur.expect('(');
        if (cur.accept_word("n")) {
            if (cur.accept('-')) {
                long one = cur.integer();
                if (one != 1) throw domain_error("prefactor exponent: only n-1 supported");
                cur.expect(',');
                long two = cur.integer();
                cur.expect(')');
                if (two != 2) throw domain_error("prefactor exponent: binom(n-1,k) needs k=2");
                return Prefactor::Exp::BinomNM12;
            }
            cur.expect(',');
            long k = cur.integer();
            cur.expect(')');
            if (k == 2) return Prefactor::Exp::BinomN2;
            if (k == 3) return Prefactor::Exp::BinomN3;
            throw domain_error("prefactor exponent: binom(n,k) needs k in {2,3}");
        }
        throw domain_error("prefactor exponent: malformed binom");
    }
    if (cur.accept('(')) {
        if (cur.accept('-')) {
            if (cur.accept_word("n")) {
                cur.expect(')');
                return Prefactor::Exp::NegN;
            }
            long v = cur.integer();
            cur.expect(')');
            const_out = -v;
            return Prefactor::Exp::Const;
        }
        if (cur.accept_word("n")) {
            if (cur.accept('-')) {
                long one = cur.integer();
                if (one != 1) throw domain_error("prefactor exponent: only n-1 supported");
                cur.expect(')');
                return Prefactor::Exp::NM1;
            }
            cur.expect(')');
            return Prefactor::Exp::N;
        }
        long v = cur.integer();
        cur.expect(')');
        const_out = v;
        return Prefactor::Exp::Const;
    }
    if (cur.accept_word("n")) return Prefactor::Exp::N;
    const_out = cur.integer();
    return Prefactor::Exp::Const;
}

} // namespace

ProductFormula ProductFormula::parse(const std::string& text) {
    ProductFormula pf;
    Cursor cur{text};
    bool saw_prod = false;
    do {
        bool is_prodi = cur.accept_word("prodi");
        bool is_produ = !is_prodi && cur.accept_word("produ");
        if (is_prodi || is_produ) {
            if (saw_prod) throw domain_error("product formula: multiple products");
            saw_prod = true;
            pf.upper_nm1 = is_produ;
            cur.expect('(');
            parse_factor_group(cur, pf.factors, 1);
            while (cur.accept('/')) parse_factor_group(cur, pf.factors, -1);
            while (cur.accept('*')) {
                parse_factor_group(cur, pf.factors, 1);
                while (cur.accept('/')) parse_factor_group(cur, pf.factors, -1);
            }
            cur.expect(')');
            continue;
        }
        Prefactor p;
        char c = cur.peek();
        if (is_number_start(c) || c == '(' || c == '-') {
            bool wrapped = cur.accept('(');
            p.base = Prefactor::Base::Number;
            p.number = cur.rational();
            if (wrapped) cur.expect(')');
        } else {
            std::string name = cur.identifier();
            // ring variables are the lowercase names the families declare
            p.base = (name == "z" || name == "q" || name == "e1" || name == "e2")
                         ? Prefactor::Base::Var
                         : Prefactor::Base::Param;
            p.name = name;
        }
        if (cur.accept('^')) {
            p.exp = parse_prefexp(cur, p.exp_const);
        } else {
            p.exp = Prefactor::Exp::Const;
            p.exp_const = 1;
        }
        pf.prefactors.push_back(std::move(p));
    } while (cur.accept('*'));
    if (!cur.done())
        throw domain_error("product formula: trailing input in '" + text + "'");
    return pf;
}

} // namespace detlab
