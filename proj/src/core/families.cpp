#include "core/families.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace detlab {

namespace {

// The shipped registry. data/identities.cat carries the same canonical text;
// the embedded copy keeps the library self-contained when the data file is
// not on disk.
const char* kDefaultCatalog =
"I01|int|det|binom(2*i+2*a,j+b)|n<=8|a=0..4 b=0..4|product:2^binom(n,2)*prodi(binom(2*i+2*a,b)/binom(i+b,b))|condense=a,b|1.1.1\n"
"I02|int|det|binom(i*r+x,j+y)|n<=8|r=1..4 x=0..4 y=0..4|product:r^binom(n,2)*prodi(binom(i*r+x,y)/binom(i+y,y))|condense=x,y|1.2.1\n"
"I03|int|det|binom(i*r,j)|n<=8|r=1..4|product:r^binom(n,2)|-|1.2\n"
"I03x|int|det|binom(i*q_int+x,j)|n<=8|q_int=1..4 x=0..4|product:q_int^binom(n,2)|-|1.2\n"
"I04|int|det|binom(i+j+a+b,i+a)|n=c<=6|a=0..4 b=0..4 c=1..6|box|-|1.3\n"
"I05|int|det|binom(i+j+mu,2*j-i)|n<=8|mu=0..4|product:2^(-n)*prodi(poch(2*i+mu+2,i)*poch(2*i+1/2*mu+3/2,i-1)/(poch(i,i)*poch(i+1/2*mu+3/2,i-1)))|calibration|2.1.1\n"
"I06|int|det|binom(i+j,i)|n<=8|-|product:1^1|-|2.1\n"
"I07|int|det|fact(i+j)|n<=8|-|product:prodi(fact(i)^2)|-|2.3\n"
"I08|rat|ct-dyson|alpha=1|n<=5|-|product:prodi(lin(i+1))|-|2.2\n"
"I09|rat|ct-coeff|-|n<=6|-|product:(-1)^binom(n,2)*prodi(lin(i+1))|-|2.2\n"
"I10|rat|integral|alpha=0 beta=1|n<=5|-|product:prodi(fact(i)*fact(i+1))|-|2.3\n"
"I11|int|det|sum(k=0..min(2*i,2*j);binom(2*i,k)*binom(2*j,k)*2^k)|n<=8|-|product:4^binom(n,2)*prodi(fact(i)^2*fact(4*i)/fact(2*i)^3)|-|3.1\n"
"I12|int|det|sum(k=0..min(2*i,2*j);binom(2*i,k)*binom(2*j,k)*4^k)|n<=8|-|product:16^binom(n,2)*prodi(fact(2*i)*fact(6*i)*lin(3*i+1)/(fact(4*i)^2*lin(4*i+1)))|-|3.2\n"
"I13|int|det|binom(i+2*j,2*j-i)|n<=8|-|product:prodi(fact(i)^2*fact(4*i)/fact(2*i)^3)|-|3.1\n"
"I14|int|det|binom(i+j,2*j-i)|n<=8|-|product:prodi(fact(2*i)*fact(6*i)*lin(3*i+1)/(fact(4*i)^2*lin(4*i+1)))|-|3.2\n"
"I15|int|det|sum(k=0..min(3*i,3*j);binom(3*i,k)*binom(3*j,k)*3^k)|n<=8|-|i15_products|-|4.1\n"
"I16|qpoly|det|qbinom(i*r+x,j+y)*q^(-i*x+i*y)|n<=5|r=1..4 x=0..4 y=0..4|q_ribinom|-|5.1\n"
"I17|multi(q,z)|det|sum(k=0..min(i,j);qbinom(i*r,k)*qbinom(j*s,k)*z^k)|n<=5|r=1..4 s=1..4|q_zfactor|-|5.2\n"
"I18|qpoly|det|sum(k=0..min(i,j);qbinom(i,k)*qbinom(j,k)*prod1pq(k))|n<=5|-|q_onepq|-|5.2\n"
"I19|multi(q,z)|det|sum(k=0..min(i,j);qbinom(2*i+1,k)*qbinom(j+2,k)*z^k)|n<=5|-|q_tri19|-|5.2.1\n"
"I20|qpoly|det|sum(k=0..min(i*r,j);qbinom(i*r,k)*qbinom(j*r,k))|n<=5|r=1..4|q_53full|-|5.3\n"
"I21|qpoly|det|sum(k=0..min(i*r,j);qbinom(i*r,k))|n<=5|r=1..4|q_53red|-|5.3\n"
"I22|int|det|sum(k=0..min(i,j);binom(i,k)*binom(j,k)*2^k)|n<=8|-|product:2^binom(n,2)|-|post\n"
"I23|int|det|sum(k=0..min(i,j);binom(i*p,k)*binom(j*q_int,k))|n<=8|p=1..4 q_int=1..4|product:prodi(binom(i*p,i)*binom(i*q_int,i))|-|post\n"
"I24|multi(e1,e2)|det|sum(k=0..min(i,j);binom(i,k)*binom(j,k)*e1^(i+j-2*k)*e2^k)|n<=5|-|product:e2^binom(n,2)|-|post\n"
"I25|int|det|sum(k=0..min(i,j);binom(2*i,k)*binom(2*j,k)*2^k)|n<=8|-|product:2^binom(n,2)*prodi(binom(2*i,i)^2)|-|post\n"
"I26|int|det|sum(k=0..min(2*i,j);binom(2*i,k)*binom(2*j,k))|n<=8|-|product:2^binom(n,2)*prodi(binom(2*i,i))|-|post\n"
"I27|int|det|sum(k=0..min(i,j);binom(2*i,k)*binom(j,k))|n<=8|-|product:prodi(binom(2*i,i))|-|post\n"
"I28|multi(z)|det|sum(k=0..min(i,j);binom(i*p,k)*binom(j*q_int,k)*z^k)|n<=5|p=1..4 q_int=1..4|product:z^binom(n,2)*prodi(binom(i*p,i)*binom(i*q_int,i))|-|conj4\n"
"I29|int|det|sum(k=0..min(i*q_int,j);binom(i*q_int,k)*binom(j*q_int,k))|n<=8|q_int=1..4|product:q_int^binom(n,2)*prodi(binom(i*q_int,i))|-|conj3\n";

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
            throw domain_error("entry rule: expected '" + std::string(1, c) + "' in '" +
                               text + "'");
    }
    bool accept_word(const std::string& w) {
        skip_ws();
        if (text.compare(pos, w.size(), w) == 0) {
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
        if (start == pos) throw domain_error("entry rule: expected name in '" + text + "'");
        return text.substr(start, pos - start);
    }
    std::string until(char stop) {
        size_t start = pos;
        int depth = 0;
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) break;
                --depth;
            }
            if (c == stop && depth == 0) break;
            ++pos;
        }
        return text.substr(start, pos - start);
    }
};

LinForm parse_exponent(Cursor& cur) {
    if (cur.accept('(')) {
        LinForm lf = LinForm::parse(cur.until(')'));
        cur.expect(')');
        return lf;
    }
    if (cur.accept_word("k")) {
        LinForm lf;
        lf.ck = 1;
        return lf;
    }
    throw domain_error("entry rule: expected 'k' or '(...)' exponent in '" + cur.text + "'");
}

std::string exponent_to_string(const LinForm& lf) {
    LinForm k_only;
    k_only.ck = 1;
    if (lf == k_only) return "k";
    return "(" + lf.to_string() + ")";
}

EntryAtom parse_atom(Cursor& cur) {
    EntryAtom atom;
    char c = cur.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
        atom.kind = EntryAtom::Kind::IntPow;
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(cur.peek()))) digits += cur.text[cur.pos++];
        atom.ibase = parse_bigint(digits);
        cur.expect('^');
        atom.a2 = parse_exponent(cur);
        return atom;
    }
    bool isq = cur.accept_word("qbinom");
    if (isq || cur.accept_word("binom")) {
        atom.kind = isq ? EntryAtom::Kind::QBinom : EntryAtom::Kind::Binom;
        cur.expect('(');
        atom.a1 = LinForm::parse(cur.until(','));
        cur.expect(',');
        atom.a2 = LinForm::parse(cur.until(')'));
        cur.expect(')');
        return atom;
    }
    if (cur.accept_word("fact")) {
        atom.kind = EntryAtom::Kind::Fact;
        cur.expect('(');
        atom.a1 = LinForm::parse(cur.until(')'));
        cur.expect(')');
        return atom;
    }
    if (cur.accept_word("prod1pq")) {
        atom.kind = EntryAtom::Kind::Prod1pq;
        cur.expect('(');
        atom.a2 = LinForm::parse(cur.until(')'));
        cur.expect(')');
        return atom;
    }
    atom.kind = EntryAtom::Kind::VarPow;
    atom.var = cur.identifier();
    cur.expect('^');
    atom.a2 = parse_exponent(cur);
    return atom;
}

} // namespace

std::string EntryRule::to_string() const {
    std::ostringstream os;
    if (is_sum)
        os << "sum(k=0..min(" << lim1.to_string() << ',' << lim2.to_string() << ");";
    bool first = true;
    for (const auto& atom : atoms) {
        if (!first) os << '*';
        first = false;
        switch (atom.kind) {
            case EntryAtom::Kind::Binom:
                os << "binom(" << atom.a1.to_string() << ',' << atom.a2.to_string() << ')';
                break;
            case EntryAtom::Kind::QBinom:
                os << "qbinom(" << atom.a1.to_string() << ',' << atom.a2.to_string() << ')';
                break;
            case EntryAtom::Kind::Fact:
                os << "fact(" << atom.a1.to_string() << ')';
                break;
            case EntryAtom::Kind::IntPow:
                os << atom.ibase.get_str() << '^' << exponent_to_string(atom.a2);
                break;
            case EntryAtom::Kind::VarPow:
                os << atom.var << '^' << exponent_to_string(atom.a2);
                break;
            case EntryAtom::Kind::Prod1pq:
                os << "prod1pq(" << atom.a2.to_string() << ')';
                break;
        }
    }
    if (is_sum) os << ')';
    return os.str();
}

EntryRule EntryRule::parse(const std::string& text) {
    EntryRule rule;
    Cursor cur{text};
    if (cur.accept_word("sum")) {
        rule.is_sum = true;
        cur.expect('(');
        if (!cur.accept_word("k")) throw domain_error("entry rule: sum index must be k");
        cur.expect('=');
        if (!cur.accept('0')) throw domain_error("entry rule: sum must start at 0");
        cur.expect('.');
        cur.expect('.');
        if (!cur.accept_word("min")) throw domain_error("entry rule: sum limit must be min(...)");
        cur.expect('(');
        rule.lim1 = LinForm::parse(cur.until(','));
        cur.expect(',');
        rule.lim2 = LinForm::parse(cur.until(')'));
        cur.expect(')');
        cur.expect(';');
    }
    rule.atoms.push_back(parse_atom(cur));
    while (cur.accept('*')) rule.atoms.push_back(parse_atom(cur));
    if (rule.is_sum) cur.expect(')');
    if (!cur.done()) throw domain_error("entry rule: trailing input in '" + text + "'");
    return rule;
}

namespace {

long sum_limit(const EntryRule& rule, long i, long j, const ParamMap& params) {
    long l1 = rule.lim1.eval_int(i, j, 0, params);
    long l2 = rule.lim2.eval_int(i, j, 0, params);
    return std::min(l1, l2);
}

BigInt ipow(const BigInt& base, long e) {
    if (e < 0) throw domain_error("entry rule: negative integer power");
    BigInt acc = 1, b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return acc;
}

} // namespace

BigInt entry_value_int(const EntryRule& rule, long i, long j, const ParamMap& params) {
    auto atom_value = [&](const EntryAtom& atom, long k) -> BigInt {
        switch (atom.kind) {
            case EntryAtom::Kind::Binom:
                return binomial(atom.a1.eval_int(i, j, k, params),
                                atom.a2.eval_int(i, j, k, params));
            case EntryAtom::Kind::Fact: {
                long v = atom.a1.eval_int(i, j, k, params);
                if (v < 0) throw domain_error("entry rule: factorial of negative value");
                return factorial(v);
            }
            case EntryAtom::Kind::IntPow:
                return ipow(atom.ibase, atom.a2.eval_int(i, j, k, params));
            default:
                throw domain_error("entry rule: atom outside the integer ring");
        }
    };
    if (!rule.is_sum) {
        BigInt acc = 1;
        for (const auto& atom : rule.atoms) acc *= atom_value(atom, 0);
        return acc;
    }
    long lim = sum_limit(rule, i, j, params);
    BigInt acc = 0;
    for (long k = 0; k <= lim; ++k) {
        BigInt term = 1;
        for (const auto& atom : rule.atoms) term *= atom_value(atom, k);
        acc += term;
    }
    return acc;
}

namespace {

QPoly prod1pq_value(long limit) {
    QPoly acc(1);
    for (long l = 0; l <= limit; ++l)
        acc = acc * (QPoly(1) + QPoly::monomial(1, l));
    return acc;
}

} // namespace

QPoly entry_value_qpoly(const EntryRule& rule, long i, long j, const ParamMap& params) {
    auto atom_value = [&](const EntryAtom& atom, long k) -> QPoly {
        switch (atom.kind) {
            case EntryAtom::Kind::Binom:
                return QPoly(BigRat(binomial(atom.a1.eval_int(i, j, k, params),
                                             atom.a2.eval_int(i, j, k, params))));
            case EntryAtom::Kind::QBinom:
                return q_binomial(atom.a1.eval_int(i, j, k, params),
                                  atom.a2.eval_int(i, j, k, params));
            case EntryAtom::Kind::IntPow:
                return QPoly(BigRat(ipow(atom.ibase, atom.a2.eval_int(i, j, k, params))));
            case EntryAtom::Kind::VarPow: {
                if (atom.var != "q")
                    throw domain_error("entry rule: variable '" + atom.var +
                                       "' outside the q ring");
                return QPoly::monomial(1, atom.a2.eval_int(i, j, k, params));
            }
            case EntryAtom::Kind::Prod1pq:
                return prod1pq_value(atom.a2.eval_int(i, j, k, params));
            default:
                throw domain_error("entry rule: atom outside the q ring");
        }
    };
    if (!rule.is_sum) {
        QPoly acc(1);
        for (const auto& atom : rule.atoms) acc = acc * atom_value(atom, 0);
        return acc;
    }
    long lim = sum_limit(rule, i, j, params);
    QPoly acc;
    for (long k = 0; k <= lim; ++k) {
        QPoly term(1);
        for (const auto& atom : rule.atoms) term = term * atom_value(atom, k);
        acc += term;
    }
    return acc;
}

namespace {

MultiLaurent qpoly_to_multi(const std::vector<std::string>& vars, const QPoly& p) {
    size_t qi = vars.size();
    for (size_t t = 0; t < vars.size(); ++t)
        if (vars[t] == "q") qi = t;
    if (qi == vars.size())
        throw domain_error("entry rule: q-polynomial entry in a ring without q");
    MultiLaurent out(vars);
    for (long e = p.low_exponent(); e <= p.high_exponent(); ++e) {
        BigRat c = p.coefficient(e);
        if (c == 0) continue;
        ExpVec ev(vars.size(), 0);
        ev[qi] = static_cast<int>(e);
        out += MultiLaurent::monomial(vars, c, ev);
    }
    return out;
}

} // namespace

MultiLaurent entry_value_multi(const EntryRule& rule, const std::vector<std::string>& vars,
                               long i, long j, const ParamMap& params) {
    auto var_index = [&](const std::string& name) -> size_t {
        for (size_t t = 0; t < vars.size(); ++t)
            if (vars[t] == name) return t;
        throw domain_error("entry rule: unknown ring variable '" + name + "'");
    };
    auto atom_value = [&](const EntryAtom& atom, long k) -> MultiLaurent {
        switch (atom.kind) {
            case EntryAtom::Kind::Binom:
                return MultiLaurent::constant(
                    vars, BigRat(binomial(atom.a1.eval_int(i, j, k, params),
                                          atom.a2.eval_int(i, j, k, params))));
            case EntryAtom::Kind::Fact:
                return MultiLaurent::constant(
                    vars, BigRat(factorial(atom.a1.eval_int(i, j, k, params))));
            case EntryAtom::Kind::QBinom:
                return qpoly_to_multi(vars, q_binomial(atom.a1.eval_int(i, j, k, params),
                                                       atom.a2.eval_int(i, j, k, params)));
            case EntryAtom::Kind::IntPow:
                return MultiLaurent::constant(
                    vars, BigRat(ipow(atom.ibase, atom.a2.eval_int(i, j, k, params))));
            case EntryAtom::Kind::VarPow: {
                ExpVec ev(vars.size(), 0);
                ev[var_index(atom.var)] =
                    static_cast<int>(atom.a2.eval_int(i, j, k, params));
                return MultiLaurent::monomial(vars, 1, ev);
            }
            case EntryAtom::Kind::Prod1pq:
                return qpoly_to_multi(vars,
                                      prod1pq_value(atom.a2.eval_int(i, j, k, params)));
        }
        throw internal_error("entry rule: bad atom kind");
    };
    if (!rule.is_sum) {
        MultiLaurent acc = MultiLaurent::constant(vars, 1);
        for (const auto& atom : rule.atoms) acc = acc * atom_value(atom, 0);
        return acc;
    }
    long lim = sum_limit(rule, i, j, params);
    MultiLaurent acc(vars);
    for (long k = 0; k <= lim; ++k) {
        MultiLaurent term = MultiLaurent::constant(vars, 1);
        for (const auto& atom : rule.atoms) term = term * atom_value(atom, k);
        acc += term;
    }
    return acc;
}

bool IdentitySpec::has_param(const std::string& name) const {
    for (const auto& p : params)
        if (p.name == name) return true;
    return false;
}

const ParamDomain& IdentitySpec::param(const std::string& name) const {
    for (const auto& p : params)
        if (p.name == name) return p;
    throw domain_error(id + ": unknown parameter '" + name + "'");
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string check_kind_name(CheckKind k) {
    switch (k) {
        case CheckKind::Determinant: return "det";
        case CheckKind::CtDyson: return "ct-dyson";
        case CheckKind::CtVandermondeCoeff: return "ct-coeff";
        case CheckKind::MomentIntegral: return "integral";
    }
    throw internal_error("bad check kind");
}

CheckKind check_kind_from(const std::string& s) {
    if (s == "det") return CheckKind::Determinant;
    if (s == "ct-dyson") return CheckKind::CtDyson;
    if (s == "ct-coeff") return CheckKind::CtVandermondeCoeff;
    if (s == "integral") return CheckKind::MomentIntegral;
    throw domain_error("catalog: unknown check kind '" + s + "'");
}

} // namespace

std::string IdentitySpec::serialize() const {
    std::ostringstream os;
    os << id << '|';
    if (ring == Ring::Multivariate) {
        os << "multi(";
        for (size_t t = 0; t < ring_vars.size(); ++t) os << (t ? "," : "") << ring_vars[t];
        os << ')';
    } else {
        os << ring_name(ring);
    }
    os << '|' << check_kind_name(kind) << '|';
    switch (kind) {
        case CheckKind::Determinant: os << entry.to_string(); break;
        case CheckKind::CtDyson: os << "alpha=" << alpha; break;
        case CheckKind::CtVandermondeCoeff: os << '-'; break;
        case CheckKind::MomentIntegral: os << "alpha=" << alpha << " beta=" << beta; break;
    }
    os << '|';
    if (size_param.empty()) os << "n<=" << n_max;
    else os << "n=" << size_param << "<=" << n_max;
    os << '|';
    if (params.empty()) {
        os << '-';
    } else {
        for (size_t t = 0; t < params.size(); ++t) {
            if (t) os << ' ';
            os << params[t].name << '=' << params[t].lo << ".." << params[t].hi;
        }
    }
    os << '|' << rhs_key << '|';
    std::vector<std::string> flags;
    if (calibration) flags.push_back("calibration");
    if (!condense.empty()) flags.push_back("condense=" + condense[0] + "," + condense[1]);
    if (flags.empty()) {
        os << '-';
    } else {
        for (size_t t = 0; t < flags.size(); ++t) os << (t ? "," : "") << flags[t];
    }
    os << '|' << cite;
    return os.str();
}

IdentitySpec IdentitySpec::parse_line(const std::string& line) {
    auto fields = split(line, '|');
    if (fields.size() != 9)
        throw domain_error("catalog: expected 9 '|' fields in '" + line + "'");
    IdentitySpec spec;
    spec.id = fields[0];
    if (spec.id.empty()) throw domain_error("catalog: empty identity id");

    const std::string& ring = fields[1];
    if (ring.rfind("multi(", 0) == 0 && ring.back() == ')') {
        spec.ring = Ring::Multivariate;
        spec.ring_vars = split(ring.substr(6, ring.size() - 7), ',');
    } else {
        spec.ring = ring_from_name(ring);
        if (spec.ring == Ring::QPolynomial) spec.ring_vars = {"q"};
    }

    spec.kind = check_kind_from(fields[2]);
    const std::string& body = fields[3];
    switch (spec.kind) {
        case CheckKind::Determinant:
            spec.entry = EntryRule::parse(body);
            break;
        case CheckKind::CtDyson: {
            if (body.rfind("alpha=", 0) != 0)
                throw domain_error("catalog: ct-dyson needs alpha=");
            spec.alpha = std::stol(body.substr(6));
            break;
        }
        case CheckKind::CtVandermondeCoeff:
            break;
        case CheckKind::MomentIntegral: {
            std::istringstream is(body);
            std::string tok;
            while (is >> tok) {
                if (tok.rfind("alpha=", 0) == 0) spec.alpha = std::stol(tok.substr(6));
                else if (tok.rfind("beta=", 0) == 0) spec.beta = std::stol(tok.substr(5));
                else throw domain_error("catalog: bad integral field '" + tok + "'");
            }
            break;
        }
    }

    const std::string& size = fields[4];
    if (size.rfind("n<=", 0) == 0) {
        spec.n_max = std::stol(size.substr(3));
    } else if (size.rfind("n=", 0) == 0) {
        size_t le = size.find("<=");
        if (le == std::string::npos)
            throw domain_error("catalog: bad size field '" + size + "'");
        spec.size_param = size.substr(2, le - 2);
        spec.n_max = std::stol(size.substr(le + 2));
    } else {
        throw domain_error("catalog: bad size field '" + size + "'");
    }

    if (fields[5] != "-") {
        std::istringstream is(fields[5]);
        std::string tok;
        while (is >> tok) {
            size_t eq = tok.find('=');
            size_t dots = tok.find("..");
            if (eq == std::string::npos || dots == std::string::npos)
                throw domain_error("catalog: bad parameter domain '" + tok + "'");
            ParamDomain d;
            d.name = tok.substr(0, eq);
            d.lo = std::stol(tok.substr(eq + 1, dots - eq - 1));
            d.hi = std::stol(tok.substr(dots + 2));
            spec.params.push_back(std::move(d));
        }
    }

    spec.rhs_key = fields[6];
    if (fields[7] != "-") {
        for (const auto& flag : split(fields[7], ',')) {
            if (flag == "calibration") {
                spec.calibration = true;
            } else if (flag.rfind("condense=", 0) == 0) {
                spec.condense.push_back(flag.substr(9));
            } else if (!spec.condense.empty() && spec.condense.size() == 1 &&
                       flag.find('=') == std::string::npos) {
                // second half of condense=a,b (the flag list is comma-separated)
                spec.condense.push_back(flag);
            } else {
                throw domain_error("catalog: unknown flag '" + flag + "'");
            }
        }
    }
    if (!spec.condense.empty() && spec.condense.size() != 2)
        throw domain_error("catalog: condense flag needs two parameter names");
    spec.cite = fields[8];

    if (!spec.size_param.empty() && !spec.has_param(spec.size_param))
        throw domain_error("catalog: size parameter '" + spec.size_param +
                           "' not declared for " + spec.id);
    return spec;
}

const std::string& Registry::default_catalog_text() {
    static const std::string text = kDefaultCatalog;
    return text;
}

Registry Registry::load_default() {
#ifdef DETLAB_DEFAULT_CATALOG
    std::ifstream in(DETLAB_DEFAULT_CATALOG);
    if (in) {
        std::ostringstream buf;
        buf << in.rdbuf();
        return from_text(buf.str());
    }
#endif
    return from_text(default_catalog_text());
}

Registry Registry::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("catalog: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

Registry Registry::from_text(const std::string& text) {
    Registry reg;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        IdentitySpec spec = IdentitySpec::parse_line(line);
        if (reg.contains(spec.id))
            throw domain_error("catalog: duplicate identity '" + spec.id + "'");
        reg.ids_.push_back(std::move(spec));
    }
    if (reg.ids_.empty()) throw domain_error("catalog: no identities");
    return reg;
}

std::string Registry::serialize() const {
    std::ostringstream os;
    for (const auto& spec : ids_) os << spec.serialize() << '\n';
    return os.str();
}

bool Registry::contains(const std::string& id) const {
    for (const auto& spec : ids_)
        if (spec.id == id) return true;
    return false;
}

const IdentitySpec& Registry::find(const std::string& id) const {
    for (const auto& spec : ids_)
        if (spec.id == id) return spec;
    throw domain_error("unknown identity '" + id + "'");
}

ExactMatrix Registry::build(const std::string& id, long n, const ParamMap& params) const {
    const IdentitySpec& spec = find(id);
    if (spec.kind != CheckKind::Determinant)
        throw domain_error(id + ": not a determinant identity");
    if (n < 1) throw domain_error(id + ": n must be >= 1");

    ParamMap full = params;
    for (const auto& dom : spec.params) {
        if (dom.name == spec.size_param) {
            if (n < dom.lo || n > dom.hi)
                throw domain_error(id + ": size " + std::to_string(n) +
                                   " outside " + dom.name + "=" + std::to_string(dom.lo) +
                                   ".." + std::to_string(dom.hi));
            full[dom.name] = n;
            continue;
        }
        auto it = full.find(dom.name);
        if (it == full.end())
            throw domain_error(id + ": missing parameter '" + dom.name + "'");
        if (it->second < dom.lo || it->second > dom.hi)
            throw domain_error(id + ": parameter " + dom.name + "=" +
                               std::to_string(it->second) + " out of domain");
    }
    for (const auto& [name, value] : full) {
        (void)value;
        if (!spec.has_param(name))
            throw domain_error(id + ": unknown parameter '" + name + "'");
    }

    ExactMatrix m;
    m.ring = spec.ring;
    const size_t sz = static_cast<size_t>(n);
    switch (spec.ring) {
        case Ring::Integer: {
            m.int_m = IntMatrix(sz);
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j)
                    m.int_m.at(static_cast<size_t>(i), static_cast<size_t>(j)) =
                        entry_value_int(spec.entry, i, j, full);
            break;
        }
        case Ring::Rational: {
            m.rat_m = RatMatrix(sz);
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j)
                    m.rat_m.at(static_cast<size_t>(i), static_cast<size_t>(j)) =
                        BigRat(entry_value_int(spec.entry, i, j, full));
            break;
        }
        case Ring::QPolynomial: {
            m.qpoly_m = QPolyMatrix(sz);
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j)
                    m.qpoly_m.at(static_cast<size_t>(i), static_cast<size_t>(j)) =
                        entry_value_qpoly(spec.entry, i, j, full);
            break;
        }
        case Ring::Multivariate: {
            m.multi_m = MultiMatrix(sz);
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j)
                    m.multi_m.at(static_cast<size_t>(i), static_cast<size_t>(j)) =
                        entry_value_multi(spec.entry, spec.ring_vars, i, j, full);
            break;
        }
    }
    return m;
}

ShiftFamily Registry::shift_family(const std::string& id, const ParamMap& fixed) const {
    const IdentitySpec& spec = find(id);
    if (spec.condense.size() != 2)
        throw domain_error(id + ": family does not admit the (a,b) shift");
    if (spec.entry.is_sum || spec.entry.atoms.size() != 1 ||
        spec.entry.atoms[0].kind != EntryAtom::Kind::Binom)
        throw domain_error(id + ": condensation needs a plain binomial entry rule");

    const std::string& pa = spec.condense[0];
    const std::string& pb = spec.condense[1];
    const LinForm& top = spec.entry.atoms[0].a1;
    const LinForm& bot = spec.entry.atoms[0].a2;

    // Shifting i by 1 adds the i-coefficient of the top form; bumping the
    // shift parameter adds its own coefficient. The step is their ratio.
    BigRat ci_eval = top.ci;
    for (const auto& [p, c] : top.cparam_i) {
        auto it = fixed.find(p);
        if (it == fixed.end())
            throw domain_error(id + ": missing parameter '" + p + "' for condensation");
        ci_eval += c * BigRat(it->second);
    }
    auto coeff_of = [&](const LinForm& lf, const std::string& p) -> BigRat {
        auto it = lf.cparam.find(p);
        return it == lf.cparam.end() ? BigRat(0) : it->second;
    };
    BigRat ca = coeff_of(top, pa);
    BigRat cb = coeff_of(bot, pb);
    if (ca == 0 || cb == 0)
        throw domain_error(id + ": shift parameters must appear in the entry rule");
    BigRat step_a = ci_eval / ca;
    BigRat cj_eval = bot.cj;
    for (const auto& [p, c] : bot.cparam_j) cj_eval += c * BigRat(fixed.at(p));
    BigRat step_b = cj_eval / cb;
    if (step_a.get_den() != 1 || step_b.get_den() != 1 || step_a <= 0 || step_b <= 0)
        throw domain_error(id + ": shift step is not a positive integer");

    ShiftFamily fam;
    fam.step_a = static_cast<long>(step_a.get_num().get_si());
    fam.step_b = static_cast<long>(step_b.get_num().get_si());
    EntryRule rule = spec.entry;
    ParamMap base = fixed;
    fam.entry = [rule, base, pa, pb](long i, long j, long a, long b) -> BigInt {
        ParamMap p = base;
        p[pa] = a;
        p[pb] = b;
        return entry_value_int(rule, i, j, p);
    };
    return fam;
}

BigInt delannoy(long i, long j) {
    if (i < 0 || j < 0) throw domain_error("delannoy: negative argument");
    BigInt acc = 0;
    long lim = std::min(i, j);
    BigInt two_k = 1;
    for (long k = 0; k <= lim; ++k) {
        acc += binomial(i, k) * binomial(j, k) * two_k;
        two_k *= 2;
    }
    return acc;
}

} // namespace detlab
