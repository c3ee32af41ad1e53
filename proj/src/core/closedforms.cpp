#include "core/closedforms.hpp"

#include <sstream>

namespace detlab {

namespace {

long binom2(long n) { return n * (n - 1) / 2; }
long binom3(long n) { return n * (n - 1) * (n - 2) / 6; }

Scalar int_or_rat(const BigRat& v, bool allow_rational, const std::string& what) {
    if (allow_rational) return Scalar(v);
    if (v.get_den() != 1)
        throw internal_error(what + ": non-integral value " + v.get_str());
    return Scalar(BigInt(v.get_num()));
}

QPoly qpow(long e) { return QPoly::monomial(1, e); }

QPoly qpoly_pow(const QPoly& base, long e) {
    if (e < 0) throw domain_error("qpoly_pow: negative exponent");
    QPoly acc(1);
    QPoly b = base;
    while (e > 0) {
        if (e & 1) acc = acc * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return acc;
}

// [r]_q^binom(n,2) * prod_i q^{(r-1) binom(i,2)} [i]!_{q^r} qbin(ri+x,y) /
//                            ([i]!_q qbin(i+y,y))
QPoly rhs_q_ribinom(long n, long r, long x, long y) {
    QPoly num = qpoly_pow(q_integer(r), binom2(n));
    QPoly den(1);
    for (long i = 0; i < n; ++i) {
        num = num * qpow((r - 1) * binom2(i));
        num = num * q_factorial_base(i, r);
        num = num * q_binomial(r * i + x, y);
        den = den * q_factorial(i);
        den = den * q_binomial(i + y, y);
    }
    return QPoly::exact_div(num, den);
}

// q^{(r-1) binom(n,3)} prod_{j=1}^{n} [r]_{q^j}^{n-j}
QPoly rhs_q_53(long n, long r, bool with_qbin_product) {
    QPoly acc = qpow((r - 1) * binom3(n));
    for (long j = 1; j <= n; ++j)
        acc = acc * qpoly_pow(q_integer_base(r, j), n - j);
    if (with_qbin_product)
        for (long i = 0; i < n; ++i) acc = acc * q_binomial(r * i, i);
    return acc;
}

// prod_{i=0}^{n-1} (1+q^i)^{n-i}
QPoly rhs_q_onepq(long n) {
    QPoly acc(1);
    for (long i = 0; i < n; ++i)
        acc = acc * qpoly_pow(QPoly(1) + qpow(i), n - i);
    return acc;
}

MultiLaurent qpoly_monomialized(const std::vector<std::string>& vars, const QPoly& p,
                                const std::string& mono_var, long mono_exp) {
    size_t qi = vars.size(), zi = vars.size();
    for (size_t t = 0; t < vars.size(); ++t) {
        if (vars[t] == "q") qi = t;
        if (vars[t] == mono_var) zi = t;
    }
    if (qi == vars.size() || zi == vars.size())
        throw internal_error("rhs: ring variable table mismatch");
    MultiLaurent out(vars);
    for (long e = p.low_exponent(); e <= p.high_exponent(); ++e) {
        BigRat c = p.coefficient(e);
        if (c == 0) continue;
        ExpVec ev(vars.size(), 0);
        ev[qi] = static_cast<int>(e);
        ev[zi] = static_cast<int>(mono_exp);
        out += MultiLaurent::monomial(vars, c, ev);
    }
    return out;
}

// §4.1, Pochhammer form: 2^{8 binom(n,2)} prod_i of rational Pochhammer ratios.
BigRat rhs_i15_poch(long n) {
    BigRat acc = 1;
    for (long t = 0; t < 8 * binom2(n); ++t) acc *= 2;
    for (long i = 0; i < n; ++i) {
        acc *= pochhammer(BigRat(7, 12), i) * pochhammer(BigRat(1, 12), i) *
               pochhammer(BigRat(5, 4), i) * pochhammer(BigRat(3, 4), i);
        acc /= pochhammer(BigRat(7, 6), i) * pochhammer(BigRat(1, 6), i) *
               pochhammer(BigRat(2, 3), i) * pochhammer(BigRat(2, 3), i);
    }
    return acc;
}

// §4.1, double-product form: 6^{2 binom(n,2)} prod_{i=1}^{n-1} prod_{j=1}^{i}.
BigRat rhs_i15_double(long n) {
    BigRat acc = 1;
    for (long t = 0; t < 2 * binom2(n); ++t) acc *= 6;
    for (long i = 1; i < n; ++i)
        for (long j = 1; j <= i; ++j) {
            acc *= BigRat((12 * j - 5)) * BigRat((12 * j - 11)) * BigRat((4 * j + 1)) *
                   BigRat((4 * j - 1));
            acc /= BigRat((6 * j + 1)) * BigRat((6 * j - 5)) * BigRat((3 * j - 1)) *
                   BigRat((3 * j - 1));
        }
    return acc;
}

long require_param(const ParamMap& params, const std::string& name) {
    auto it = params.find(name);
    if (it == params.end()) throw domain_error("rhs: missing parameter '" + name + "'");
    return it->second;
}

Scalar builtin_rhs(const IdentitySpec& spec, const std::string& key, long n,
                   const ParamMap& params) {
    if (key == "box") {
        long a = require_param(params, "a");
        long b = require_param(params, "b");
        return Scalar(box_product(a, b, n));
    }
    if (key == "i15_products") {
        BigRat v = rhs_i15_double(n);
        return int_or_rat(v, false, spec.id);
    }
    if (key == "q_ribinom") {
        return Scalar(rhs_q_ribinom(n, require_param(params, "r"),
                                    require_param(params, "x"),
                                    require_param(params, "y")));
    }
    if (key == "q_zfactor") {
        QPoly prod(1);
        long r = require_param(params, "r");
        long s = require_param(params, "s");
        for (long i = 0; i < n; ++i)
            prod = prod * q_binomial(r * i, i) * q_binomial(s * i, i);
        return Scalar(qpoly_monomialized(spec.ring_vars, prod, "z", binom2(n)));
    }
    if (key == "q_tri19") {
        QPoly prod(1);
        for (long i = 0; i < n; ++i)
            prod = prod * q_binomial(2 * i + 1, i) * q_binomial(i + 2, i);
        return Scalar(qpoly_monomialized(spec.ring_vars, prod, "z", binom2(n)));
    }
    if (key == "q_onepq") return Scalar(rhs_q_onepq(n));
    if (key == "q_53full") return Scalar(rhs_q_53(n, require_param(params, "r"), true));
    if (key == "q_53red") return Scalar(rhs_q_53(n, require_param(params, "r"), false));
    throw domain_error(spec.id + ": unknown rhs key '" + key + "'");
}

Scalar eval_rhs_key(const IdentitySpec& spec, const std::string& key, long n,
                    const ParamMap& params) {
    if (key.rfind("product:", 0) == 0) {
        ProductFormula pf = ProductFormula::parse(key.substr(8));
        if (spec.ring == Ring::Multivariate)
            return Scalar(pf.eval_multi(spec.ring_vars, n, params));
        BigRat v = pf.eval_rational(n, params);
        if (spec.ring == Ring::Rational) return Scalar(v);
        return int_or_rat(v, spec.calibration, spec.id);
    }
    return builtin_rhs(spec, key, n, params);
}

ParamMap fill_params(const IdentitySpec& spec, long n, const ParamMap& params) {
    ParamMap full = params;
    if (!spec.size_param.empty()) full[spec.size_param] = n;
    return full;
}

} // namespace

Scalar rhs_value(const Registry& reg, const std::string& id, long n,
                 const ParamMap& params) {
    const IdentitySpec& spec = reg.find(id);
    return eval_rhs_key(spec, spec.rhs_key, n, fill_params(spec, n, params));
}

std::vector<Scalar> rhs_all_forms(const Registry& reg, const std::string& id, long n,
                                  const ParamMap& params) {
    const IdentitySpec& spec = reg.find(id);
    ParamMap full = fill_params(spec, n, params);
    std::vector<Scalar> forms;
    forms.push_back(eval_rhs_key(spec, spec.rhs_key, n, full));
    if (id == "I15") {
        forms.push_back(int_or_rat(rhs_i15_poch(n), false, "I15 pochhammer form"));
    } else if (id == "I11") {
        // §3.1 proof chain: K_n = 4^binom(n,2) det[C(2j+i,2j-i)], stored as I13.
        BigRat v = rhs_value(reg, "I13", n, {}).as_integer();
        for (long t = 0; t < 2 * binom2(n); ++t) v *= 2;
        forms.push_back(int_or_rat(v, false, "I11 via I13"));
    } else if (id == "I12") {
        // §3.2: L_n = 16^binom(n,2) det[C(i+j,2j-i)], stored as I14.
        BigRat v = rhs_value(reg, "I14", n, {}).as_integer();
        for (long t = 0; t < 4 * binom2(n); ++t) v *= 2;
        forms.push_back(int_or_rat(v, false, "I12 via I14"));
    }
    return forms;
}

CrossCheckReport rhs_cross_check(const Registry& reg, const std::string& id, long n_max) {
    CrossCheckReport report;
    report.id = id;
    report.n_max = n_max;
    {
        std::vector<Scalar> probe = rhs_all_forms(reg, id, 1, {});
        if (probe.size() < 2)
            throw domain_error(id + ": fewer than two stored forms to cross-check");
    }
    for (long n = 1; n <= n_max; ++n) {
        std::vector<Scalar> forms = rhs_all_forms(reg, id, n, {});
        bool ok = true;
        for (size_t t = 1; t < forms.size(); ++t)
            if (!(forms[t] == forms[0])) ok = false;
        if (!ok) report.all_match = false;
        std::ostringstream os;
        os << "n=" << n << ' ' << (ok ? "match" : "MISMATCH") << " value="
           << forms[0].to_string();
        report.lines.push_back(os.str());
    }
    return report;
}

BigInt box_product(long a, long b, long c) {
    if (a < 0 || b < 0 || c < 0) throw domain_error("box_product: negative box side");
    BigRat acc = 1;
    for (long k = 0; k < c; ++k)
        for (long j = 0; j < b; ++j)
            for (long i = 0; i < a; ++i)
                acc *= BigRat(i + j + k + 2, i + j + k + 1);
    if (acc.get_den() != 1)
        throw internal_error("box_product: non-integral value");
    return acc.get_num();
}

std::string MrrProbeReport::summary() const {
    std::ostringstream os;
    switch (verdict) {
        case Verdict::LiteralMatch:
            os << "verdict=literal-match";
            break;
        case Verdict::ConstantCorrection:
            os << "verdict=constant-correction factor=" << correction.get_str();
            break;
        case Verdict::NoConstantCorrection:
            os << "verdict=no-constant-correction";
            break;
    }
    os << " points=" << rows.size();
    return os.str();
}

MrrProbeReport mrr_calibration_probe(const Registry& reg, long n_max, long mu_max) {
    MrrProbeReport report;
    bool first = true;
    bool all_one = true, all_equal = true;
    for (long n = 1; n <= n_max; ++n) {
        for (long mu = 0; mu <= mu_max; ++mu) {
            ParamMap params{{"mu", mu}};
            MrrProbeRow row;
            row.n = n;
            row.mu = mu;
            row.det = BigRat(det_bareiss(reg.build("I05", n, params).int_m));
            row.formula = rhs_value(reg, "I05", n, params).as_rational();
            if (row.formula == 0)
                throw internal_error("mrr probe: literal formula vanished");
            row.ratio = row.det / row.formula;
            if (first) {
                report.correction = row.ratio;
                first = false;
            } else if (row.ratio != report.correction) {
                all_equal = false;
            }
            if (row.ratio != 1) all_one = false;
            report.rows.push_back(std::move(row));
        }
    }
    if (all_one)
        report.verdict = MrrProbeReport::Verdict::LiteralMatch;
    else if (all_equal)
        report.verdict = MrrProbeReport::Verdict::ConstantCorrection;
    else
        report.verdict = MrrProbeReport::Verdict::NoConstantCorrection;
    return report;
}

} // namespace detlab
