#include "core/ctintegral.hpp"

#include "core/engines.hpp"

namespace detlab {

namespace {

// Drop terms that can no longer reach exponent zero in any variable given the
// +/- exponent budget of the factors not yet multiplied in.
MultiLaurent prune_unreachable(const MultiLaurent& p, const std::vector<long>& plus,
                               const std::vector<long>& minus) {
    MultiLaurent out(p.variables());
    for (const auto& [e, c] : p.terms()) {
        bool keep = true;
        for (size_t v = 0; v < e.size(); ++v) {
            if (e[v] + plus[v] < 0 || e[v] - minus[v] > 0) {
                keep = false;
                break;
            }
        }
        if (keep) out += MultiLaurent::monomial(p.variables(), c, e);
    }
    return out;
}

} // namespace

BigInt dyson_ct(long n, long alpha) {
    if (n < 1) throw domain_error("dyson_ct: n must be >= 1");
    if (alpha < 0) throw domain_error("dyson_ct: alpha must be >= 0");
    long cap = alpha == 0 ? n : alpha == 1 ? 5 : alpha == 2 ? 4 : 3;
    if (n > cap) throw domain_error("dyson_ct: size guard for this alpha");
    if (n == 1 || alpha == 0) return 1;

    std::vector<std::string> vars;
    for (long t = 0; t < n; ++t) vars.push_back("x" + std::to_string(t));

    // Factor list ordered so that low-indexed variables finish first: the
    // factor (1 - x_i/x_j) is scheduled at min(i,j).
    struct Factor {
        long i, j;
    };
    std::vector<Factor> factors;
    for (long v = 0; v < n; ++v)
        for (long w = v + 1; w < n; ++w)
            for (long rep = 0; rep < alpha; ++rep) {
                factors.push_back({v, w});
                factors.push_back({w, v});
            }

    // Remaining +1 / -1 exponent budget per variable.
    std::vector<long> plus(static_cast<size_t>(n), 0), minus(static_cast<size_t>(n), 0);
    for (const auto& f : factors) {
        ++plus[static_cast<size_t>(f.i)];
        ++minus[static_cast<size_t>(f.j)];
    }

    MultiLaurent acc = MultiLaurent::constant(vars, 1);
    for (const auto& f : factors) {
        ExpVec e(vars.size(), 0);
        e[static_cast<size_t>(f.i)] = 1;
        e[static_cast<size_t>(f.j)] = -1;
        MultiLaurent factor = MultiLaurent::constant(vars, 1) -
                              MultiLaurent::monomial(vars, 1, e);
        acc = acc * factor;
        --plus[static_cast<size_t>(f.i)];
        --minus[static_cast<size_t>(f.j)];
        acc = prune_unreachable(acc, plus, minus);
    }
    BigRat ct = acc.ct_all();
    if (ct.get_den() != 1) throw internal_error("dyson_ct: non-integral constant term");
    return ct.get_num();
}

BigInt v2_coefficient(long n) {
    if (n < 1) throw domain_error("v2_coefficient: n must be >= 1");
    if (n == 1) return 1;
    MultiLaurent v = vandermonde(n);
    MultiLaurent v2 = v * v;
    ExpVec target(static_cast<size_t>(n), static_cast<int>(n - 1));
    BigRat c = v2.coefficient(target);
    if (c.get_den() != 1) throw internal_error("v2_coefficient: non-integral coefficient");
    return c.get_num();
}

V2Report v2_coefficient_check(long n) {
    if (n > 6) throw domain_error("v2_coefficient_check: n <= 6");
    V2Report r;
    r.coefficient = v2_coefficient(n);
    r.expected = factorial(n);
    if ((n * (n - 1) / 2) % 2 != 0) r.expected = -r.expected;
    r.ok = r.coefficient == r.expected;
    return r;
}

CtRepReport ct_entry_representation_check(long i, long j, long weight) {
    if (i < 0 || j < 0 || i > 8 || j > 8)
        throw domain_error("ct_entry_representation_check: i, j in 0..8");
    if (weight != 1 && weight != 2 && weight != 4)
        throw domain_error("ct_entry_representation_check: weight in {1,2,4}");
    std::vector<std::string> vars{"x"};
    auto mono = [&](const BigRat& c, int e) {
        return MultiLaurent::monomial(vars, c, ExpVec{e});
    };
    MultiLaurent one = MultiLaurent::constant(vars, 1);
    CtRepReport r;
    if (weight == 1) {
        // x^i (1+1/x)^{i+j}; also equal to (1+x)^i (1+1/x)^j termwise in Ct.
        MultiLaurent lhs = mono(1, static_cast<int>(i)) *
                           (one + mono(1, -1)).pow(i + j);
        MultiLaurent alt = (one + mono(1, 1)).pow(i) * (one + mono(1, -1)).pow(j);
        BigRat a = lhs.ct_all(), b = alt.ct_all();
        if (a != b) throw internal_error("ct representation: the two 2.2 forms differ");
        r.ct_value = a.get_num();
        r.sum_value = binomial(i + j, i);
    } else {
        long w_in = 2;   // (1+2x)^{2i} always
        MultiLaurent lhs = (one + mono(w_in, 1)).pow(2 * i) *
                           (one + mono(weight == 2 ? 1 : 2, -1)).pow(2 * j);
        BigRat a = lhs.ct_all();
        r.ct_value = a.get_num();
        BigInt sum = 0;
        long lim = std::min(2 * i, 2 * j);
        BigInt wk = 1;
        for (long k = 0; k <= lim; ++k) {
            sum += binomial(2 * i, k) * binomial(2 * j, k) * wk;
            wk *= weight;
        }
        r.sum_value = sum;
    }
    r.ok = r.ct_value == r.sum_value;
    return r;
}

BigRat moment_integral(const MultiLaurent& p, long alpha) {
    if (alpha < 0) throw domain_error("moment_integral: alpha must be >= 0");
    BigRat acc = 0;
    for (const auto& [e, c] : p.terms()) {
        BigRat weight = 1;
        for (int m : e) {
            if (m < 0) throw domain_error("moment_integral: negative exponent present");
            weight *= BigRat(factorial(m + alpha));
        }
        acc += c * weight;
    }
    return acc;
}

BigRat selberg_like(long n, long alpha, long beta) {
    if (n < 1) throw domain_error("selberg_like: n must be >= 1");
    if (beta < 0 || alpha < 0) throw domain_error("selberg_like: negative parameter");
    long cap = beta <= 0 ? 8 : beta == 1 ? 5 : beta == 2 ? 3 : 2;
    if (n > cap) throw domain_error("selberg_like: size guard for this beta");

    MultiLaurent integrand;
    if (beta == 0) {
        std::vector<std::string> vars;
        for (long t = 0; t < n; ++t) vars.push_back("x" + std::to_string(t));
        integrand = MultiLaurent::constant(vars, 1);
    } else {
        integrand = vandermonde(n).pow(2 * beta);
    }
    BigRat value = moment_integral(integrand, alpha);

    if (alpha == 0 && beta == 1) {
        BigRat route2 = BigRat(superfactorial(n) * superfactorial(n - 1));
        IntMatrix fm(static_cast<size_t>(n));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                fm.at(static_cast<size_t>(i), static_cast<size_t>(j)) = factorial(i + j);
        BigRat route3 = BigRat(factorial(n) * det_bareiss(fm));
        if (value != route2 || value != route3)
            throw internal_error("selberg_like: the three routes disagree");
    }
    return value;
}

} // namespace detlab
