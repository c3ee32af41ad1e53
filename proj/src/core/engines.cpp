#include "core/engines.hpp"

#include <map>
#include <tuple>

namespace detlab {

namespace {

// Shared one-step fraction-free elimination. Needs: ==/!= zero, *, -, and an
// exact division hook. `one` seeds the initial divisor.
template <class T, class Div>
T bareiss_generic(Matrix<T> m, const T& one, const T& zero, Div divide) {
    const size_t n = m.size();
    if (n == 0) return one;
    int sign = 1;
    T prev = one;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == zero) {
            size_t p = k + 1;
            while (p < n && m.at(p, k) == zero) ++p;
            if (p == n) return zero;
            for (size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                T num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = divide(num, prev);
            }
            m.at(i, k) = zero;
        }
        prev = m.at(k, k);
    }
    T det = m.at(n - 1, n - 1);
    if (sign < 0) det = zero - det;
    return det;
}

template <class T>
T laplace_generic(const Matrix<T>& m, const T& zero) {
    const size_t n = m.size();
    if (n > 8) throw domain_error("det_laplace: size guard (n <= 8)");
    // Recursive first-row expansion over explicit minors.
    std::function<T(const Matrix<T>&)> rec = [&](const Matrix<T>& a) -> T {
        const size_t sz = a.size();
        if (sz == 0) throw internal_error("det_laplace: empty minor");
        if (sz == 1) return a.at(0, 0);
        T acc = zero;
        for (size_t j = 0; j < sz; ++j) {
            if (a.at(0, j) == zero) continue;
            Matrix<T> minor(sz - 1);
            for (size_t i = 1; i < sz; ++i) {
                size_t w = 0;
                for (size_t c = 0; c < sz; ++c) {
                    if (c == j) continue;
                    minor.at(i - 1, w++) = a.at(i, c);
                }
            }
            T term = a.at(0, j) * rec(minor);
            if (j % 2 == 0)
                acc = acc + term;
            else
                acc = acc - term;
        }
        return acc;
    };
    if (n == 0) throw domain_error("det_laplace: n must be >= 1");
    return rec(m);
}

} // namespace

BigInt det_bareiss(const IntMatrix& m) {
    return bareiss_generic<BigInt>(m, BigInt(1), BigInt(0),
                                   [](const BigInt& a, const BigInt& b) { return exact_div(a, b); });
}

BigRat det_bareiss(const RatMatrix& m) {
    // Scale each row integral first so elimination stays in Z.
    const size_t n = m.size();
    if (n == 0) return 1;
    IntMatrix im(n);
    BigRat scale = 1;
    for (size_t i = 0; i < n; ++i) {
        BigInt lcm = 1;
        for (size_t j = 0; j < n; ++j) {
            const BigInt& den = m.at(i, j).get_den();
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        }
        for (size_t j = 0; j < n; ++j) {
            BigRat scaled = m.at(i, j) * BigRat(lcm);
            if (scaled.get_den() != 1)
                throw internal_error("det_bareiss: row scaling failed");
            im.at(i, j) = scaled.get_num();
        }
        scale *= BigRat(lcm);
    }
    return BigRat(det_bareiss(im)) / scale;
}

QPoly det_bareiss(const QPolyMatrix& m) {
    return bareiss_generic<QPoly>(m, QPoly(1), QPoly(),
                                  [](const QPoly& a, const QPoly& b) { return QPoly::exact_div(a, b); });
}

MultiLaurent det_bareiss(const MultiMatrix& m) {
    std::vector<std::string> vars;
    for (size_t i = 0; i < m.size() && vars.empty(); ++i)
        for (size_t j = 0; j < m.size() && vars.empty(); ++j)
            vars = m.at(i, j).variables();
    MultiLaurent one = MultiLaurent::constant(vars, 1);
    MultiLaurent zero(vars);
    return bareiss_generic<MultiLaurent>(m, one, zero,
                                         [](const MultiLaurent& a, const MultiLaurent& b) {
                                             return MultiLaurent::exact_div(a, b);
                                         });
}

Scalar det_bareiss(const ExactMatrix& m) {
    switch (m.ring) {
        case Ring::Integer: return Scalar(det_bareiss(m.int_m));
        case Ring::Rational: return Scalar(det_bareiss(m.rat_m));
        case Ring::QPolynomial: return Scalar(det_bareiss(m.qpoly_m));
        case Ring::Multivariate: return Scalar(det_bareiss(m.multi_m));
    }
    throw internal_error("det_bareiss: bad ring tag");
}

BigInt det_laplace(const IntMatrix& m) { return laplace_generic<BigInt>(m, 0); }
BigRat det_laplace(const RatMatrix& m) { return laplace_generic<BigRat>(m, 0); }
QPoly det_laplace(const QPolyMatrix& m) { return laplace_generic<QPoly>(m, QPoly()); }

MultiLaurent det_laplace(const MultiMatrix& m) {
    std::vector<std::string> vars;
    for (size_t i = 0; i < m.size() && vars.empty(); ++i)
        for (size_t j = 0; j < m.size() && vars.empty(); ++j)
            vars = m.at(i, j).variables();
    return laplace_generic<MultiLaurent>(m, MultiLaurent(vars));
}

Scalar det_laplace(const ExactMatrix& m) {
    switch (m.ring) {
        case Ring::Integer: return Scalar(det_laplace(m.int_m));
        case Ring::Rational: return Scalar(det_laplace(m.rat_m));
        case Ring::QPolynomial: return Scalar(det_laplace(m.qpoly_m));
        case Ring::Multivariate: return Scalar(det_laplace(m.multi_m));
    }
    throw internal_error("det_laplace: bad ring tag");
}

MultiLaurent det_zinterp(const MultiMatrix& m, size_t var_index) {
    const size_t n = m.size();
    std::vector<std::string> vars;
    for (size_t i = 0; i < n && vars.empty(); ++i)
        for (size_t j = 0; j < n && vars.empty(); ++j)
            vars = m.at(i, j).variables();
    if (vars.empty()) return det_bareiss(m);
    if (var_index >= vars.size())
        throw domain_error("det_zinterp: unknown variable index");

    // Degree bound: sum over rows of the max z-degree in that row.
    long deg = 0;
    for (size_t i = 0; i < n; ++i) {
        long row = 0;
        for (size_t j = 0; j < n; ++j) {
            if (m.at(i, j).min_exponent(var_index) < 0)
                throw domain_error("det_zinterp: negative exponent in interpolation variable");
            row = std::max(row, m.at(i, j).max_exponent(var_index));
        }
        deg += row;
    }

    std::vector<MultiLaurent> samples;
    samples.reserve(static_cast<size_t>(deg) + 1);
    for (long t = 0; t <= deg; ++t) {
        MultiMatrix spec(n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                spec.at(i, j) = m.at(i, j).substitute(var_index, BigRat(t));
        samples.push_back(det_bareiss(spec));
    }

    // Lagrange combination back into the full ring.
    MultiLaurent result(vars);
    for (long t = 0; t <= deg; ++t) {
        // L_t(z) = prod_{s != t} (z - s)/(t - s)
        std::vector<BigRat> lag(1, BigRat(1));   // coefficients in z, low to high
        BigRat denom = 1;
        for (long s = 0; s <= deg; ++s) {
            if (s == t) continue;
            std::vector<BigRat> next(lag.size() + 1, BigRat(0));
            for (size_t c = 0; c < lag.size(); ++c) {
                next[c] += lag[c] * BigRat(-s);
                next[c + 1] += lag[c];
            }
            lag.swap(next);
            denom *= BigRat(t - s);
        }
        // Lift the sample (which lacks the z variable) and multiply by L_t.
        const MultiLaurent& s_t = samples[static_cast<size_t>(t)];
        for (size_t c = 0; c < lag.size(); ++c) {
            BigRat coeff = lag[c] / denom;
            if (coeff == 0) continue;
            for (const auto& [e, cf] : s_t.terms()) {
                ExpVec full(vars.size(), 0);
                size_t w = 0;
                for (size_t v = 0; v < vars.size(); ++v) {
                    if (v == var_index) continue;
                    full[v] = e[w++];
                }
                full[var_index] = static_cast<int>(c);
                result += MultiLaurent::monomial(vars, cf * coeff, full);
            }
        }
    }
    return result;
}

IntMatrix build_shift_matrix(const ShiftFamily& fam, long n, long a, long b) {
    IntMatrix m(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            m.at(static_cast<size_t>(i), static_cast<size_t>(j)) = fam.entry(i, j, a, b);
    return m;
}

namespace {

struct CondensationState {
    const ShiftFamily& fam;
    std::map<std::tuple<long, long, long>, BigInt> memo;
    long fallbacks = 0;

    // A fully zero first row or first column settles the determinant without
    // touching the recurrence (these cells are exactly where the divisor
    // vanishes in binomial families, so they are not Bareiss fallbacks).
    bool structurally_zero(long n, long a, long b) const {
        bool row_zero = true;
        for (long j = 0; j < n && row_zero; ++j)
            if (fam.entry(0, j, a, b) != 0) row_zero = false;
        if (row_zero) return true;
        bool col_zero = true;
        for (long i = 0; i < n && col_zero; ++i)
            if (fam.entry(i, 0, a, b) != 0) col_zero = false;
        return col_zero;
    }

    const BigInt& z(long n, long a, long b) {
        auto key = std::make_tuple(n, a, b);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        BigInt value;
        if (n == 0) {
            value = 1;
        } else if (n == 1) {
            value = fam.entry(0, 0, a, b);
        } else if (structurally_zero(n, a, b)) {
            value = 0;
        } else {
            long a1 = a + fam.step_a, b1 = b + fam.step_b;
            const BigInt& div = z(n - 2, a1, b1);
            if (div == 0) {
                ++fallbacks;
                value = det_bareiss(build_shift_matrix(fam, n, a, b));
            } else {
                BigInt num = z(n - 1, a, b) * z(n - 1, a1, b1) -
                             z(n - 1, a1, b) * z(n - 1, a, b1);
                value = exact_div(num, div);
            }
        }
        return memo.emplace(key, std::move(value)).first->second;
    }
};

} // namespace

CondensationResult det_condensation(const ShiftFamily& fam, long n, long a, long b) {
    if (n < 0) throw domain_error("det_condensation: n must be >= 0");
    CondensationState st{fam, {}, 0};
    BigInt d = st.z(n, a, b);
    return CondensationResult{d, st.fallbacks};
}

DodgsonReport dodgson_residual(const ShiftFamily& fam, long n_max,
                               long a_max, long b_max, long a0, long b0) {
    DodgsonReport report;
    std::map<std::tuple<long, long, long>, BigInt> dets;
    auto z = [&](long n, long a, long b) -> const BigInt& {
        auto key = std::make_tuple(n, a, b);
        auto it = dets.find(key);
        if (it == dets.end())
            it = dets.emplace(key, det_bareiss(build_shift_matrix(fam, n, a, b))).first;
        return it->second;
    };
    for (long n = 2; n <= n_max; ++n) {
        for (long a = a0; a <= a_max; ++a) {
            for (long b = b0; b <= b_max; ++b) {
                long a1 = a + fam.step_a, b1 = b + fam.step_b;
                BigInt residual = z(n, a, b) * z(n - 2, a1, b1) -
                                  (z(n - 1, a, b) * z(n - 1, a1, b1) -
                                   z(n - 1, a1, b) * z(n - 1, a, b1));
                bool ok = residual == 0;
                if (!ok) ++report.violations;
                report.cells.push_back(DodgsonCell{n, a, b, ok});
            }
        }
    }
    return report;
}

template <class T>
T triangular_factor_det(const std::function<T(long, long)>& a_gen,
                        const std::function<T(long, long)>& b_gen,
                        const std::function<T(long)>& f, long n,
                        const T& one) {
    if (n < 1) throw domain_error("triangular_factor_det: n must be >= 1");
    T product = one;
    for (long i = 0; i < n; ++i)
        product = product * (a_gen(i, i) * b_gen(i, i) * f(i));
    Matrix<T> m(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            T acc = a_gen(i, 0) * b_gen(j, 0) * f(0);
            long lim = std::min(i, j);
            for (long k = 1; k <= lim; ++k)
                acc = acc + a_gen(i, k) * b_gen(j, k) * f(k);
            m.at(static_cast<size_t>(i), static_cast<size_t>(j)) = acc;
        }
    if (!(det_bareiss(m) == product))
        throw internal_error("triangular_factor_det: reconstruction check failed");
    return product;
}

template BigInt triangular_factor_det<BigInt>(const std::function<BigInt(long, long)>&,
                                              const std::function<BigInt(long, long)>&,
                                              const std::function<BigInt(long)>&, long,
                                              const BigInt&);
template QPoly triangular_factor_det<QPoly>(const std::function<QPoly(long, long)>&,
                                            const std::function<QPoly(long, long)>&,
                                            const std::function<QPoly(long)>&, long,
                                            const QPoly&);
template MultiLaurent triangular_factor_det<MultiLaurent>(
    const std::function<MultiLaurent(long, long)>&,
    const std::function<MultiLaurent(long, long)>&,
    const std::function<MultiLaurent(long)>&, long, const MultiLaurent&);

LuCheckReport binomial_lu_check(long n) {
    if (n < 1) throw domain_error("binomial_lu_check: n must be >= 1");
    LuCheckReport r;
    r.entries_match = true;
    for (long i = 0; i < n && r.entries_match; ++i)
        for (long j = 0; j < n; ++j) {
            BigInt sum = 0;
            for (long k = 0; k <= i; ++k) sum += binomial(i, k) * binomial(j, i - k);
            if (sum != binomial(i + j, i)) {
                r.entries_match = false;
                break;
            }
        }
    IntMatrix lower(static_cast<size_t>(n)), upper(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            lower.at(static_cast<size_t>(i), static_cast<size_t>(j)) = binomial(i, j);
            upper.at(static_cast<size_t>(i), static_cast<size_t>(j)) = binomial(j, i);
        }
    r.lower_det = det_bareiss(lower);
    r.upper_det = det_bareiss(upper);
    return r;
}

} // namespace detlab
