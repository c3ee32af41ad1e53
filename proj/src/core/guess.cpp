#include "core/guess.hpp"

#include <algorithm>
#include <sstream>

namespace detlab {

namespace {

using Vec = std::vector<BigInt>;

BigRat poly_at(const Vec& c, long t) {
    BigRat acc = 0;
    for (size_t e = c.size(); e-- > 0;) acc = acc * BigRat(t) + BigRat(c[e]);
    return acc;
}

void trim(Vec& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

// Integer kernel of an r x u integer matrix as a basis of the saturated
// lattice ker(A) cap Z^u: integer row reduction of [A^T | I_u]; rows whose
// left block vanishes carry kernel vectors in the right block.
std::vector<Vec> integer_kernel(const std::vector<Vec>& rows, size_t u) {
    const size_t r = rows.size();
    std::vector<Vec> work(u, Vec(r + u, BigInt(0)));
    for (size_t c = 0; c < u; ++c) {
        for (size_t t = 0; t < r; ++t) work[c][t] = rows[t][c];
        work[c][r + c] = 1;
    }
    size_t row = 0;
    for (size_t col = 0; col < r && row < u; ++col) {
        // Euclidean elimination in this column below `row`.
        for (;;) {
            size_t best = u;
            for (size_t t = row; t < u; ++t) {
                if (work[t][col] == 0) continue;
                if (best == u || cmp(abs(work[t][col]), abs(work[best][col])) < 0) best = t;
            }
            if (best == u) break;
            std::swap(work[row], work[best]);
            bool done = true;
            for (size_t t = row + 1; t < u; ++t) {
                if (work[t][col] == 0) continue;
                BigInt f = work[t][col] / work[row][col];   // floor-ish truncation is fine
                if (f != 0)
                    for (size_t c2 = 0; c2 < r + u; ++c2) work[t][c2] -= f * work[row][c2];
                if (work[t][col] != 0) done = false;
            }
            if (done) break;
        }
        if (work[row][col] != 0) ++row;
    }
    std::vector<Vec> kernel;
    for (size_t t = row; t < u; ++t) {
        bool zero_left = true;
        for (size_t c = 0; c < r; ++c)
            if (work[t][c] != 0) { zero_left = false; break; }
        if (!zero_left) continue;
        Vec v(work[t].begin() + static_cast<long>(r), work[t].end());
        kernel.push_back(std::move(v));
    }
    return kernel;
}

BigInt vec_height(const Vec& v) {
    BigInt h = 0;
    for (const auto& x : v) {
        BigInt a = abs(x);
        if (a > h) h = a;
    }
    return h;
}

// Textbook LLL (delta = 3/4) over an integer basis; dimensions here are tiny.
void lll_reduce(std::vector<Vec>& basis) {
    const size_t k = basis.size();
    if (k < 2) return;
    const size_t dim = basis[0].size();
    auto dot = [&](const Vec& a, const Vec& b) {
        BigInt acc = 0;
        for (size_t t = 0; t < dim; ++t) acc += a[t] * b[t];
        return acc;
    };
    std::vector<std::vector<BigRat>> mu(k, std::vector<BigRat>(k));
    std::vector<BigRat> B(k);
    auto gram_schmidt = [&] {
        std::vector<std::vector<BigRat>> star(k, std::vector<BigRat>(dim));
        for (size_t i = 0; i < k; ++i) {
            for (size_t t = 0; t < dim; ++t) star[i][t] = BigRat(basis[i][t]);
            for (size_t j = 0; j < i; ++j) {
                BigRat num = 0;
                for (size_t t = 0; t < dim; ++t) num += BigRat(basis[i][t]) * star[j][t];
                mu[i][j] = B[j] == 0 ? BigRat(0) : num / B[j];
                for (size_t t = 0; t < dim; ++t) star[i][t] -= mu[i][j] * star[j][t];
            }
            BigRat norm = 0;
            for (size_t t = 0; t < dim; ++t) norm += star[i][t] * star[i][t];
            B[i] = norm;
        }
    };
    auto nearest = [](const BigRat& x) -> BigInt {
        BigInt num = x.get_num(), den = x.get_den();
        BigInt twice = 2 * num + den;
        BigInt twiceden = 2 * den;
        BigInt q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), twice.get_mpz_t(), twiceden.get_mpz_t());
        return q;
    };
    gram_schmidt();
    size_t i = 1;
    size_t guard = 0;
    const size_t guard_max = 10000;
    while (i < k && ++guard < guard_max) {
        for (size_t j = i; j-- > 0;) {
            BigInt c = nearest(mu[i][j]);
            if (c != 0) {
                for (size_t t = 0; t < dim; ++t) basis[i][t] -= c * basis[j][t];
                gram_schmidt();
            }
        }
        BigRat lhs = B[i];
        BigRat rhs = (BigRat(3, 4) - mu[i][i - 1] * mu[i][i - 1]) * B[i - 1];
        if (lhs < rhs) {
            std::swap(basis[i], basis[i - 1]);
            gram_schmidt();
            if (i > 1) --i;
        } else {
            ++i;
        }
    }
}

struct CandidateFit {
    Vec p, q;          // canonical integer polynomials, s = p/q
    BigInt height;
};

// Divide out gcd over Q, clear to integer lowest terms, make q's leading
// coefficient positive.
bool canonicalize(Vec& p, Vec& q) {
    trim(p);
    trim(q);
    if (p.empty() || q.empty()) return false;
    // polynomial gcd by rational Euclid
    auto mod = [](std::vector<BigRat> a, const std::vector<BigRat>& b) {
        while (a.size() >= b.size()) {
            BigRat f = a.back() / b.back();
            size_t off = a.size() - b.size();
            for (size_t t = 0; t < b.size(); ++t) a[off + t] -= f * b[t];
            while (!a.empty() && a.back() == 0) a.pop_back();
            if (a.empty()) break;
        }
        return a;
    };
    std::vector<BigRat> pa(p.begin(), p.end()), qa(q.begin(), q.end());
    std::vector<BigRat> g = pa, h = qa;
    while (!h.empty()) {
        auto rem = mod(g, h);
        g = h;
        h = rem;
    }
    if (g.size() > 1) {
        // cancel the common factor from both
        auto divide = [&](const std::vector<BigRat>& a) {
            std::vector<BigRat> rem = a, quo(a.size() - g.size() + 1, BigRat(0));
            for (size_t t = quo.size(); t-- > 0;) {
                BigRat f = rem[t + g.size() - 1] / g.back();
                quo[t] = f;
                for (size_t s = 0; s < g.size(); ++s) rem[t + s] -= f * g[s];
            }
            return quo;
        };
        pa = divide(pa);
        qa = divide(qa);
    }
    BigInt lcm = 1;
    for (const auto& c : pa) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    for (const auto& c : qa) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    p.assign(pa.size(), 0);
    q.assign(qa.size(), 0);
    for (size_t t = 0; t < pa.size(); ++t) {
        BigRat v = pa[t] * BigRat(lcm);
        p[t] = v.get_num();
    }
    for (size_t t = 0; t < qa.size(); ++t) {
        BigRat v = qa[t] * BigRat(lcm);
        q[t] = v.get_num();
    }
    BigInt content = 0;
    for (const auto& c : p) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    for (const auto& c : q) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    if (content == 0) return false;
    for (auto& c : p) c = exact_div(c, content);
    for (auto& c : q) c = exact_div(c, content);
    if (q.back() < 0) {
        for (auto& c : p) c = -c;
        for (auto& c : q) c = -c;
    }
    return true;
}

// Rational roots of an integer polynomial with multiplicity; returns false if
// it does not split over Q (cofactor left behind).
bool rational_roots(const Vec& poly, std::vector<BigRat>& roots) {
    std::vector<BigRat> work(poly.begin(), poly.end());
    auto deflate = [&](const BigRat& root) {
        // synthetic division by (t - root)
        std::vector<BigRat> out(work.size() - 1);
        BigRat carry = 0;
        for (size_t t = work.size(); t-- > 1;) {
            carry = work[t] + carry * root;
            out[t - 1] = carry;
            carry = out[t - 1];
        }
        work = out;
    };
    // re-implementation of deflation done properly below; the loop above is
    // replaced by a clean Horner pass.
    auto divide_linear = [&](const BigRat& root) {
        std::vector<BigRat> out(work.size() - 1);
        BigRat acc = work.back();
        for (size_t t = work.size() - 1; t-- > 0;) {
            out[t] = acc;
            acc = work[t] + acc * root;
        }
        work = out;
    };
    (void)deflate;
    auto value = [&](const BigRat& at) {
        BigRat acc = 0;
        for (size_t t = work.size(); t-- > 0;) acc = acc * at + work[t];
        return acc;
    };
    while (work.size() > 1) {
        // strip zero roots first
        if (work.front() == 0) {
            roots.push_back(0);
            work.erase(work.begin());
            continue;
        }
        // candidate roots p/q: p | constant, q | leading (as integers)
        BigRat c0 = work.front(), lead = work.back();
        BigInt num0 = c0.get_num() * lead.get_den();
        BigInt den0 = lead.get_num() * c0.get_den();
        num0 = abs(num0);
        den0 = abs(den0);
        if (num0 > 1000000000000L) return false;   // divisor enumeration guard
        bool found = false;
        std::vector<BigInt> num_divs, den_divs;
        auto divisors = [](const BigInt& v, std::vector<BigInt>& out) {
            if (!v.fits_slong_p()) return false;
            long x = v.get_si();
            for (long d = 1; d * d <= x; ++d)
                if (x % d == 0) {
                    out.push_back(d);
                    out.push_back(x / d);
                }
            return true;
        };
        if (!divisors(num0, num_divs) || !divisors(den0, den_divs)) return false;
        for (const auto& a : num_divs) {
            for (const auto& b : den_divs) {
                for (int sgn = 1; sgn >= -1 && !found; sgn -= 2) {
                    BigRat cand = make_rat(sgn > 0 ? a : BigInt(-a), b);
                    if (value(cand) == 0) {
                        roots.push_back(cand);
                        divide_linear(cand);
                        found = true;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) return false;
    }
    return true;
}

ProductFormula build_formula(const BigRat& first, const BigRat& first_ratio,
                             const Vec& p, const Vec& q) {
    ProductFormula f;
    f.upper_nm1 = true;
    Prefactor a;
    a.base = Prefactor::Base::Number;
    a.number = first;
    a.exp = Prefactor::Exp::Const;
    a.exp_const = 1;
    f.prefactors.push_back(a);
    Prefactor b;
    b.base = Prefactor::Base::Number;
    b.number = first_ratio;
    b.exp = Prefactor::Exp::NM1;
    f.prefactors.push_back(b);

    std::vector<BigRat> proots, qroots;
    if (rational_roots(p, proots) && rational_roots(q, qroots)) {
        // s(t) = C prod (t - rho) / prod (t - sigma); the telescoped factor for
        // index u is prod poch(1 - rho, u) / poch(1 - sigma, u).
        BigRat c = make_rat(p.back(), q.back());
        Prefactor cp;
        cp.base = Prefactor::Base::Number;
        cp.number = c;
        cp.exp = Prefactor::Exp::BinomNM12;
        f.prefactors.push_back(cp);
        auto add_poch = [&](const BigRat& root, long e) {
            for (auto& existing : f.factors) {
                if (existing.kind == PFactor::Kind::Poch &&
                    existing.arg1.c0 == BigRat(1) - root && existing.arg1.ci == 0) {
                    existing.exponent += e;
                    return;
                }
            }
            PFactor pf;
            pf.kind = PFactor::Kind::Poch;
            pf.arg1.c0 = BigRat(1) - root;
            pf.arg2.ci = 1;   // poch count = the product index
            pf.exponent = e;
            f.factors.push_back(pf);
        };
        for (const auto& r : proots) add_poch(r, +1);
        for (const auto& r : qroots) add_poch(r, -1);
        // drop cancelled factors
        std::erase_if(f.factors, [](const PFactor& pf) { return pf.exponent == 0; });
    } else {
        PFactor pf;
        pf.kind = PFactor::Kind::PolyProd;
        pf.pnum = p;
        pf.pden = q;
        f.factors.push_back(pf);
    }
    return f;
}

} // namespace

std::string GuessResult::describe() const {
    if (!found) return "no-fit";
    std::ostringstream os;
    os << "conjectured: " << formula.to_string() << "  ratio-fit: (";
    for (size_t t = 0; t < ratio_num.size(); ++t)
        os << (t ? "," : "") << ratio_num[t].get_str();
    os << ")/(";
    for (size_t t = 0; t < ratio_den.size(); ++t)
        os << (t ? "," : "") << ratio_den[t].get_str();
    os << ")";
    return os.str();
}

GuessResult guess_product_form(const std::vector<BigRat>& seq) {
    if (seq.size() < 6) throw domain_error("guess_product_form: need at least 6 terms");
    for (const auto& v : seq)
        if (v == 0) throw domain_error("guess_product_form: zero term in sequence");

    const size_t m = seq.size();
    std::vector<BigRat> r(m - 1), s(m - 2);
    for (size_t t = 0; t + 1 < m; ++t) r[t] = seq[t + 1] / seq[t];
    for (size_t t = 0; t + 2 < m; ++t) s[t] = r[t + 1] / r[t];
    const size_t points = s.size();           // s[t] is the value at n = t+1
    const size_t holdout = 2;
    const size_t train = points - holdout;

    auto validate = [&](const Vec& p, const Vec& q) {
        for (size_t t = 0; t < points; ++t) {
            long at = static_cast<long>(t) + 1;
            BigRat qv = poly_at(q, at);
            if (qv == 0) return false;
            if (s[t] * qv != poly_at(p, at)) return false;
        }
        return true;
    };

    struct DegreePair {
        long dp, dq;
    };
    std::vector<DegreePair> order;
    for (long total = 0; total <= 8; ++total)
        for (long dp = 0; dp <= std::min(4L, total); ++dp) {
            long dq = total - dp;
            if (dq >= 0 && dq <= 4) order.push_back({dp, dq});
        }

    // Exact homogeneous rows s(t) sum q_e t^e - sum p_e t^e = 0 over a point
    // range, scaled integral.
    auto build_rows = [&](long dp, long dq, size_t upto) {
        const size_t u = static_cast<size_t>(dp + dq + 2);
        std::vector<Vec> rows;
        for (size_t t = 0; t < upto; ++t) {
            long at = static_cast<long>(t) + 1;
            std::vector<BigRat> row;
            BigRat pw = 1;
            for (long e = 0; e <= dq; ++e) {
                row.push_back(s[t] * pw);
                pw *= at;
            }
            pw = 1;
            for (long e = 0; e <= dp; ++e) {
                row.push_back(-pw);
                pw *= at;
            }
            BigInt lcm = 1;
            for (const auto& c : row)
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
            Vec irow(u);
            for (size_t c = 0; c < u; ++c) {
                BigRat v = row[c] * BigRat(lcm);
                irow[c] = v.get_num();
            }
            rows.push_back(std::move(irow));
        }
        return rows;
    };

    // Reduced kernel basis plus small pairwise combinations, by height.
    auto candidate_vectors = [&](long dp, long dq, size_t upto) {
        const size_t u = static_cast<size_t>(dp + dq + 2);
        std::vector<Vec> kernel = integer_kernel(build_rows(dp, dq, upto), u);
        if (kernel.empty()) return kernel;
        lll_reduce(kernel);
        std::vector<Vec> candidates = kernel;
        for (size_t a = 0; a < kernel.size() && a < 4; ++a)
            for (size_t b = a + 1; b < kernel.size() && b < 4; ++b) {
                Vec sum(u), diff(u);
                for (size_t t = 0; t < u; ++t) {
                    sum[t] = kernel[a][t] + kernel[b][t];
                    diff[t] = kernel[a][t] - kernel[b][t];
                }
                candidates.push_back(std::move(sum));
                candidates.push_back(std::move(diff));
            }
        return candidates;
    };

    auto pick_best = [&](const std::vector<Vec>& candidates, long dp, long dq,
                         bool require_split, CandidateFit& best) {
        bool have = false;
        for (const auto& cand : candidates) {
            Vec q(cand.begin(), cand.begin() + dq + 1);
            Vec p(cand.begin() + dq + 1, cand.end());
            if (!canonicalize(p, q)) continue;
            if (!validate(p, q)) continue;
            if (require_split) {
                std::vector<BigRat> pr, qr;
                if (!rational_roots(p, pr) || !rational_roots(q, qr)) continue;
            }
            BigInt h = std::max(vec_height(p), vec_height(q));
            if (!have || h < best.height) {
                best = CandidateFit{p, q, h};
                have = true;
            }
        }
        return have;
    };

    for (const auto& deg : order) {
        // First pass: solve on the leading points, cross-validate on the
        // held-out tail (validate() spans every point).
        CandidateFit best;
        bool have = pick_best(candidate_vectors(deg.dp, deg.dq, train), deg.dp, deg.dq,
                              false, best);

        if (!have) {
            // Underdetermined degrees hide the true fit behind short spurious
            // kernel vectors (low-degree fits times multiplier polynomials).
            // Interpolate on every point instead, and only trust candidates
            // with the hypergeometric shape: both polynomials must split into
            // rational linear factors. Junk interpolants essentially never do.
            have = pick_best(candidate_vectors(deg.dp, deg.dq, points), deg.dp, deg.dq,
                             true, best);
            if (!have) continue;
        }

        ProductFormula formula = build_formula(seq[0], r[0], best.p, best.q);
        bool reproduces = true;
        for (size_t t = 0; t < m; ++t) {
            if (formula.eval_rational(static_cast<long>(t) + 1, {}) != seq[t]) {
                reproduces = false;
                break;
            }
        }
        if (!reproduces) continue;
        GuessResult res;
        res.found = true;
        res.formula = std::move(formula);
        res.ratio_num = best.p;
        res.ratio_den = best.q;
        return res;
    }
    return GuessResult{};
}

RoundnessReport roundness(const std::vector<BigInt>& seq, long prime_bound) {
    if (prime_bound < 2) throw domain_error("roundness: prime bound must be >= 2");
    RoundnessReport report;
    report.prime_bound = prime_bound;
    long sieve_limit = std::min(std::max(prime_bound, 1000L), 1000000L);
    std::vector<bool> composite(static_cast<size_t>(sieve_limit) + 1, false);
    std::vector<long> primes;
    for (long p = 2; p <= sieve_limit; ++p) {
        if (composite[static_cast<size_t>(p)]) continue;
        primes.push_back(p);
        for (long q = p * p; q <= sieve_limit; q += p) composite[static_cast<size_t>(q)] = true;
    }
    for (const auto& raw : seq) {
        RoundnessRow row;
        row.value = raw;
        BigInt v = abs(raw);
        if (v <= 1) {
            row.largest_factor = 1;
            row.round = true;
            report.rows.push_back(row);
            continue;
        }
        BigInt largest = 1;
        for (long p : primes) {
            if (v == 1) break;
            while (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p))) {
                mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p));
                if (p > largest) largest = p;
            }
        }
        if (v == 1) {
            row.largest_factor = largest;
            row.exact = true;
            row.round = largest <= prime_bound;
        } else {
            row.largest_factor = v;   // every prime factor of v exceeds the sieve
            row.exact = mpz_probab_prime_p(v.get_mpz_t(), 30) != 0;
            row.round = false;
        }
        if (!row.round) report.round = false;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace detlab
