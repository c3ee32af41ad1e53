#pragma once

// Independent exact determinant evaluators.
//
//   det_bareiss      fraction-free elimination, the workhorse; every
//                    intermediate division is checked exact
//   det_laplace     cofactor expansion, small-n oracle (n <= 8)
//   det_zinterp     evaluation/interpolation in one distinguished variable;
//                    each evaluation is itself a Bareiss run
//   det_condensation two-parameter recurrence for shiftable binomial families
//   triangular_factor_det   product evaluator behind the general
//                    factorization of sum_{k<=min(i,j)} a(i,k)b(j,k)f(k)
//   binomial_lu_check        the Vandermonde-Chu triangular factorization

#include "core/scalar.hpp"

#include <functional>
#include <string>
#include <vector>

namespace detlab {

BigInt det_bareiss(const IntMatrix& m);
BigRat det_bareiss(const RatMatrix& m);   // rows scaled integral, det rescaled
QPoly det_bareiss(const QPolyMatrix& m);
MultiLaurent det_bareiss(const MultiMatrix& m);
Scalar det_bareiss(const ExactMatrix& m);

BigInt det_laplace(const IntMatrix& m);
BigRat det_laplace(const RatMatrix& m);
QPoly det_laplace(const QPolyMatrix& m);
MultiLaurent det_laplace(const MultiMatrix& m);
Scalar det_laplace(const ExactMatrix& m);

// Exact determinant of a matrix polynomial in variable `var_index`
// (no negative exponents there): evaluates at z = 0..D, runs Bareiss on each
// specialization, and Lagrange-interpolates back. Exactness is unconditional;
// speed is the point for families whose z-degree is tiny next to their
// q-degree.
MultiLaurent det_zinterp(const MultiMatrix& m, size_t var_index);

// A family admitting the (a,b) parameter shift: bumping `a` by step_a
// reproduces the row shift i -> i+1, and `b` by step_b the column shift.
struct ShiftFamily {
    std::function<BigInt(long i, long j, long a, long b)> entry;
    long step_a = 1;
    long step_b = 1;
};

IntMatrix build_shift_matrix(const ShiftFamily& fam, long n, long a, long b);

struct CondensationResult {
    BigInt det;
    long fallback_count = 0;   // cells where a zero divisor forced Bareiss
};

// Z_n(a,b) by the condensation recurrence
//   Z_n = (Z_{n-1}(a,b) Z_{n-1}(a',b') - Z_{n-1}(a',b) Z_{n-1}(a,b')) / Z_{n-2}(a',b')
// with a' = a+step_a, b' = b+step_b; memoized over (n,a,b); Z_0 = 1 and
// Z_1 = the single entry.
CondensationResult det_condensation(const ShiftFamily& fam, long n, long a, long b);

struct DodgsonCell {
    long n, a, b;
    bool zero_residual;
};

struct DodgsonReport {
    std::vector<DodgsonCell> cells;
    long violations = 0;
};

// Asserts Z_n Z_{n-2}(a',b') = Z_{n-1}(a,b) Z_{n-1}(a',b') - Z_{n-1}(a',b) Z_{n-1}(a,b')
// with every Z computed by Bareiss, across the given grid.
DodgsonReport dodgson_residual(const ShiftFamily& fam, long n_max,
                               long a_max, long b_max, long a0 = 0, long b0 = 0);

// Returns prod_{i<n} a(i,i) b(i,i) f(i) and checks it against the Bareiss
// determinant of the reconstructed matrix; throws internal_error on mismatch.
template <class T>
T triangular_factor_det(const std::function<T(long, long)>& a_gen,
                        const std::function<T(long, long)>& b_gen,
                        const std::function<T(long)>& f, long n,
                        const T& one);

struct LuCheckReport {
    bool entries_match = false;   // C(i+j,i) = sum_k C(i,k) C(j,i-k) entrywise
    BigInt lower_det;             // det [C(i,k)]
    BigInt upper_det;             // det [C(k,j)]
    bool ok() const { return entries_match && lower_det == 1 && upper_det == 1; }
};

LuCheckReport binomial_lu_check(long n);

} // namespace detlab
