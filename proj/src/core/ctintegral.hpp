#pragma once

// Constant-term derivations and moment integrals: the Dyson special case,
// the Vandermonde-squared coefficient, the binomial-sum constant-term
// representations, and the Euler-moment functional sending prod x_i^{m_i}
// to prod (m_i + alpha)!.

#include "core/laurent.hpp"

namespace detlab {

// ct_all of prod_{j != i} (1 - x_i/x_j)^alpha by full expansion with
// reachability pruning. Guards: alpha=1 needs n <= 5, alpha=2 needs n <= 4,
// alpha >= 3 needs n <= 3.
BigInt dyson_ct(long n, long alpha);

// Coefficient of X_n^{n-1} (all exponents n-1) in V(x_n)^2.
BigInt v2_coefficient(long n);

struct V2Report {
    BigInt coefficient;
    BigInt expected;      // (-1)^binom(n,2) n!
    bool ok = false;
};

V2Report v2_coefficient_check(long n);   // n <= 6

struct CtRepReport {
    BigInt ct_value;
    BigInt sum_value;
    bool ok = false;
};

// Checks the stated Laurent representation of the binomial sums:
//   weight 1:  Ct x^i (1+1/x)^{i+j}           = C(i+j, i)
//   weight 2:  Ct (1+2x)^{2i} (1+1/x)^{2j}    = sum_k C(2i,k) C(2j,k) 2^k
//   weight 4:  Ct (1+2x)^{2i} (1+2/x)^{2j}    = sum_k C(2i,k) C(2j,k) 4^k
CtRepReport ct_entry_representation_check(long i, long j, long weight);

// The linear functional from Euler's formula; p must have no negative
// exponents.
BigRat moment_integral(const MultiLaurent& p, long alpha);

// moment_integral(V^{2 beta}, alpha). For (alpha,beta) = (0,1) the value is
// checked against both superfactorial(n) superfactorial(n-1) and
// n! det[(i+j)!]. Guards: beta=1 needs n <= 5, beta=2 needs n <= 3.
BigRat selberg_like(long n, long alpha, long beta);

} // namespace detlab
