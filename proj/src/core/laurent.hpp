#pragma once

// Sparse multivariate Laurent polynomials over BigRat. Terms are exponent
// vectors (negative entries allowed) mapped to nonzero coefficients; the
// variable-name table fixes arity and printing. This is the ring for the
// constant-term work and for the auxiliary variables z, e1, e2.

#include "core/arith.hpp"

#include <map>
#include <string>
#include <vector>

namespace detlab {

using ExpVec = std::vector<int>;

// Graded lexicographic order; used as the canonical term order for storage,
// printing and leading-term division.
struct GradedLex {
    bool operator()(const ExpVec& a, const ExpVec& b) const;
};

class MultiLaurent {
public:
    MultiLaurent() = default;
    explicit MultiLaurent(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MultiLaurent constant(std::vector<std::string> vars, const BigRat& c);
    static MultiLaurent monomial(std::vector<std::string> vars, const BigRat& c,
                                 ExpVec exponents);
    // The i-th variable as a polynomial.
    static MultiLaurent var(std::vector<std::string> vars, size_t index);

    const std::vector<std::string>& variables() const { return vars_; }
    size_t arity() const { return vars_.size(); }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<ExpVec, BigRat, GradedLex>& terms() const { return terms_; }

    BigRat coefficient(const ExpVec& exponents) const;

    MultiLaurent operator-() const;
    MultiLaurent& operator+=(const MultiLaurent& o);
    MultiLaurent& operator-=(const MultiLaurent& o);
    friend MultiLaurent operator+(MultiLaurent a, const MultiLaurent& b) { a += b; return a; }
    friend MultiLaurent operator-(MultiLaurent a, const MultiLaurent& b) { a -= b; return a; }
    friend MultiLaurent operator*(const MultiLaurent& a, const MultiLaurent& b);

    MultiLaurent pow(long e) const;             // e >= 0

    bool operator==(const MultiLaurent& o) const { return terms_ == o.terms_; }

    // Exact quotient via leading-term elimination in graded lex order;
    // throws internal_error when the division is not exact.
    static MultiLaurent exact_div(const MultiLaurent& a, const MultiLaurent& b);

    // Constant-term operator in one variable: keeps the terms with exponent 0
    // there and removes the variable from the arity.
    MultiLaurent ct(size_t var_index) const;

    // Coefficient of the all-zero exponent vector.
    BigRat ct_all() const;

    // Substitute values for all variables.
    BigRat evaluate(const std::vector<BigRat>& values) const;

    // Substitute a value for one variable, keeping the rest symbolic.
    MultiLaurent substitute(size_t var_index, const BigRat& value) const;

    long min_exponent(size_t var_index) const;  // 0 for the zero polynomial
    long max_exponent(size_t var_index) const;
    long total_degree() const;                  // max over terms of sum of exponents

    std::string to_string() const;              // canonical, space-free
    static MultiLaurent parse(std::vector<std::string> vars, const std::string& text);

private:
    void add_term(const ExpVec& e, const BigRat& c);
    void check_compatible(const MultiLaurent& o) const;

    std::vector<std::string> vars_;
    std::map<ExpVec, BigRat, GradedLex> terms_;
};

// prod_{j>i} (x_j - x_i) over variables x_0..x_{n-1}, fully expanded.
MultiLaurent vandermonde(long n);

} // namespace detlab
