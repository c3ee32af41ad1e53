#pragma once

// Linear forms and product formulas.
//
// LinForm is the shared coefficient language for matrix entry rules and
// closed-form products: a rational-coefficient linear combination of the
// indices i, j, k, the declared integer parameters, and index*parameter
// products (needed for exponents like i*(y-x)).
//
// ProductFormula is the closed-form shape every right-hand side and every
// guessed formula reduces to: prefactors base^rule times a product over the
// running index of factorial / binomial / Pochhammer / linear factors.

#include "core/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace detlab {

using ParamMap = std::map<std::string, long>;

struct LinForm {
    BigRat c0;                                            // constant term
    BigRat ci, cj, ck;                                    // index coefficients
    std::map<std::string, BigRat> cparam;                 // p -> coeff
    std::map<std::string, BigRat> cparam_i;               // p*i -> coeff
    std::map<std::string, BigRat> cparam_j;               // p*j -> coeff

    BigRat eval(long i, long j, long k, const ParamMap& params) const;
    // Same, but the value must be an integer.
    long eval_int(long i, long j, long k, const ParamMap& params) const;

    bool is_zero() const;
    std::string to_string() const;                        // canonical
    static LinForm parse(const std::string& text);

    bool operator==(const LinForm&) const = default;
};

struct Prefactor {
    enum class Base { Number, Param, Var };
    Base base = Base::Number;
    BigRat number;                                        // Base::Number
    std::string name;                                     // Base::Param / Base::Var

    enum class Exp { Const, N, NM1, NegN, BinomN2, BinomNM12, BinomN3 };
    Exp exp = Exp::Const;
    long exp_const = 1;                                   // Exp::Const only

    long exponent_value(long n) const;
    bool operator==(const Prefactor&) const = default;
};

struct PFactor {
    enum class Kind { Fact, Binom, Poch, Lin, PolyProd };
    Kind kind = Kind::Fact;
    LinForm arg1;                                         // fact/lin, binom top, poch base
    LinForm arg2;                                         // binom bottom, poch count
    std::vector<BigInt> pnum, pden;                       // polyprod coefficient lists
    long exponent = 1;

    bool operator==(const PFactor&) const = default;
};

struct ProductFormula {
    std::vector<Prefactor> prefactors;
    std::vector<PFactor> factors;
    bool upper_nm1 = false;       // product index runs 0..n-2 instead of 0..n-1

    // Fully numeric evaluation (rejects Var prefactors).
    BigRat eval_rational(long n, const ParamMap& params) const;

    // Evaluation in a multivariate ring; Var prefactors become monomials.
    MultiLaurent eval_multi(const std::vector<std::string>& vars, long n,
                            const ParamMap& params) const;

    std::string to_string() const;
    static ProductFormula parse(const std::string& text);

    bool operator==(const ProductFormula&) const = default;
};

// Value of an integer-coefficient polynomial given low-to-high coefficients.
BigRat poly_value(const std::vector<BigInt>& coeffs, const BigRat& at);

} // namespace detlab
