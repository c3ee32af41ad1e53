#pragma once

// The "automated guess" step: from an exact sequence indexed n = 1..m,
// conjecture a closed product form by fitting the second ratio
// s(n) = seq(n+2) seq(n) / seq(n+1)^2 as a ratio of integer polynomials of
// degree <= 4, then telescoping back. Fits are exact; candidate selection
// among same-degree fits minimizes coefficient height via lattice reduction;
// held-out tail points cross-validate every fit. Output is conjectural by
// construction and marked so.

#include "core/formula.hpp"

#include <string>
#include <vector>

namespace detlab {

struct GuessResult {
    bool found = false;               // false = NoFit
    ProductFormula formula;           // reproduces the input sequence exactly
    std::vector<BigInt> ratio_num;    // canonical fitted pair, lowest terms,
    std::vector<BigInt> ratio_den;    // positive leading denominator coefficient
    bool conjectured = true;          // never a proof
    std::string describe() const;
};

// seq[t] is the value at n = t+1; requires m >= 6 and all terms nonzero.
GuessResult guess_product_form(const std::vector<BigRat>& seq);

struct RoundnessRow {
    BigInt value;
    BigInt largest_factor;   // largest prime factor when exact, else the
                             // unfactored cofactor (a lower bound witness)
    bool exact = true;
    bool round = false;      // all prime factors <= the bound
};

struct RoundnessReport {
    long prime_bound = 0;
    std::vector<RoundnessRow> rows;
    bool round = true;
};

RoundnessReport roundness(const std::vector<BigInt>& seq, long prime_bound);

} // namespace detlab
