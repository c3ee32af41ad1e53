#pragma once

// Exact evaluators for the right-hand-side products, in the ring each
// identity declares. Inline "product:" formulas are interpreted from the
// catalog; the handful of genuinely special shapes (box product, the paired
// forms, the q-products) are built in and selected by rhs key.

#include "core/families.hpp"

#include <string>
#include <vector>

namespace detlab {

// Primary closed-form value. Integer-ring identities come back as BigInt with
// integrality asserted at the end, except calibration identities whose
// literal formulas are rational-valued.
Scalar rhs_value(const Registry& reg, const std::string& id, long n,
                 const ParamMap& params);

// All stored forms (primary first). Most identities have exactly one.
std::vector<Scalar> rhs_all_forms(const Registry& reg, const std::string& id, long n,
                                  const ParamMap& params);

struct CrossCheckReport {
    std::string id;
    long n_max = 0;
    bool all_match = true;
    std::vector<std::string> lines;   // one per n
};

// Pairwise-compares every stored form over n = 1..n_max; requires >= 2 forms.
CrossCheckReport rhs_cross_check(const Registry& reg, const std::string& id, long n_max);

// MacMahon's box product, asserted integral.
BigInt box_product(long a, long b, long c);

// Calibration probe for the printed Mills-Robbins-Rumsey product: evaluates
// the literal formula under the stored Pochhammer conventions against the
// Bareiss determinant and reports the verdict. Never throws on the
// small-index Pochhammer edge cases.
struct MrrProbeRow {
    long n = 0, mu = 0;
    BigRat det;
    BigRat formula;
    BigRat ratio;        // det / formula
};

struct MrrProbeReport {
    enum class Verdict { LiteralMatch, ConstantCorrection, NoConstantCorrection };
    Verdict verdict = Verdict::LiteralMatch;
    BigRat correction;   // meaningful for ConstantCorrection
    std::vector<MrrProbeRow> rows;
    std::string summary() const;
};

MrrProbeReport mrr_calibration_probe(const Registry& reg, long n_max, long mu_max);

} // namespace detlab
