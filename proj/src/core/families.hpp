#pragma once

// The identity registry: one declarative record per identity, loaded from the
// line-oriented catalog (see docs/catalog-format.md), plus the builders that
// materialize the n x n matrix of a family at a parameter point in its ring.

#include "core/engines.hpp"
#include "core/formula.hpp"
#include "core/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace detlab {

// Entry rules come from a closed vocabulary:
//   binom(L,L)  qbinom(L,L)  fact(L)  INT^E  var^E  prod1pq(E)
// either as a direct product or under sum(k=0..min(L,L); ...).
struct EntryAtom {
    enum class Kind { Binom, QBinom, Fact, IntPow, VarPow, Prod1pq };
    Kind kind = Kind::Binom;
    LinForm a1;              // binom/qbinom top, fact argument
    LinForm a2;              // binom/qbinom bottom, or the exponent for pow kinds
    BigInt ibase;            // IntPow base
    std::string var;         // VarPow variable name

    bool operator==(const EntryAtom&) const = default;
};

struct EntryRule {
    bool is_sum = false;
    LinForm lim1, lim2;      // k runs 0..min(lim1, lim2) when is_sum
    std::vector<EntryAtom> atoms;

    std::string to_string() const;
    static EntryRule parse(const std::string& text);

    bool operator==(const EntryRule&) const = default;
};

enum class CheckKind { Determinant, CtDyson, CtVandermondeCoeff, MomentIntegral };

struct ParamDomain {
    std::string name;
    long lo = 0, hi = 0;

    bool operator==(const ParamDomain&) const = default;
};

struct IdentitySpec {
    std::string id;
    Ring ring = Ring::Integer;
    std::vector<std::string> ring_vars;   // multivariate variable table
    CheckKind kind = CheckKind::Determinant;
    EntryRule entry;                      // Determinant kind only
    long alpha = 0, beta = 0;             // CtDyson / MomentIntegral kinds
    long n_max = 8;
    std::string size_param;               // parameter aliased to the matrix size
    std::vector<ParamDomain> params;
    std::string rhs_key;                  // "product:<formula>" or a builtin key
    bool calibration = false;
    std::vector<std::string> condense;    // the two shiftable parameter names
    std::string cite;

    bool has_param(const std::string& name) const;
    const ParamDomain& param(const std::string& name) const;

    std::string serialize() const;        // one catalog line
    static IdentitySpec parse_line(const std::string& line);
};

class Registry {
public:
    static const std::string& default_catalog_text();
    static Registry load_default();
    static Registry from_file(const std::string& path);
    static Registry from_text(const std::string& text);

    std::string serialize() const;

    const std::vector<IdentitySpec>& all() const { return ids_; }
    bool contains(const std::string& id) const;
    const IdentitySpec& find(const std::string& id) const;

    // Materializes the family matrix; validates the parameter point.
    ExactMatrix build(const std::string& id, long n, const ParamMap& params) const;

    // Condensation view of a shiftable family with the non-shift parameters
    // bound; (a,b) are the values of the two declared shift parameters.
    ShiftFamily shift_family(const std::string& id, const ParamMap& fixed) const;

private:
    std::vector<IdentitySpec> ids_;
};

// Entry evaluators (exposed for tests).
BigInt entry_value_int(const EntryRule& rule, long i, long j, const ParamMap& params);
QPoly entry_value_qpoly(const EntryRule& rule, long i, long j, const ParamMap& params);
MultiLaurent entry_value_multi(const EntryRule& rule, const std::vector<std::string>& vars,
                               long i, long j, const ParamMap& params);

// Delannoy number via sum_k C(i,k) C(j,k) 2^k.
BigInt delannoy(long i, long j);

} // namespace detlab
