#pragma once

// Batch verification over the registry: enumerate each identity's parameter
// grid, compare the determinant engines against the closed forms (or run the
// constant-term / integral checks), and render a deterministic,
// machine-readable report (docs/report-format.md).

#include "core/closedforms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace detlab {

struct VerificationRow {
    std::string id;
    std::vector<std::pair<std::string, long>> point;   // n first, then params
    std::string lhs, rhs;
    bool match = false;
    std::string engine;
    long fallbacks = 0;
    double ms = 0.0;
    bool calibration = false;

    std::string point_text() const;                    // "n=3;a=0;b=1"
    std::string render(bool with_timings) const;
};

struct VerifySummary {
    std::vector<VerificationRow> rows;
    std::vector<std::string> findings;   // calibration findings, '#'-prefixed
    long mismatches = 0;                 // non-calibration mismatches
    long calibration_mismatches = 0;
    long total = 0;

    std::string render(bool with_timings = false) const;
};

struct GridOverride {
    std::optional<long> n_lo, n_hi;
    std::vector<ParamDomain> domains;    // replace the stored domain per name
};

using OverrideMap = std::map<std::string, GridOverride>;

// Config records share the catalog field grammar: "id|n<=4|r=1..2 s=1..2".
OverrideMap parse_overrides(const std::string& text);

// jobs <= 0: use DETLAB_JOBS or the hardware concurrency.
VerifySummary verify_identity(const Registry& reg, const std::string& id,
                              const GridOverride* ov = nullptr, int jobs = 0);
VerifySummary verify_all(const Registry& reg, const OverrideMap& overrides = {},
                         int jobs = 0);

// Single-point check used by both verify paths and the C API.
VerificationRow verify_point(const Registry& reg, const IdentitySpec& spec, long n,
                             const ParamMap& params);

} // namespace detlab
