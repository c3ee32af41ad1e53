#include "detlab/detlab.h"

#include "core/closedforms.hpp"
#include "core/ctintegral.hpp"
#include "core/guess.hpp"
#include "core/verify.hpp"

#include <chrono>
#include <cstring>
#include <sstream>

using namespace detlab;

struct detlab_registry {
    Registry reg;
};

struct detlab_matrix {
    ExactMatrix m;
};

namespace {

thread_local std::string g_last_error;

char* alloc_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

detlab_status fail(detlab_status st, const std::string& msg) {
    g_last_error = msg;
    return st;
}

// Maps core exceptions onto status codes. `parse_context` upgrades
// domain_error to PARSE for calls whose input is raw text.
template <class Fn>
detlab_status wrap(bool parse_context, Fn&& fn) {
    try {
        return fn();
    } catch (const internal_error& e) {
        return fail(DETLAB_ERR_INTERNAL, e.what());
    } catch (const domain_error& e) {
        std::string what = e.what();
        if (what.rfind("unknown identity", 0) == 0)
            return fail(DETLAB_ERR_UNKNOWN_IDENTITY, what);
        return fail(parse_context ? DETLAB_ERR_PARSE : DETLAB_ERR_DOMAIN, what);
    } catch (const std::exception& e) {
        return fail(DETLAB_ERR_INTERNAL, e.what());
    }
}

ParamMap parse_params(const char* text) {
    ParamMap params;
    if (!text || !*text) return params;
    std::string s(text);
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        size_t eq = tok.find('=');
        if (eq == std::string::npos)
            throw domain_error("parameters: expected name=value in '" + tok + "'");
        std::string name = tok.substr(0, eq);
        while (!name.empty() && name.front() == ' ') name.erase(name.begin());
        while (!name.empty() && name.back() == ' ') name.pop_back();
        params[name] = std::stol(tok.substr(eq + 1));
    }
    return params;
}

std::vector<BigRat> parse_sequence(const char* text) {
    if (!text) throw domain_error("sequence: null input");
    std::vector<BigRat> seq;
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t a = line.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t");
        seq.push_back(parse_bigrat(line.substr(a, b - a + 1)));
    }
    return seq;
}

} // namespace

extern "C" {

const char* detlab_version(void) { return "1.0.0"; }

const char* detlab_last_error(void) { return g_last_error.c_str(); }

void detlab_string_free(char* s) { delete[] s; }

detlab_status detlab_registry_open_default(detlab_registry** out) {
    if (!out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null out pointer");
    return wrap(true, [&] {
        auto* handle = new detlab_registry{Registry::load_default()};
        *out = handle;
        return DETLAB_OK;
    });
}

detlab_status detlab_registry_open_file(const char* catalog_path,
                                        detlab_registry** out) {
    if (!out || !catalog_path)
        return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(true, [&] {
        auto* handle = new detlab_registry{Registry::from_file(catalog_path)};
        *out = handle;
        return DETLAB_OK;
    });
}

void detlab_registry_close(detlab_registry* reg) { delete reg; }

detlab_status detlab_registry_count(const detlab_registry* reg, size_t* out) {
    if (!reg || !out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    *out = reg->reg.all().size();
    return DETLAB_OK;
}

detlab_status detlab_registry_ids(const detlab_registry* reg, char** out) {
    if (!reg || !out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    std::ostringstream os;
    for (const auto& spec : reg->reg.all()) os << spec.id << '\n';
    *out = alloc_string(os.str());
    return DETLAB_OK;
}

detlab_status detlab_identity_info(const detlab_registry* reg, const char* id,
                                   char** out) {
    if (!reg || !id || !out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(false, [&] {
        *out = alloc_string(reg->reg.find(id).serialize());
        return DETLAB_OK;
    });
}

detlab_status detlab_build(const detlab_registry* reg, const char* id, long n,
                           const char* params, detlab_matrix** out) {
    if (!reg || !id || !out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(false, [&] {
        auto* handle = new detlab_matrix{reg->reg.build(id, n, parse_params(params))};
        *out = handle;
        return DETLAB_OK;
    });
}

void detlab_matrix_free(detlab_matrix* m) { delete m; }

detlab_status detlab_matrix_size(const detlab_matrix* m, size_t* out) {
    if (!m || !out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    *out = m->m.size();
    return DETLAB_OK;
}

detlab_status detlab_matrix_entry(const detlab_matrix* m, size_t i, size_t j,
                                  char** out) {
    if (!m || !out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    if (i >= m->m.size() || j >= m->m.size())
        return fail(DETLAB_ERR_INVALID_ARGUMENT, "matrix index out of range");
    *out = alloc_string(m->m.entry(i, j).to_string());
    return DETLAB_OK;
}

detlab_status detlab_matrix_render(const detlab_matrix* m, char** out) {
    if (!m || !out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    *out = alloc_string(m->m.render());
    return DETLAB_OK;
}

detlab_status detlab_det(const detlab_matrix* m, const char* engine, char** out) {
    if (!m || !out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    std::string eng = engine ? engine : "bareiss";
    return wrap(false, [&] {
        Scalar det;
        if (eng == "bareiss")
            det = det_bareiss(m->m);
        else if (eng == "laplace")
            det = det_laplace(m->m);
        else
            throw domain_error("unknown engine '" + eng + "'");
        *out = alloc_string(det.to_string());
        return DETLAB_OK;
    });
}

detlab_status detlab_det_condensation(const detlab_registry* reg, const char* id,
                                      long n, const char* params, char** det_out,
                                      long* fallbacks_out) {
    if (!reg || !id || !det_out)
        return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(false, [&] {
        ParamMap all = parse_params(params);
        const IdentitySpec& spec = reg->reg.find(id);
        if (spec.condense.size() != 2)
            throw domain_error(std::string(id) + ": family does not admit the (a,b) shift");
        long a = 0, b = 0;
        ParamMap fixed;
        for (const auto& [name, value] : all) {
            if (name == spec.condense[0]) a = value;
            else if (name == spec.condense[1]) b = value;
            else fixed[name] = value;
        }
        ShiftFamily fam = reg->reg.shift_family(id, fixed);
        CondensationResult r = det_condensation(fam, n, a, b);
        *det_out = alloc_string(r.det.get_str());
        if (fallbacks_out) *fallbacks_out = r.fallback_count;
        return DETLAB_OK;
    });
}

detlab_status detlab_dodgson_residual(const detlab_registry* reg, const char* id,
                                      const char* params, long n_max, long shift_max,
                                      long* cells_out, long* violations_out) {
    if (!reg || !id || !violations_out)
        return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(false, [&] {
        ShiftFamily fam = reg->reg.shift_family(id, parse_params(params));
        DodgsonReport r = dodgson_residual(fam, n_max, shift_max, shift_max);
        if (cells_out) *cells_out = static_cast<long>(r.cells.size());
        *violations_out = r.violations;
        return DETLAB_OK;
    });
}

detlab_status detlab_rhs(const detlab_registry* reg, const char* id, long n,
                         const char* params, char** out) {
    if (!reg || !id || !out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(false, [&] {
        *out = alloc_string(rhs_value(reg->reg, id, n, parse_params(params)).to_string());
        return DETLAB_OK;
    });
}

detlab_status detlab_rhs_cross_check(const detlab_registry* reg, const char* id,
                                     long n_max, char** report_out,
                                     int* all_match_out) {
    if (!reg || !id || !report_out || !all_match_out)
        return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(false, [&] {
        CrossCheckReport r = rhs_cross_check(reg->reg, id, n_max);
        std::ostringstream os;
        for (const auto& line : r.lines) os << line << '\n';
        *report_out = alloc_string(os.str());
        *all_match_out = r.all_match ? 1 : 0;
        return DETLAB_OK;
    });
}

detlab_status detlab_box_product(long a, long b, long c, char** out) {
    if (!out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(false, [&] {
        *out = alloc_string(box_product(a, b, c).get_str());
        return DETLAB_OK;
    });
}

detlab_status detlab_dyson_ct(long n, long alpha, char** out) {
    if (!out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(false, [&] {
        *out = alloc_string(dyson_ct(n, alpha).get_str());
        return DETLAB_OK;
    });
}

detlab_status detlab_v2_coefficient(long n, char** out) {
    if (!out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(false, [&] {
        *out = alloc_string(v2_coefficient(n).get_str());
        return DETLAB_OK;
    });
}

detlab_status detlab_ct_representation(long i, long j, long weight, int* ok_out,
                                       char** value_out) {
    if (!ok_out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(false, [&] {
        CtRepReport r = ct_entry_representation_check(i, j, weight);
        *ok_out = r.ok ? 1 : 0;
        if (value_out) *value_out = alloc_string(r.ct_value.get_str());
        return DETLAB_OK;
    });
}

detlab_status detlab_selberg(long n, long alpha, long beta, char** out) {
    if (!out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(false, [&] {
        *out = alloc_string(selberg_like(n, alpha, beta).get_str());
        return DETLAB_OK;
    });
}

detlab_status detlab_binomial_lu_check(long n, int* ok_out) {
    if (!ok_out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(false, [&] {
        *ok_out = binomial_lu_check(n).ok() ? 1 : 0;
        return DETLAB_OK;
    });
}

detlab_status detlab_verify(const detlab_registry* reg, const char* id,
                            const char* grid_override, int jobs, int with_timings,
                            char** report_out, long* mismatches_out) {
    if (!reg || !id || !report_out)
        return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(false, [&] {
        GridOverride ov;
        const GridOverride* ovp = nullptr;
        if (grid_override && *grid_override) {
            OverrideMap map = parse_overrides(grid_override);
            auto it = map.find(id);
            if (it == map.end())
                throw domain_error("override record does not name identity '" +
                                   std::string(id) + "'");
            ov = it->second;
            ovp = &ov;
        }
        VerifySummary s = verify_identity(reg->reg, id, ovp, jobs);
        *report_out = alloc_string(s.render(with_timings != 0));
        if (mismatches_out) *mismatches_out = s.mismatches;
        return DETLAB_OK;
    });
}

detlab_status detlab_verify_all(const detlab_registry* reg, const char* config,
                                int jobs, int with_timings, char** report_out,
                                long* mismatches_out) {
    if (!reg || !report_out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(false, [&] {
        OverrideMap map;
        if (config && *config) map = parse_overrides(config);
        VerifySummary s = verify_all(reg->reg, map, jobs);
        *report_out = alloc_string(s.render(with_timings != 0));
        if (mismatches_out) *mismatches_out = s.mismatches;
        return DETLAB_OK;
    });
}

detlab_status detlab_guess(const char* seq_text, char** out) {
    if (!seq_text || !out) return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(true, [&] {
        GuessResult g = guess_product_form(parse_sequence(seq_text));
        if (!g.found)
            return fail(DETLAB_ERR_NO_FIT, "no product formula fits the sequence");
        *out = alloc_string(g.describe());
        return DETLAB_OK;
    });
}

detlab_status detlab_roundness(const char* seq_text, long prime_bound,
                               char** report_out, int* round_out) {
    if (!seq_text || !report_out || !round_out)
        return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(true, [&] {
        std::vector<BigInt> seq;
        for (const auto& v : parse_sequence(seq_text)) {
            if (v.get_den() != 1)
                throw domain_error("roundness: integer sequence required");
            seq.push_back(v.get_num());
        }
        RoundnessReport r = roundness(seq, prime_bound);
        std::ostringstream os;
        for (const auto& row : r.rows) {
            os << "value=" << row.value.get_str()
               << " largest=" << row.largest_factor.get_str()
               << (row.exact ? "" : "?") << " round=" << (row.round ? "yes" : "no")
               << '\n';
        }
        *report_out = alloc_string(os.str());
        *round_out = r.round ? 1 : 0;
        return DETLAB_OK;
    });
}

detlab_status detlab_bench(const detlab_registry* reg, const char* id,
                           const char* params, long n_max, char** table_out) {
    if (!reg || !id || !table_out)
        return fail(DETLAB_ERR_INVALID_ARGUMENT, "null argument");
    return wrap(false, [&] {
        ParamMap p = parse_params(params);
        const IdentitySpec& spec = reg->reg.find(id);
        bool shiftable = spec.condense.size() == 2;
        std::ostringstream os;
        os << "# family " << id << ", milliseconds per engine\n";
        for (long n = 1; n <= n_max; ++n) {
            ExactMatrix m = reg->reg.build(id, n, p);
            auto t0 = std::chrono::steady_clock::now();
            Scalar det = det_bareiss(m);
            auto t1 = std::chrono::steady_clock::now();
            os << "n=" << n << " bareiss="
               << std::chrono::duration<double, std::milli>(t1 - t0).count();
            if (m.size() <= 8) {
                auto t2 = std::chrono::steady_clock::now();
                Scalar check = det_laplace(m);
                auto t3 = std::chrono::steady_clock::now();
                if (!(check == det)) throw internal_error("bench: engine disagreement");
                os << " laplace="
                   << std::chrono::duration<double, std::milli>(t3 - t2).count();
            }
            if (shiftable) {
                ParamMap fixed = p;
                long a = 0, b = 0;
                if (auto it = fixed.find(spec.condense[0]); it != fixed.end()) {
                    a = it->second;
                    fixed.erase(it);
                }
                if (auto it = fixed.find(spec.condense[1]); it != fixed.end()) {
                    b = it->second;
                    fixed.erase(it);
                }
                ShiftFamily fam = reg->reg.shift_family(id, fixed);
                auto t4 = std::chrono::steady_clock::now();
                CondensationResult c = det_condensation(fam, n, a, b);
                auto t5 = std::chrono::steady_clock::now();
                if (!(Scalar(c.det) == det))
                    throw internal_error("bench: condensation disagreement");
                os << " condensation="
                   << std::chrono::duration<double, std::milli>(t5 - t4).count()
                   << " fallbacks=" << c.fallback_count;
            }
            os << '\n';
        }
        *table_out = alloc_string(os.str());
        return DETLAB_OK;
    });
}

} // extern "C"
