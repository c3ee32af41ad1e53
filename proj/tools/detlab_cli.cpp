// detlab command-line tool. Talks to the library exclusively through the
// public C API.

#include "detlab/detlab.h"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

struct RegistryHandle {
    detlab_registry* reg = nullptr;
    ~RegistryHandle() { detlab_registry_close(reg); }
};

std::string take(char* s) {
    std::string out = s ? s : "";
    detlab_string_free(s);
    return out;
}

int die(detlab_status st) {
    std::cerr << "error: " << detlab_last_error() << " (status " << st << ")\n";
    return 2;
}

detlab_status open_registry(const std::string& catalog, RegistryHandle& h) {
    if (catalog.empty()) return detlab_registry_open_default(&h.reg);
    return detlab_registry_open_file(catalog.c_str(), &h.reg);
}

// "a=1..2,b=0" -> "a=1..2 b=0" (the override record's parameter field)
std::string override_record(const std::string& id, long n_exact, long n_max,
                            const std::string& params) {
    std::ostringstream os;
    os << id << '|';
    if (n_exact > 0)
        os << "n=" << n_exact;
    else if (n_max > 0)
        os << "n<=" << n_max;
    else
        os << '-';
    os << '|';
    if (params.empty()) {
        os << '-';
    } else {
        std::string spaced = params;
        for (auto& c : spaced)
            if (c == ',') c = ' ';
        os << spaced;
    }
    return os.str();
}

std::string read_all(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool write_out(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return true;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return false;
    }
    out << content;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"detlab: exact determinant laboratory"};
    app.require_subcommand(1);

    std::string catalog;
    app.add_option("--catalog", catalog, "registry catalog file (default: built-in)");

    // list
    auto* list_cmd = app.add_subcommand("list", "print the identity registry");

    // eval
    std::string eval_id, eval_params, eval_engine = "bareiss";
    long eval_n = 0;
    auto* eval_cmd = app.add_subcommand("eval", "build a family matrix and evaluate it");
    eval_cmd->add_option("id", eval_id, "identity id")->required();
    eval_cmd->add_option("--n", eval_n, "matrix size")->required();
    eval_cmd->add_option("--params", eval_params, "comma-separated name=value");
    eval_cmd->add_option("--engine", eval_engine, "bareiss|laplace|condensation");

    // rhs
    std::string rhs_id, rhs_params;
    long rhs_n = 0;
    auto* rhs_cmd = app.add_subcommand("rhs", "evaluate the closed form");
    rhs_cmd->add_option("id", rhs_id, "identity id")->required();
    rhs_cmd->add_option("--n", rhs_n, "matrix size")->required();
    rhs_cmd->add_option("--params", rhs_params, "comma-separated name=value");

    // verify
    std::string ver_id, ver_params, ver_out;
    long ver_n = 0, ver_nmax = 0;
    int ver_jobs = 0;
    bool ver_timings = false;
    auto* ver_cmd = app.add_subcommand("verify", "verify one identity over its grid");
    ver_cmd->add_option("id", ver_id, "identity id")->required();
    ver_cmd->add_option("--n", ver_n, "restrict to one size");
    ver_cmd->add_option("--nmax", ver_nmax, "cap the size range");
    ver_cmd->add_option("--params", ver_params,
                        "comma-separated name=value or name=lo..hi");
    ver_cmd->add_option("--jobs", ver_jobs, "parallelism (default DETLAB_JOBS/cores)");
    ver_cmd->add_option("--out", ver_out, "write the report to a file");
    ver_cmd->add_flag("--timings", ver_timings, "include wall times (not diffable)");

    // verify-all
    std::string all_config, all_out;
    int all_jobs = 0;
    bool all_timings = false;
    auto* all_cmd = app.add_subcommand("verify-all", "run the whole registry");
    all_cmd->add_option("--config", all_config, "grid override file");
    all_cmd->add_option("--jobs", all_jobs, "parallelism (default DETLAB_JOBS/cores)");
    all_cmd->add_option("--out", all_out, "write the report to a file");
    all_cmd->add_flag("--timings", all_timings, "include wall times (not diffable)");

    // ct dyson
    long ct_n = 0, ct_alpha = 1;
    auto* ct_cmd = app.add_subcommand("ct", "constant-term computations");
    ct_cmd->require_subcommand(1);
    auto* dyson_cmd = ct_cmd->add_subcommand("dyson", "ct of prod (1 - x_i/x_j)^alpha");
    dyson_cmd->add_option("--n", ct_n, "number of variables")->required();
    dyson_cmd->add_option("--alpha", ct_alpha, "exponent (default 1)");

    // integral
    long int_n = 0, int_alpha = 0, int_beta = 1;
    auto* int_cmd =
        app.add_subcommand("integral", "moment integral of X^alpha V^{2 beta}");
    int_cmd->add_option("--n", int_n, "number of variables")->required();
    int_cmd->add_option("--alpha", int_alpha, "monomial exponent (default 0)");
    int_cmd->add_option("--beta", int_beta, "Vandermonde power (default 1)");

    // guess
    std::string guess_file;
    auto* guess_cmd =
        app.add_subcommand("guess", "conjecture a product formula for a sequence");
    guess_cmd->add_option("file", guess_file, "one exact value per line (default stdin)");

    // bench
    std::string bench_id = "I01", bench_params = "a=0,b=0";
    long bench_nmax = 12;
    auto* bench_cmd = app.add_subcommand("bench", "timing table for the det engines");
    bench_cmd->add_option("--id", bench_id, "family to benchmark (default I01)");
    bench_cmd->add_option("--params", bench_params, "family parameters");
    bench_cmd->add_option("--nmax", bench_nmax, "largest size (default 12)");

    CLI11_PARSE(app, argc, argv);

    RegistryHandle reg;
    if (detlab_status st = open_registry(catalog, reg); st != DETLAB_OK) return die(st);

    if (list_cmd->parsed()) {
        size_t count = 0;
        detlab_registry_count(reg.reg, &count);
        char* ids = nullptr;
        if (detlab_status st = detlab_registry_ids(reg.reg, &ids); st != DETLAB_OK)
            return die(st);
        std::istringstream is(take(ids));
        std::string id;
        while (std::getline(is, id)) {
            char* info = nullptr;
            if (detlab_status st = detlab_identity_info(reg.reg, id.c_str(), &info);
                st != DETLAB_OK)
                return die(st);
            std::cout << take(info) << '\n';
        }
        std::cout << "# " << count << " identities\n";
        return 0;
    }

    if (eval_cmd->parsed()) {
        if (eval_engine == "condensation") {
            char* det = nullptr;
            long fallbacks = 0;
            if (detlab_status st = detlab_det_condensation(
                    reg.reg, eval_id.c_str(), eval_n, eval_params.c_str(), &det,
                    &fallbacks);
                st != DETLAB_OK)
                return die(st);
            std::cout << "det = " << take(det) << "  (condensation, fallbacks "
                      << fallbacks << ")\n";
            return 0;
        }
        detlab_matrix* m = nullptr;
        if (detlab_status st =
                detlab_build(reg.reg, eval_id.c_str(), eval_n, eval_params.c_str(), &m);
            st != DETLAB_OK)
            return die(st);
        char* rendered = nullptr;
        detlab_matrix_render(m, &rendered);
        std::cout << take(rendered);
        char* det = nullptr;
        if (detlab_status st = detlab_det(m, eval_engine.c_str(), &det);
            st != DETLAB_OK) {
            detlab_matrix_free(m);
            return die(st);
        }
        std::cout << "det = " << take(det) << '\n';
        detlab_matrix_free(m);
        return 0;
    }

    if (rhs_cmd->parsed()) {
        char* value = nullptr;
        if (detlab_status st =
                detlab_rhs(reg.reg, rhs_id.c_str(), rhs_n, rhs_params.c_str(), &value);
            st != DETLAB_OK)
            return die(st);
        std::cout << take(value) << '\n';
        return 0;
    }

    if (ver_cmd->parsed()) {
        std::string record;
        if (ver_n > 0 || ver_nmax > 0 || !ver_params.empty())
            record = override_record(ver_id, ver_n, ver_nmax, ver_params);
        char* report = nullptr;
        long mismatches = 0;
        if (detlab_status st = detlab_verify(reg.reg, ver_id.c_str(),
                                             record.empty() ? nullptr : record.c_str(),
                                             ver_jobs, ver_timings ? 1 : 0, &report,
                                             &mismatches);
            st != DETLAB_OK)
            return die(st);
        if (!write_out(ver_out, take(report))) return 2;
        if (!ver_out.empty())
            std::cout << (mismatches == 0 ? "ok" : "MISMATCHES") << ": report in "
                      << ver_out << '\n';
        return mismatches == 0 ? 0 : 1;
    }

    if (all_cmd->parsed()) {
        std::string config;
        if (!all_config.empty()) {
            std::ifstream in(all_config);
            if (!in) {
                std::cerr << "error: cannot read '" << all_config << "'\n";
                return 2;
            }
            config = read_all(in);
        }
        char* report = nullptr;
        long mismatches = 0;
        if (detlab_status st = detlab_verify_all(
                reg.reg, config.empty() ? nullptr : config.c_str(), all_jobs,
                all_timings ? 1 : 0, &report, &mismatches);
            st != DETLAB_OK)
            return die(st);
        if (!write_out(all_out, take(report))) return 2;
        if (!all_out.empty())
            std::cout << (mismatches == 0 ? "ok" : "MISMATCHES") << ": report in "
                      << all_out << '\n';
        return mismatches == 0 ? 0 : 1;
    }

    if (ct_cmd->parsed()) {
        char* value = nullptr;
        if (detlab_status st = detlab_dyson_ct(ct_n, ct_alpha, &value); st != DETLAB_OK)
            return die(st);
        std::cout << take(value) << '\n';
        return 0;
    }

    if (int_cmd->parsed()) {
        char* value = nullptr;
        if (detlab_status st = detlab_selberg(int_n, int_alpha, int_beta, &value);
            st != DETLAB_OK)
            return die(st);
        std::cout << take(value) << '\n';
        return 0;
    }

    if (guess_cmd->parsed()) {
        std::string text;
        if (guess_file.empty()) {
            text = read_all(std::cin);
        } else {
            std::ifstream in(guess_file);
            if (!in) {
                std::cerr << "error: cannot read '" << guess_file << "'\n";
                return 2;
            }
            text = read_all(in);
        }
        char* formula = nullptr;
        detlab_status st = detlab_guess(text.c_str(), &formula);
        if (st == DETLAB_ERR_NO_FIT) {
            std::cout << "no-fit\n";
            return 1;
        }
        if (st != DETLAB_OK) return die(st);
        std::cout << take(formula) << '\n';
        return 0;
    }

    if (bench_cmd->parsed()) {
        char* table = nullptr;
        if (detlab_status st = detlab_bench(reg.reg, bench_id.c_str(),
                                            bench_params.c_str(), bench_nmax, &table);
            st != DETLAB_OK)
            return die(st);
        std::cout << take(table);
        return 0;
    }

    return 0;
}
