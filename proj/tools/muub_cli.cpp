// Command-line front end: search for, construct, and certify mutually
// unbiased unitary bases, with JSON collection documents and a CSV ratio
// table as the on-disk formats.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "muub/muub.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

bool usable_dim(int d) { return muub::is_prime(d) && d <= muub::kMaxOperatorDim; }

void add_tol_option(CLI::App* cmd, double& tol) {
    cmd->add_option("--tol", tol, "verification tolerance (also via MUUB_TOL)")
        ->check(CLI::Range(1e-15, 9.99e-4));
}

// MUUB_TOL overrides the default tolerance; an explicit --tol flag wins.
// A malformed value is a usage error, never a silent fallback.
bool apply_tol_env(CLI::App* active, double& tol) {
    const CLI::Option* opt = active->get_option_no_throw("--tol");
    if (opt == nullptr || opt->count() > 0) return true;
    const char* env = std::getenv("MUUB_TOL");
    if (env == nullptr) return true;
    try {
        size_t used = 0;
        const double value = std::stod(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
        tol = muub::Tolerance(value).eps;
        return true;
    } catch (const std::exception&) {
        std::fprintf(stderr, "error: invalid MUUB_TOL value '%s'\n", env);
        return false;
    }
}

void print_certificate(const muub::Certificate& cert) {
    std::printf("dim=%d bases=%d\n", cert.dim, cert.basis_count);
    std::printf("worst unitarity residual:     %.3e\n", cert.worst_unitarity_residual);
    std::printf("worst orthogonality residual: %.3e\n", cert.worst_orthogonality_residual);
    std::printf("worst unbiasedness residual:  %.3e\n", cert.worst_unbiasedness_residual);
    if (cert.constant_C > 0.0) std::printf("C=%g\n", cert.constant_C);
    std::printf("convention: %s\n", cert.convention.c_str());
    size_t shown = 0;
    for (const auto& f : cert.failures) {
        if (shown++ == 10) {
            std::printf("  ... %zu further failures\n", cert.failures.size() - 10);
            break;
        }
        std::printf("  FAIL %s: bases (%d, %d), elements (%d, %d), measured %.6e\n",
                    f.kind.c_str(), f.basis_a, f.basis_b, f.elem_i, f.elem_j, f.measured);
    }
    std::printf("verdict: %s\n", cert.pass ? "PASS" : "FAIL");
}

void print_mes_report(const muub::MesMubReport& report) {
    std::printf("state images: bases=%d expected overlap=%.12g\n", report.basis_count,
                report.expected_overlap);
    std::printf("worst entanglement residual:  %.3e\n", report.worst_entanglement_residual);
    std::printf("worst orthonormality residual: %.3e\n", report.worst_orthonormality_residual);
    std::printf("worst overlap deviation:      %.3e\n", report.worst_overlap_deviation);
    size_t shown = 0;
    for (const auto& f : report.failures) {
        if (shown++ == 10) {
            std::printf("  ... %zu further failures\n", report.failures.size() - 10);
            break;
        }
        std::printf("  FAIL %s: basis %d, element %d, measured %.6e\n", f.kind.c_str(), f.basis,
                    f.elem, f.measured);
    }
    std::printf("state verdict: %s\n", report.pass ? "PASS" : "FAIL");
}

int run_search(int dim, int root_order, std::uint64_t max_nodes, std::size_t max_generators,
               double tol, std::string out) {
    if (!usable_dim(dim)) {
        std::fprintf(stderr, "error: dimension must be prime (2..%d), got %d\n",
                     muub::kMaxOperatorDim, dim);
        return kExitUsage;
    }
    muub::SearchConfig cfg;
    cfg.dim = dim;
    cfg.root_order = root_order;
    cfg.node_cap = max_nodes;
    cfg.max_generators = max_generators;
    cfg.tol = muub::Tolerance(tol);

    const std::vector<muub::PhaseVector> generators = muub::enumerate_unitary_generators(cfg);
    const muub::MuubCollection collection = muub::assemble_collection(generators, cfg);
    const muub::Certificate cert = muub::verify_collection(collection, cfg.tol);

    if (out.empty()) out = "muub-search-d" + std::to_string(dim) + ".json";
    muub::io::save_collection(out, collection);
    std::printf("bases=%zu C=%g\n", collection.bases.size(), collection.constant_C);
    std::printf("generators=%zu root_order=%d wrote %s\n", generators.size(),
                muub::resolved_root_order(cfg), out.c_str());
    if (!cert.pass) {
        print_certificate(cert);
        return kExitFail;
    }
    return kExitPass;
}

int run_construct_subspace(int dim, double tol, std::string out) {
    if (!usable_dim(dim)) {
        std::fprintf(stderr, "error: dimension must be prime (2..%d), got %d\n",
                     muub::kMaxOperatorDim, dim);
        return kExitUsage;
    }
    const muub::MuubCollection collection = muub::subspace_recipe(dim);
    const muub::Certificate cert = muub::verify_collection(collection, muub::Tolerance(tol));
    if (out.empty()) out = "muub-subspace-d" + std::to_string(dim) + ".json";
    muub::io::save_collection(out, collection);
    std::printf("bases=%zu C=%g\n", collection.bases.size(), collection.constant_C);
    std::printf("wrote %s\n", out.c_str());
    if (!cert.pass) {
        print_certificate(cert);
        return kExitFail;
    }
    return kExitPass;
}

int run_verify(const std::string& in_path, double tol) {
    const muub::Tolerance tolerance(tol);
    const muub::MuubCollection collection = muub::io::load_collection(in_path, tolerance);
    const muub::Certificate cert = muub::verify_collection(collection, tolerance);
    print_certificate(cert);
    bool pass = cert.pass;

    const int d = collection.dim;
    if (!collection.bases.empty() && collection.bases.front().span_dim == d * d) {
        muub::MuubCollection measured = collection;
        measured.constant_C = cert.constant_C;
        const muub::MesMubReport report = muub::mes_mub_report(measured, tolerance);
        print_mes_report(report);
        pass = pass && report.pass;
    }
    return pass ? kExitPass : kExitFail;
}

int run_choi_report(const std::string& in_path, double tol) {
    const muub::Tolerance tolerance(tol);
    muub::MuubCollection collection = muub::io::load_collection(in_path, tolerance);
    const muub::Certificate cert = muub::verify_collection(collection, tolerance);
    collection.constant_C = cert.constant_C;
    const muub::MesMubReport report = muub::mes_mub_report(collection, tolerance);
    print_mes_report(report);
    return (cert.pass && report.pass) ? kExitPass : kExitFail;
}

int run_ratio(int count, const std::string& out) {
    const std::vector<muub::RatioRow> rows = muub::emit_ratio_table(count);
    std::ofstream os(out, std::ios::binary);
    if (!os) {
        std::fprintf(stderr, "error: cannot open '%s' for writing\n", out.c_str());
        return kExitUsage;
    }
    muub::io::write_ratio_csv(os, rows);
    std::printf("wrote %zu rows to %s\n", rows.size(), out.c_str());
    return kExitPass;
}

int run_theorem1(int dim, double tol) {
    if (!usable_dim(dim)) {
        std::fprintf(stderr, "error: dimension must be prime (2..%d), got %d\n",
                     muub::kMaxOperatorDim, dim);
        return kExitUsage;
    }
    const muub::Theorem1Report report = muub::theorem1_witness(dim, muub::Tolerance(tol));
    for (int k = 0; k < dim; ++k)
        std::printf("k=%d: %s\n", k, report.family_pass[k] ? "unitary" : "non-unitary");
    std::printf("computational: %s\n", report.computational_pass ? "unitary" : "non-unitary");
    std::printf("surviving=%d\n", report.surviving_bases);
    return report.surviving_bases == dim ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mutually unbiased unitary bases: search, construction, certification"};
    app.require_subcommand(1);

    int dim = 0;
    int root_order = 0;
    std::uint64_t max_nodes = muub::SearchConfig{}.node_cap;
    std::size_t max_generators = 0;
    double tol = muub::kDefaultEps;
    std::string out;
    std::string in_path;
    int count = 24;

    CLI::App* search = app.add_subcommand(
        "search", "enumerate unitary phase generators and assemble a full-space collection");
    search->add_option("--dim", dim, "prime dimension")->required();
    search->add_option("--root-order", root_order,
                       "phase root order L (default: d for odd d, 2d for d = 2)");
    search->add_option("--max-nodes", max_nodes, "traversal node cap");
    search->add_option("--max-generators", max_generators, "stop after this many generators");
    search->add_option("--out", out, "output collection document (JSON)");
    add_tol_option(search, tol);

    CLI::App* construct = app.add_subcommand(
        "construct-subspace", "closed-form maximal collection for the clock-span subspace");
    construct->add_option("--dim", dim, "prime dimension")->required();
    construct->add_option("--out", out, "output collection document (JSON)");
    add_tol_option(construct, tol);

    CLI::App* verify =
        app.add_subcommand("verify", "certify a collection document (plus its state images "
                                     "for full-space collections)");
    verify->add_option("input", in_path, "collection document path")->required();
    add_tol_option(verify, tol);

    CLI::App* choi = app.add_subcommand(
        "choi-report", "maximal-entanglement and unbiasedness report for a collection's state images");
    choi->add_option("input", in_path, "collection document path")->required();
    add_tol_option(choi, tol);

    CLI::App* ratio =
        app.add_subcommand("ratio", "CSV of the maximal-to-minimal count ratio R = (d+1)/d");
    ratio->add_option("--count", count, "number of primes (starting at 3)")
        ->check(CLI::NonNegativeNumber);
    ratio->add_option("--out", out, "output CSV path");

    CLI::App* theorem = app.add_subcommand(
        "theorem1", "which standard MUB families survive the clock-span isomorphism as unitary bases");
    theorem->add_option("--dim", dim, "prime dimension")->required();
    add_tol_option(theorem, tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    for (CLI::App* active : app.get_subcommands())
        if (!apply_tol_env(active, tol)) return kExitUsage;

    try {
        if (app.got_subcommand(search))
            return run_search(dim, root_order, max_nodes, max_generators, tol, out);
        if (app.got_subcommand(construct)) return run_construct_subspace(dim, tol, out);
        if (app.got_subcommand(verify)) return run_verify(in_path, tol);
        if (app.got_subcommand(choi)) return run_choi_report(in_path, tol);
        if (app.got_subcommand(ratio)) return run_ratio(count, out.empty() ? "ratio.csv" : out);
        if (app.got_subcommand(theorem)) return run_theorem1(dim, tol);
    } catch (const muub::BoundViolationError& e) {
        std::fprintf(stderr, "verification failed: %s\n", e.what());
        return kExitFail;
    } catch (const muub::NotUnbiasedError& e) {
        std::fprintf(stderr, "verification failed: %s\n", e.what());
        return kExitFail;
    } catch (const muub::DegenerateConstantError& e) {
        std::fprintf(stderr, "verification failed: %s\n", e.what());
        return kExitFail;
    } catch (const std::exception& e) {
        // document, dimension, cap and argument problems are usage errors
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
