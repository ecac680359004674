// densfact: build density operators from ensembles, factor them, and walk the
// equivalence class of factors through co-isometries. One JSON document per
// file; see the repository README for the schema.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "densfact/density.hpp"
#include "densfact/equivalence.hpp"
#include "densfact/factorization.hpp"
#include "densfact/io.hpp"

namespace {

using densfact::CMatrix;
using densfact::MatrixDocument;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
    double tol = densfact::kDefaultTol;
    std::uint64_t seed = 0;
    bool json_report = false;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_out = true) {
    cmd->add_option("--tol", opts.tol, "validation and comparison tolerance")
        ->capture_default_str();
    cmd->add_option("--seed", opts.seed, "RNG seed (used by random generation only)")
        ->capture_default_str();
    cmd->add_flag("--json", opts.json_report, "machine-readable report");
    if (with_out) cmd->add_option("--out", opts.out_path, "write the output document here");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw densfact::ParseError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Re-raise a document error with the file path prefixed, preserving the
// error family so the exit-code mapping still sees it.
[[noreturn]] void rethrow_with_path(const std::string& path, const densfact::Error& e) {
    const std::string msg = path + ": " + e.what();
    if (dynamic_cast<const densfact::ParseError*>(&e)) throw densfact::ParseError(msg);
    if (dynamic_cast<const densfact::SchemaError*>(&e)) throw densfact::SchemaError(msg);
    throw densfact::InvariantError(msg);
}

MatrixDocument load(const std::string& path, double tol) {
    try {
        return densfact::parse_document(read_file(path), tol);
    } catch (const densfact::Error& e) {
        rethrow_with_path(path, e);
    }
}

// Documents go to --out when given, otherwise to stdout. Reports go to
// stdout unless stdout is already carrying the document, in which case they
// move to stderr; that keeps both pipeable.
struct Emitter {
    const CommonOpts& opts;
    bool document_on_stdout = false;

    void document(const MatrixDocument& doc) {
        const std::string text = densfact::serialize_document(doc);
        if (opts.out_path.empty()) {
            std::cout << text;
            document_on_stdout = true;
        } else {
            std::ofstream out(opts.out_path, std::ios::binary);
            if (!out) throw densfact::Error("cannot open output file: " + opts.out_path);
            out << text;
            if (!out.good()) throw densfact::Error("failed writing: " + opts.out_path);
        }
    }

    void report(const json& machine, const std::string& human) {
        std::ostream& os = document_on_stdout ? std::cerr : std::cout;
        if (opts.json_report)
            os << machine.dump(2) << "\n";
        else
            os << human;
    }
};

std::string format_residual(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", value);
    return buf;
}

int cmd_build(const std::string& input, const CommonOpts& opts) {
    const densfact::Ensemble e = densfact::to_ensemble(load(input, opts.tol), opts.tol);
    const densfact::DensityOperator d = densfact::density_from_ensemble(e, opts.tol);
    Emitter emit{opts};
    emit.document(densfact::document_from(d));
    json rep;
    rep["command"] = "build";
    rep["n"] = d.dim();
    rep["states"] = e.size();
    std::ostringstream human;
    human << "density " << d.dim() << "x" << d.dim() << " built from " << e.size() << " states\n";
    emit.report(rep, human.str());
    return kExitOk;
}

int cmd_factorize(const std::string& input, const CommonOpts& opts) {
    const densfact::Ensemble e = densfact::to_ensemble(load(input, opts.tol), opts.tol);
    const densfact::DensityFactor f = densfact::factor_from_ensemble(e, opts.tol);
    Emitter emit{opts};
    emit.document(densfact::document_from(f));
    json rep;
    rep["command"] = "factorize";
    rep["n"] = f.dim();
    rep["components"] = f.components();
    std::ostringstream human;
    human << "factor " << f.dim() << "x" << f.components() << " built from the ensemble\n";
    emit.report(rep, human.str());
    return kExitOk;
}

int cmd_minimize(const std::string& input, const CommonOpts& opts) {
    const MatrixDocument doc = load(input, opts.tol);
    densfact::DensityFactor psi0{CMatrix{}};
    std::vector<double> eigenvalues;
    if (doc.kind == densfact::DocumentKind::density) {
        auto result = densfact::minimum_df_from_eid(densfact::to_density(doc, opts.tol), opts.tol);
        psi0 = std::move(result.psi0);
        eigenvalues = std::move(result.spectrum.eigenvalues);
    } else if (doc.kind == densfact::DocumentKind::factor) {
        auto result = densfact::minimum_df_from_svd(densfact::to_factor(doc, opts.tol), opts.tol);
        psi0 = std::move(result.psi0);
        eigenvalues.reserve(result.singular_values.size());
        for (double s : result.singular_values) eigenvalues.push_back(s * s);
    } else {
        throw densfact::SchemaError("kind: minimize expects a density or factor document");
    }

    Emitter emit{opts};
    emit.document(densfact::document_from(psi0));
    json rep;
    rep["command"] = "minimize";
    rep["rank"] = eigenvalues.size();
    rep["eigenvalues"] = eigenvalues;
    std::ostringstream human;
    human << "minimum orthonormal factor " << psi0.dim() << "x" << psi0.components() << "\n";
    human << "spectrum:";
    for (double v : eigenvalues) human << " " << format_residual(v);
    human << "\n";
    emit.report(rep, human.str());
    return kExitOk;
}

int cmd_expand(const std::string& factor_path, const std::string& coiso_path,
               const CommonOpts& opts) {
    const densfact::DensityFactor f = densfact::to_factor(load(factor_path, opts.tol), opts.tol);
    const densfact::CoIsometry a = densfact::to_coisometry(load(coiso_path, opts.tol), opts.tol);
    const densfact::DensityFactor phi = densfact::expand_factor(f, a, opts.tol);
    const double residual =
        densfact::frobenius_norm(matmul(phi.matrix, adjoint(phi.matrix)) -
                                 matmul(f.matrix, adjoint(f.matrix)));

    Emitter emit{opts};
    emit.document(densfact::document_from(phi));
    json rep;
    rep["command"] = "expand";
    rep["components"] = phi.components();
    rep["density_residual"] = residual;
    std::ostringstream human;
    human << "expanded to " << phi.dim() << "x" << phi.components()
          << " factor, density residual " << format_residual(residual) << "\n";
    emit.report(rep, human.str());
    return kExitOk;
}

int cmd_relate(const std::string& min_path, const std::string& factor_path,
               const CommonOpts& opts) {
    const densfact::DensityFactor psi0 = densfact::to_factor(load(min_path, opts.tol), opts.tol);
    const densfact::DensityFactor phi = densfact::to_factor(load(factor_path, opts.tol), opts.tol);

    // The reference factor itself fixes the pairing of eigenvalues to
    // columns, so derive the spectrum from its Gram diagonal rather than
    // re-sorting through an eigendecomposition.
    const CMatrix g = densfact::gram(psi0);
    densfact::SpectralData spectrum;
    spectrum.eigenvalues.resize(g.rows());
    for (std::size_t i = 0; i < g.rows(); ++i) spectrum.eigenvalues[i] = g(i, i).real();
    spectrum.vectors = psi0.matrix;
    spectrum.sigma = CMatrix(g.rows(), g.rows());
    for (std::size_t i = 0; i < g.rows(); ++i)
        spectrum.sigma(i, i) = std::sqrt(std::max(spectrum.eigenvalues[i], 0.0));

    const densfact::CoIsometry a0 =
        densfact::relate_to_minimum(psi0, phi, spectrum, opts.tol);
    const double rebuild =
        densfact::frobenius_norm(matmul(psi0.matrix, a0.matrix) - phi.matrix);
    const double coiso = densfact::frobenius_norm(
        matmul(a0.matrix, adjoint(a0.matrix)) - CMatrix::identity(a0.rows()));

    Emitter emit{opts};
    emit.document(densfact::document_from(a0));
    json rep;
    rep["command"] = "relate";
    rep["reconstruction_residual"] = rebuild;
    rep["coisometry_residual"] = coiso;
    rep["ok"] = rebuild <= 10.0 * opts.tol && coiso <= 10.0 * opts.tol;
    std::ostringstream human;
    human << "co-isometry " << a0.rows() << "x" << a0.cols() << ", reconstruction residual "
          << format_residual(rebuild) << ", orthonormality residual " << format_residual(coiso)
          << "\n";
    emit.report(rep, human.str());
    return rep["ok"].get<bool>() ? kExitOk : kExitDomain;
}

int cmd_verify(const std::string& factor_path, const std::string& density_path,
               const CommonOpts& opts) {
    const densfact::DensityFactor f = densfact::to_factor(load(factor_path, opts.tol), opts.tol);
    const densfact::DensityOperator d =
        densfact::to_density(load(density_path, opts.tol), opts.tol);
    if (f.dim() != d.dim())
        throw densfact::DimensionMismatch("verify: factor and density dimensions disagree");
    const double residual =
        densfact::frobenius_norm(matmul(f.matrix, adjoint(f.matrix)) - d.matrix);
    const bool ok = residual <= opts.tol;

    json rep;
    rep["command"] = "verify";
    rep["residual"] = residual;
    rep["tol"] = opts.tol;
    rep["ok"] = ok;
    std::ostringstream human;
    human << (ok ? "PASS" : "FAIL") << ": factorization residual " << format_residual(residual)
          << " (tol " << format_residual(opts.tol) << ")\n";
    Emitter emit{opts};
    emit.report(rep, human.str());
    if (!ok) std::cerr << "verify: factor does not reproduce the density operator\n";
    return ok ? kExitOk : kExitDomain;
}

int cmd_gen_coisometry(const std::vector<std::size_t>& random_kp,
                       const std::vector<std::size_t>& dft_kp, const CommonOpts& opts) {
    densfact::CoIsometry a{CMatrix{}};
    if (!random_kp.empty())
        a = densfact::random_coisometry(random_kp[0], random_kp[1], opts.seed);
    else
        a = densfact::dft_coisometry(dft_kp[0], dft_kp[1]);
    const double residual = densfact::frobenius_norm(
        matmul(a.matrix, adjoint(a.matrix)) - CMatrix::identity(a.rows()));

    Emitter emit{opts};
    emit.document(densfact::document_from(a));
    json rep;
    rep["command"] = "gen-coisometry";
    rep["k"] = a.rows();
    rep["p"] = a.cols();
    rep["residual"] = residual;
    std::ostringstream human;
    human << "co-isometry " << a.rows() << "x" << a.cols() << ", orthonormality residual "
          << format_residual(residual) << "\n";
    emit.report(rep, human.str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"density factor toolkit"};
    app.require_subcommand(1);

    CommonOpts build_opts, factorize_opts, minimize_opts, expand_opts, relate_opts, verify_opts,
        gen_opts;
    std::string build_in, factorize_in, minimize_in;
    std::string expand_factor_in, expand_coiso_in;
    std::string relate_min_in, relate_factor_in;
    std::string verify_factor_in, verify_density_in;
    std::vector<std::size_t> gen_random, gen_dft;

    CLI::App* build = app.add_subcommand("build", "ensemble document -> density document");
    build->add_option("input", build_in, "ensemble document")->required();
    add_common(build, build_opts);

    CLI::App* factorize = app.add_subcommand("factorize", "ensemble document -> factor document");
    factorize->add_option("input", factorize_in, "ensemble document")->required();
    add_common(factorize, factorize_opts);

    CLI::App* minimize = app.add_subcommand(
        "minimize", "density or factor document -> minimum orthonormal factor + spectrum");
    minimize->add_option("input", minimize_in, "density or factor document")->required();
    add_common(minimize, minimize_opts);

    CLI::App* expand =
        app.add_subcommand("expand", "factor + co-isometry documents -> expanded factor");
    expand->add_option("factor", expand_factor_in, "factor document")->required();
    expand->add_option("coisometry", expand_coiso_in, "co-isometry document")->required();
    add_common(expand, expand_opts);

    CLI::App* relate = app.add_subcommand(
        "relate", "minimum factor + factor documents -> connecting co-isometry + report");
    relate->add_option("minimum", relate_min_in, "minimum orthonormal factor document")->required();
    relate->add_option("factor", relate_factor_in, "factor document")->required();
    add_common(relate, relate_opts);

    CLI::App* verify =
        app.add_subcommand("verify", "factor + density documents -> pass/fail report");
    verify->add_option("factor", verify_factor_in, "factor document")->required();
    verify->add_option("density", verify_density_in, "density document")->required();
    add_common(verify, verify_opts, /*with_out=*/false);

    CLI::App* gen = app.add_subcommand("gen-coisometry", "generate a co-isometry document");
    CLI::Option* opt_random =
        gen->add_option("--random", gen_random, "k p: first k rows of a Haar random p x p unitary")
            ->expected(2);
    CLI::Option* opt_dft =
        gen->add_option("--dft", gen_dft, "k p: first k rows of the unitary DFT matrix")
            ->expected(2);
    opt_random->excludes(opt_dft);
    add_common(gen, gen_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (build->parsed()) return cmd_build(build_in, build_opts);
        if (factorize->parsed()) return cmd_factorize(factorize_in, factorize_opts);
        if (minimize->parsed()) return cmd_minimize(minimize_in, minimize_opts);
        if (expand->parsed()) return cmd_expand(expand_factor_in, expand_coiso_in, expand_opts);
        if (relate->parsed()) return cmd_relate(relate_min_in, relate_factor_in, relate_opts);
        if (verify->parsed()) return cmd_verify(verify_factor_in, verify_density_in, verify_opts);
        if (gen->parsed()) {
            if (gen_random.empty() == gen_dft.empty()) {
                std::cerr << "gen-coisometry: exactly one of --random or --dft is required\n";
                return kExitUsage;
            }
            return cmd_gen_coisometry(gen_random, gen_dft, gen_opts);
        }
    } catch (const densfact::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const densfact::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const densfact::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
