#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "opsym/catalog.hpp"
#include "opsym/errors.hpp"
#include "opsym/report.hpp"
#include "opsym/spec_file.hpp"

namespace {

using namespace opsym;

struct CommonOpts {
    std::string catalog_id;
    std::string spec_path;
    int n = 3;
    std::optional<int> m;
    std::optional<int> k;
    int grid = 0;
    std::string eps_ladder;
    int trials = 0;
    uint64_t seed = 0;
    double tol = kDefaultRankTol;
    int samples = 0;
    std::string out_path;
    std::string format = "text";
    bool certify = false;
};

void add_operator_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--catalog", opts.catalog_id, "catalog operator id");
    cmd->add_option("--spec", opts.spec_path, "operator spec file path");
    cmd->add_option("--n", opts.n, "ambient dimension for catalog constructors");
    cmd->add_option("--m", opts.m, "Hodge form degree");
    cmd->add_option("--k", opts.k, "order parameter for catalog constructors");
}

void add_run_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--grid", opts.grid, "grid points per axis (power of two)");
    cmd->add_option("--eps-ladder", opts.eps_ladder, "ladder exponents a:b meaning 2^-a..2^-b");
    cmd->add_option("--trials", opts.trials, "number of random trials");
    cmd->add_option("--seed", opts.seed, "deterministic seed");
    cmd->add_option("--tol", opts.tol, "rank tolerance");
    cmd->add_option("--samples", opts.samples, "sphere sample count");
    cmd->add_option("--out", opts.out_path, "write the machine report/CSV here");
    cmd->add_option("--format", opts.format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
}

SymbolOperator resolve_operator(const CommonOpts& opts) {
    if (!opts.catalog_id.empty() && !opts.spec_path.empty())
        throw InputError("give either --catalog or --spec, not both");
    if (!opts.catalog_id.empty()) {
        CatalogParams params;
        params.n = opts.n;
        params.m = opts.m;
        params.k = opts.k;
        return catalog_get(opts.catalog_id, params);
    }
    if (!opts.spec_path.empty()) return load_operator_spec(opts.spec_path);
    throw InputError("an operator is required: --catalog <id> or --spec <path>");
}

AnalyzerConfig analyzer_config(const CommonOpts& opts) {
    AnalyzerConfig cfg;
    cfg.sampling.seed = opts.seed;
    cfg.sampling.count = opts.samples;
    cfg.tol = opts.tol;
    return cfg;
}

ExperimentConfig experiment_config(const CommonOpts& opts, const SymbolOperator& op) {
    ExperimentConfig cfg;
    cfg.grid_dim = op.n();
    if (opts.grid > 0) cfg.grid_size = opts.grid;
    else cfg.grid_size = (op.n() >= 4) ? 32 : (op.n() == 3 ? 128 : 256);
    if (!opts.eps_ladder.empty()) {
        const auto colon = opts.eps_ladder.find(':');
        if (colon == std::string::npos)
            throw InputError("--eps-ladder expects a:b (exponents of 2^-a .. 2^-b)");
        cfg.eps_top_exp = std::stoi(opts.eps_ladder.substr(0, colon));
        cfg.eps_bottom_exp = std::stoi(opts.eps_ladder.substr(colon + 1));
    }
    if (opts.trials > 0) cfg.trials = opts.trials;
    cfg.seed = opts.seed;
    cfg.tol = opts.tol;
    return cfg;
}

void emit(const std::string& rendered, const CommonOpts& opts) {
    if (opts.out_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(opts.out_path, std::ios::binary);
        if (!out) throw InputError("cannot open output file '" + opts.out_path + "'");
        out << rendered;
        std::cout << "wrote " << opts.out_path << "\n";
    }
}

bool verdict_matches(Expected expected, Verdict got) {
    switch (expected) {
        case Expected::Yes: return got == Verdict::Yes;
        case Expected::No: return got == Verdict::No;
        case Expected::Unknown: return true;
    }
    return true;
}

int run_analyze(const CommonOpts& opts) {
    const SymbolOperator op = resolve_operator(opts);
    const AnalysisReport report = analyze(op, analyzer_config(opts));
    emit(opts.format == "json" ? render_json(report) : render_text(report), opts);
    if (opts.certify && !opts.catalog_id.empty()) {
        CatalogParams params;
        params.n = opts.n;
        params.m = opts.m;
        params.k = opts.k;
        const CatalogEntry golden = catalog_entry(opts.catalog_id, params);
        const bool ok = verdict_matches(golden.elliptic, report.elliptic) &&
                        verdict_matches(golden.cancelling, report.cancelling) &&
                        verdict_matches(golden.cocancelling, report.cocancelling);
        if (!ok) {
            std::cerr << "certification mismatch: observed verdicts differ from the golden "
                         "catalog entry\n";
            return 4;
        }
        std::cout << "certified: verdicts match the golden catalog entry\n";
    }
    return 0;
}

int run_synthesize(const CommonOpts& opts) {
    const SymbolOperator op = resolve_operator(opts);
    const PolyMatrix compat = synthesize_compatibility(op);
    std::ostringstream os;
    if (opts.format == "json") {
        os << "{\n  \"operator\": \"" << op.name() << "\",\n  \"order\": "
           << compat.homogeneous_degree().value_or(0) << ",\n  \"rows\": " << compat.rows()
           << ",\n  \"cols\": " << compat.cols() << ",\n  \"entries\": [\n";
        bool first = true;
        for (int r = 0; r < compat.rows(); ++r)
            for (int c = 0; c < compat.cols(); ++c) {
                if (!compat(r, c).is_zero()) {
                    os << (first ? "" : ",\n") << "    {\"row\": " << r << ", \"col\": " << c
                       << ", \"poly\": \"" << compat(r, c).to_string() << "\"}";
                    first = false;
                }
            }
        os << "\n  ]\n}\n";
    } else {
        os << "compatibility operator L(xi) for " << op.name() << ": " << compat.rows() << "x"
           << compat.cols() << ", homogeneous degree "
           << compat.homogeneous_degree().value_or(0) << "\n";
        for (int r = 0; r < compat.rows(); ++r)
            for (int c = 0; c < compat.cols(); ++c)
                if (!compat(r, c).is_zero())
                    os << "  L[" << r << "][" << c << "] = " << compat(r, c).to_string() << "\n";
        // The defining identity, checked exactly.
        const PolyMatrix product = compat * op.to_poly_matrix();
        os << "  identity L(xi)*A(xi) == 0: " << (product.is_zero() ? "holds" : "VIOLATED")
           << "\n";
    }
    emit(os.str(), opts);
    return 0;
}

int run_experiment(const std::string& kind, const CommonOpts& opts) {
    const SymbolOperator op = resolve_operator(opts);
    const ExperimentConfig cfg = experiment_config(opts, op);
    const AnalyzerConfig acfg = analyzer_config(opts);

    auto emit_table = [&](const RatioTable& table) {
        if (opts.format == "csv") {
            std::ostringstream os;
            table.write_csv(os);
            emit(os.str(), opts);
        } else if (opts.format == "json") {
            emit(render_json(table), opts);
        } else {
            emit(render_text(table), opts);
        }
    };

    if (kind == "l2") {
        const EllipticityResult ell = check_ellipticity(op, acfg);
        emit_table(l2_estimate_experiment(op, cfg, ell));
        return 0;
    }
    if (kind == "sobolev" || kind == "hardy") {
        const AnalysisReport report = analyze(op, acfg);
        const RatioTable table = (kind == "sobolev") ? sobolev_ratio_scan(op, cfg, report)
                                                     : hardy_ratio_scan(op, cfg, report);
        emit_table(table);
        return 0;
    }
    if (kind == "duality") {
        const IntersectionResult cocanc = check_cocancelling(op, acfg);
        emit_table(duality_ratio_scan(op, cfg, cocanc));
        return 0;
    }
    if (kind == "compensation") {
        const IntersectionResult cocanc = check_cocancelling(op, acfg);
        emit_table(compensation_ratio_scan(op, cfg, cocanc));
        return 0;
    }
    if (kind == "greens") {
        ExperimentConfig gcfg = cfg;
        if (opts.grid == 0) gcfg.grid_size = (op.n() == 3) ? 64 : 128;  // doubled internally
        Eigen::VectorXd e = Eigen::VectorXd::Zero(op.dimE());
        e(0) = 1.0;
        const GreensReport report = greens_homogeneity_check(op, gcfg, e);
        emit(opts.format == "json" ? render_json(report) : render_text(report), opts);
        return 0;
    }
    throw InputError("unknown experiment kind '" + kind +
                     "'; valid: l2, sobolev, duality, hardy, compensation, greens");
}

int run_catalog_list() {
    for (const auto& id : catalog_ids()) {
        CatalogParams params;
        params.n = (id == "hodge" || id == "divcurl") ? 3 : 3;
        if (id == "hodge") params.m = 1;
        const CatalogEntry entry = catalog_entry(id, params);
        std::cout << id << "\n  params: " << entry.params_help << "\n  provenance: "
                  << entry.provenance << "\n";
    }
    return 0;
}

int run_spec_validate(const CommonOpts& opts, bool echo) {
    if (opts.spec_path.empty()) throw InputError("spec validate requires --spec <path>");
    const SymbolOperator op = load_operator_spec(opts.spec_path);
    const std::string canonical = serialize_operator_spec(op);
    const SymbolOperator reparsed = parse_operator_spec(canonical);
    if (!(reparsed == op)) throw NumericError("round-trip mismatch (this is a bug)");
    std::cout << "ok: " << op.name() << " n=" << op.n() << " k=" << op.k() << " dimV=" << op.dimV()
              << " dimE=" << op.dimE() << " (round-trips bit-exactly)\n";
    if (echo) std::cout << canonical;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic-numeric analyzer for homogeneous vector differential operators"};
    app.require_subcommand(1);

    CommonOpts opts;
    bool echo = false;

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "run the full verdict pipeline");
    add_operator_flags(analyze_cmd, opts);
    add_run_flags(analyze_cmd, opts);
    analyze_cmd->add_flag("--certify", opts.certify,
                          "exit 4 when verdicts differ from the golden catalog entry");

    CLI::App* synth_cmd =
        app.add_subcommand("synthesize-compat", "print the exact compatibility operator L(xi)");
    add_operator_flags(synth_cmd, opts);
    add_run_flags(synth_cmd, opts);

    CLI::App* exp_cmd = app.add_subcommand("experiment", "run a spectral torus experiment");
    std::string kind;
    exp_cmd->add_option("kind", kind, "l2 | sobolev | duality | hardy | compensation | greens")
        ->required();
    add_operator_flags(exp_cmd, opts);
    add_run_flags(exp_cmd, opts);

    CLI::App* catalog_cmd = app.add_subcommand("catalog", "catalog utilities");
    CLI::App* list_cmd = catalog_cmd->add_subcommand("list", "list built-in operators");

    CLI::App* spec_cmd = app.add_subcommand("spec", "operator spec file utilities");
    CLI::App* validate_cmd = spec_cmd->add_subcommand("validate", "parse and round-trip a spec");
    validate_cmd->add_option("--spec", opts.spec_path, "operator spec file path")->required();
    validate_cmd->add_flag("--echo", echo, "print the canonical serialization");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze_cmd) return run_analyze(opts);
        if (*synth_cmd) return run_synthesize(opts);
        if (*exp_cmd) return run_experiment(kind, opts);
        if (*list_cmd) return run_catalog_list();
        if (*validate_cmd) return run_spec_validate(opts, echo);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const opsym::InputError& err) {
        std::cerr << "input error: " << err.what() << "\n";
        return 2;
    } catch (const opsym::NumericError& err) {
        std::cerr << "numeric error: " << err.what() << "\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    }
}
