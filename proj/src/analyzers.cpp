#include "opsym/analyzers.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "opsym/errors.hpp"
#include "opsym/quadrature.hpp"

namespace opsym {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        case Verdict::NumericalEvidence: return "numerical-evidence";
        case Verdict::NotApplicable: return "not-applicable";
    }
    return "?";
}

namespace {

// Largest singular value of A(ξ) over the samples; the scale every rank
// threshold is relative to.
double symbol_scale(const SymbolOperator& a, const std::vector<Eigen::VectorXd>& samples) {
    double top = 0.0;
    for (const auto& xi : samples) {
        Eigen::JacobiSVD<Eigen::MatrixXd> dec(a.eval(xi));
        if (dec.singularValues().size() > 0) top = std::max(top, dec.singularValues()(0));
    }
    return top;
}

std::optional<RationalVector> rational_witness(const SymbolOperator& a,
                                               const Eigen::VectorXd& argmin) {
    // Normalize by the largest component so axis-aligned minima round to exact
    // lattice directions, then try a ladder of denominator caps.
    const double big = argmin.cwiseAbs().maxCoeff();
    if (big == 0.0) return std::nullopt;
    for (unsigned long max_den : {1ul, 8ul, 64ul}) {
        RationalVector xi(a.n());
        bool nonzero = false;
        for (int i = 0; i < a.n(); ++i) {
            xi(i) = rationalize(argmin(i) / big, max_den);
            if (xi(i) != 0) nonzero = true;
        }
        if (!nonzero) continue;
        if (exact_rank(a.eval_exact(xi)) < a.dimV()) return xi;
    }
    return std::nullopt;
}

}  // namespace

EllipticityResult check_ellipticity(const SymbolOperator& a, const AnalyzerConfig& cfg) {
    const int n = a.n();
    const int count = cfg.sampling.effective_count(n);
    const auto samples = sphere_points(n, count, cfg.sampling.seed);
    const double scale = symbol_scale(a, samples);

    auto sigma_min = [&a](const Eigen::VectorXd& xi) { return min_singular_value(a.eval(xi)); };

    std::vector<std::pair<double, int>> ranked;
    ranked.reserve(samples.size());
    for (size_t i = 0; i < samples.size(); ++i)
        ranked.emplace_back(sigma_min(samples[i]), static_cast<int>(i));
    std::sort(ranked.begin(), ranked.end());

    EllipticityResult out;
    out.min_sigma = ranked.front().first;
    out.argmin = samples[static_cast<size_t>(ranked.front().second)];
    const int starts = std::min<int>(cfg.sampling.refine_starts, static_cast<int>(ranked.size()));
    for (int s = 0; s < starts; ++s) {
        Eigen::VectorXd refined = refine_sphere_minimum(
            sigma_min, samples[static_cast<size_t>(ranked[static_cast<size_t>(s)].second)],
            cfg.sampling.refine_iterations);
        const double value = sigma_min(refined);
        if (value < out.min_sigma) {
            out.min_sigma = value;
            out.argmin = refined;
        }
    }

    const double threshold = cfg.tol * scale;
    out.constant = out.min_sigma > 0 ? 1.0 / out.min_sigma : std::numeric_limits<double>::infinity();
    out.ambiguous = (out.min_sigma >= 0.1 * threshold && out.min_sigma <= 10.0 * threshold);
    if (out.min_sigma > 100.0 * threshold) {
        out.verdict = Verdict::Yes;
        return out;
    }
    out.witness = rational_witness(a, out.argmin);
    if (out.witness) {
        out.verdict = Verdict::No;
        return out;
    }
    out.verdict = Verdict::NumericalEvidence;
    return out;
}

namespace {

struct FoldProblem {
    int n = 0;        // sphere dimension
    int ambient = 0;  // ambient dimension of the folded subspaces
    std::function<Subspace(const Eigen::VectorXd&, bool&)> subspace_at;  // flag: ambiguous rank
    std::function<RationalMatrix(const RationalVector&)> exact_subspace_at;
};

RationalVector random_rational_direction(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 4);
    while (true) {
        RationalVector xi(n);
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            xi(i) = make_rational(num(rng), den(rng));
            if (xi(i) != 0) nonzero = true;
        }
        if (nonzero) return xi;
    }
}

IntersectionResult fold_intersection(const FoldProblem& p, const AnalyzerConfig& cfg) {
    const int count = cfg.sampling.effective_count(p.n);
    const auto samples = sphere_points(p.n, count, cfg.sampling.seed);

    IntersectionResult out;
    out.intersection = Subspace::full(p.ambient, cfg.tol);
    int stable = 0;
    for (const auto& xi : samples) {
        ++out.trace.samples_used;
        bool ambiguous = false;
        const Subspace here = p.subspace_at(xi, ambiguous);
        out.trace.ambiguous_rank |= ambiguous;
        const int before = out.intersection.dim();
        out.intersection = intersect(out.intersection, here);
        const int after = out.intersection.dim();
        if (after > before)
            throw NumericError("intersection fold: dimension increased (monotonicity violated)");
        stable = (after == before) ? stable + 1 : 0;
        out.trace.stable_rounds = stable;
        if (stable >= cfg.stabilization_window) break;
    }

    // Exact cross-check at random rational directions: the exact intersection
    // over finitely many directions over-approximates the true one, so it must
    // contain every numerically found vector.
    if (cfg.exact_cross_checks > 0 && p.exact_subspace_at && out.intersection.dim() > 0) {
        std::mt19937_64 rng(cfg.sampling.seed ^ 0x9e3779b97f4a7c15ull);
        RationalMatrix exact(p.ambient, 0);
        bool first = true;
        for (int i = 0; i < cfg.exact_cross_checks; ++i) {
            const RationalVector xi = random_rational_direction(rng, p.n);
            RationalMatrix here = p.exact_subspace_at(xi);
            exact = first ? std::move(here) : exact_intersect(exact, here);
            first = false;
        }
        const Subspace exact_numeric = to_numeric_subspace(exact, p.ambient, cfg.tol);
        for (int c = 0; c < out.intersection.dim(); ++c) {
            if (!exact_numeric.contains(out.intersection.basis.col(c))) {
                out.trace.exact_check_passed = false;
                break;
            }
        }
    }

    if (out.trace.ambiguous_rank || !out.trace.exact_check_passed)
        out.verdict = Verdict::NumericalEvidence;
    else
        out.verdict = (out.intersection.dim() == 0) ? Verdict::Yes : Verdict::No;
    return out;
}

// Rank decisions within a factor 10 of the threshold never certify.
bool near_threshold(const Eigen::MatrixXd& m, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> dec(m);
    const auto& s = dec.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return false;
    const double cut = tol * s(0);
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) >= 0.1 * cut && s(i) <= 10.0 * cut) return true;
    return false;
}

}  // namespace

IntersectionResult check_cancelling(const SymbolOperator& a, const AnalyzerConfig& cfg,
                                    const EllipticityResult* precomputed) {
    EllipticityResult local;
    if (!precomputed) {
        local = check_ellipticity(a, cfg);
        precomputed = &local;
    }
    if (precomputed->verdict == Verdict::No)
        throw InputError("check_cancelling: operator '" + a.name() +
                         "' is not injectively elliptic");
    FoldProblem p;
    p.n = a.n();
    p.ambient = a.dimE();
    p.subspace_at = [&a, &cfg](const Eigen::VectorXd& xi, bool& ambiguous) {
        const Eigen::MatrixXd m = a.eval(xi);
        ambiguous = near_threshold(m, cfg.tol);
        return image(m, cfg.tol);
    };
    p.exact_subspace_at = [&a](const RationalVector& xi) {
        return exact_column_space(a.eval_exact(xi));
    };
    return fold_intersection(p, cfg);
}

IntersectionResult check_cocancelling(const SymbolOperator& l, const AnalyzerConfig& cfg) {
    FoldProblem p;
    p.n = l.n();
    p.ambient = l.dimV();
    p.subspace_at = [&l, &cfg](const Eigen::VectorXd& xi, bool& ambiguous) {
        const Eigen::MatrixXd m = l.eval(xi);
        ambiguous = near_threshold(m, cfg.tol);
        return kernel(m, cfg.tol);
    };
    p.exact_subspace_at = [&l](const RationalVector& xi) { return exact_kernel(l.eval_exact(xi)); };
    return fold_intersection(p, cfg);
}

IntersectionResult check_cocancelling(const PolyMatrix& l, const AnalyzerConfig& cfg) {
    FoldProblem p;
    p.n = l.vars();
    p.ambient = l.cols();
    p.subspace_at = [&l, &cfg](const Eigen::VectorXd& xi, bool& ambiguous) {
        const Eigen::MatrixXd m = l.eval(xi);
        ambiguous = near_threshold(m, cfg.tol);
        return kernel(m, cfg.tol);
    };
    p.exact_subspace_at = [&l](const RationalVector& xi) { return exact_kernel(l.eval_exact(xi)); };
    return fold_intersection(p, cfg);
}

PolyMatrix synthesize_compatibility(const SymbolOperator& a) {
    const PolyMatrix gram = a.gram();
    const Polynomial det = poly_det(gram);
    if (det.is_zero())
        throw InputError("synthesize_compatibility: det(A(xi)*A(xi)) vanishes identically; '" +
                         a.name() + "' is not injectively elliptic");
    const PolyMatrix adj = poly_adjugate(gram);
    const PolyMatrix a_pm = a.to_poly_matrix();
    return det * PolyMatrix::identity(a.dimE(), a.n()) - a_pm * adj * a_pm.transpose();
}

WeakCancellationResult check_weak_cancellation(const SymbolOperator& a,
                                               const Subspace& intersection,
                                               int quadrature_order) {
    if (a.k() < a.n())
        throw InputError("check_weak_cancellation: requires k >= n (got k = " +
                         std::to_string(a.k()) + ", n = " + std::to_string(a.n()) + ")");
    WeakCancellationResult out;
    out.betas = Multiindex::all_of_order(a.n(), a.k() - a.n());
    const int num_e = intersection.dim();
    const int num_beta = static_cast<int>(out.betas.size());
    out.integrals = Eigen::MatrixXd::Zero(num_e * num_beta, a.dimV());
    if (num_e == 0) {
        out.verdict = Verdict::Yes;  // vacuously weakly cancelling
        return out;
    }
    const auto nodes = sphere_quadrature(a.n(), quadrature_order);
    double integrand_scale = 0.0;
    for (const auto& node : nodes) {
        const Eigen::MatrixXd pinv = pseudoinverse(a.eval(node.point));
        for (int e = 0; e < num_e; ++e) {
            const Eigen::VectorXd v = pinv * intersection.basis.col(e);
            integrand_scale = std::max(integrand_scale, v.norm());
            for (int b = 0; b < num_beta; ++b)
                out.integrals.row(e * num_beta + b) +=
                    node.weight * out.betas[static_cast<size_t>(b)].pow(node.point) *
                    v.transpose();
        }
    }
    out.threshold = 1e-8 * sphere_area(a.n()) * std::max(1.0, integrand_scale);
    out.max_abs = out.integrals.cwiseAbs().maxCoeff();
    out.verdict = (out.max_abs <= out.threshold) ? Verdict::Yes : Verdict::No;
    return out;
}

AnalysisReport analyze(const SymbolOperator& a, const AnalyzerConfig& cfg) {
    AnalysisReport report;
    report.operator_name = a.name();
    report.n = a.n();
    report.k = a.k();
    report.dimV = a.dimV();
    report.dimE = a.dimE();
    report.seed = cfg.sampling.seed;
    report.tol = cfg.tol;
    report.samples = cfg.sampling.effective_count(a.n());

    const EllipticityResult ell = check_ellipticity(a, cfg);
    report.elliptic = ell.verdict;
    report.min_singular_value = ell.min_sigma;
    report.argmin = ell.argmin;
    report.ellipticity_constant = ell.constant;
    if (ell.witness) {
        std::string w;
        for (Eigen::Index i = 0; i < ell.witness->size(); ++i)
            w += (i ? "," : "") + format_rational((*ell.witness)(i));
        report.ellipticity_witness = w;
    }

    report.intersection = Subspace::zero(a.dimE(), cfg.tol);
    if (ell.verdict != Verdict::No) {
        const IntersectionResult canc = check_cancelling(a, cfg, &ell);
        report.cancelling = canc.verdict;
        report.intersection = canc.intersection;
        report.cancelling_trace = canc.trace;
    }

    const IntersectionResult cocanc = check_cocancelling(a, cfg);
    report.cocancelling = cocanc.verdict;
    report.kernel_intersection = cocanc.intersection;
    report.cocancelling_trace = cocanc.trace;

    if (ell.verdict != Verdict::No) {
        const PolyMatrix compat = synthesize_compatibility(a);
        report.compat_synthesized = true;
        report.compat_order = compat.homogeneous_degree().value_or(0);
        report.compat_cocancelling = check_cocancelling(compat, cfg).verdict;
        if (a.k() >= a.n())
            report.weak = check_weak_cancellation(a, report.intersection, cfg.quadrature_order);
        report.weakly_cancelling = report.weak.verdict;
    }
    return report;
}

}  // namespace opsym
