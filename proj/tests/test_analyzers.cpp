#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opsym/analyzers.hpp"
#include "opsym/catalog.hpp"
#include "opsym/errors.hpp"
#include "opsym/quadrature.hpp"
#include "opsym/report.hpp"

using namespace opsym;

namespace {

// L(xi) = xi_1 * [1 0]: every kernel contains e2, so L is not cocancelling.
SymbolOperator padded_row_operator(int n) {
    std::map<Multiindex, RationalMatrix> coeffs;
    RationalMatrix row = RationalMatrix::Zero(1, 2);
    row(0, 0) = 1;
    coeffs.emplace(Multiindex::unit(n, 0), row);
    return SymbolOperator("padded-row", n, 1, 2, 1, std::move(coeffs));
}

// d/dx1 acting on scalars in the plane; the symbol vanishes on the xi_2 axis.
SymbolOperator partial_x1() {
    std::map<Multiindex, RationalMatrix> coeffs;
    RationalMatrix one = RationalMatrix::Zero(1, 1);
    one(0, 0) = 1;
    coeffs.emplace(Multiindex::unit(2, 0), one);
    return SymbolOperator("partial-x1", 2, 1, 1, 1, std::move(coeffs));
}

}  // namespace

TEST_CASE("sphere quadrature integrates constants to the sphere area") {
    CHECK(sphere_area(2) == doctest::Approx(2 * M_PI));
    CHECK(sphere_area(3) == doctest::Approx(4 * M_PI));
    CHECK(sphere_area(4) == doctest::Approx(2 * M_PI * M_PI));
    for (int n : {1, 2, 3, 4}) {
        double sum = 0.0, x2 = 0.0;
        for (const auto& node : sphere_quadrature(n, 32)) {
            sum += node.weight;
            x2 += node.weight * node.point(0) * node.point(0);
        }
        CHECK(sum == doctest::Approx(sphere_area(n)).epsilon(1e-12));
        // ∫ xi_1^2 over S^{n-1} = area / n
        CHECK(x2 == doctest::Approx(sphere_area(n) / n).epsilon(1e-10));
    }
}

TEST_CASE("ellipticity verdicts and constants") {
    SUBCASE("div-curl: min sigma = 1, C = 1 (Lagrange identity)") {
        const EllipticityResult res = check_ellipticity(make_divcurl());
        CHECK(res.verdict == Verdict::Yes);
        CHECK(res.min_sigma == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(res.constant == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("partial_x1 on scalars in n=2: not elliptic, exact witness on the axis") {
        const EllipticityResult res = check_ellipticity(partial_x1());
        CHECK(res.verdict == Verdict::No);
        REQUIRE(res.witness.has_value());
        CHECK((*res.witness)(0) == 0);
        CHECK((*res.witness)(1) != 0);
    }
    SUBCASE("symmetric derivative n=2: min sigma = 1/sqrt(2), brute-force oracle") {
        // Oracle: 10^6 (xi, v) pairs on S^1 x S^1 through the raw tensor formula.
        double oracle = std::numeric_limits<double>::infinity();
        const int grid = 1000;
        for (int i = 0; i < grid; ++i) {
            const double a = 2 * M_PI * i / grid;
            const double xi1 = std::cos(a), xi2 = std::sin(a);
            for (int j = 0; j < grid; ++j) {
                const double b = 2 * M_PI * j / grid;
                const double v1 = std::cos(b), v2 = std::sin(b);
                // |(xi o v + v o xi)/2|_F^2
                const double m11 = xi1 * v1, m22 = xi2 * v2;
                const double m12 = (xi1 * v2 + xi2 * v1) / 2;
                oracle = std::min(oracle, std::sqrt(m11 * m11 + m22 * m22 + 2 * m12 * m12));
            }
        }
        CHECK(oracle == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-5));
        const EllipticityResult res = check_ellipticity(make_symmetric_derivative(2));
        CHECK(res.verdict == Verdict::Yes);
        CHECK(res.min_sigma == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
    }
    SUBCASE("hodge symbols are isometric up to scale: min sigma = 1") {
        const EllipticityResult res = check_ellipticity(make_hodge(4, 2));
        CHECK(res.verdict == Verdict::Yes);
        CHECK(res.min_sigma == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("divergence and curl are not injectively elliptic") {
        CHECK(check_ellipticity(make_divergence(3)).verdict == Verdict::No);
        CHECK(check_ellipticity(make_curl(3)).verdict == Verdict::No);
    }
}

TEST_CASE("cancelling verdicts") {
    SUBCASE("div-curl: not cancelling, intersection is R x {0}") {
        const IntersectionResult res = check_cancelling(make_divcurl());
        CHECK(res.verdict == Verdict::No);
        REQUIRE(res.intersection.dim() == 1);
        Eigen::VectorXd e0(4);
        e0 << 1, 0, 0, 0;
        CHECK(res.intersection.angle_to(e0) < 1e-6);
        CHECK(res.trace.exact_check_passed);
    }
    SUBCASE("hodge(4,2): cancelling") {
        CHECK(check_cancelling(make_hodge(4, 2)).verdict == Verdict::Yes);
    }
    SUBCASE("hodge(3,1): not cancelling (the d* component survives)") {
        const IntersectionResult res = check_cancelling(make_hodge(3, 1));
        CHECK(res.verdict == Verdict::No);
        CHECK(res.intersection.dim() == 1);
    }
    SUBCASE("symmetric derivative: cancelling iff n >= 2") {
        CHECK(check_cancelling(make_symmetric_derivative(2)).verdict == Verdict::Yes);
        CHECK(check_cancelling(make_symmetric_derivative(3)).verdict == Verdict::Yes);
        CHECK(check_cancelling(make_symmetric_derivative(1)).verdict == Verdict::No);
    }
    SUBCASE("laplacian: image is the whole 1-dimensional target, never cancelling") {
        const IntersectionResult res = check_cancelling(make_laplacian(3));
        CHECK(res.verdict == Verdict::No);
        CHECK(res.intersection.dim() == 1);
    }
    SUBCASE("gradient: cancelling for n >= 2, not for n = 1") {
        CHECK(check_cancelling(make_gradient(3)).verdict == Verdict::Yes);
        CHECK(check_cancelling(make_gradient(1)).verdict == Verdict::No);
    }
    SUBCASE("non-elliptic input is a precondition error") {
        CHECK_THROWS_AS(check_cancelling(make_divergence(3)), InputError);
    }
}

TEST_CASE("cocancelling verdicts") {
    CHECK(check_cocancelling(make_divergence(2)).verdict == Verdict::Yes);
    CHECK(check_cocancelling(make_divergence(3)).verdict == Verdict::Yes);
    CHECK(check_cocancelling(make_curl(3)).verdict == Verdict::Yes);
    CHECK(check_cocancelling(make_kpowers(3, 2)).verdict == Verdict::Yes);
    const IntersectionResult bad = check_cocancelling(padded_row_operator(3));
    CHECK(bad.verdict == Verdict::No);
    REQUIRE(bad.intersection.dim() == 1);
    Eigen::VectorXd e2(2);
    e2 << 0, 1;
    CHECK(bad.intersection.angle_to(e2) < 1e-6);
}

TEST_CASE("compatibility operator synthesis") {
    SUBCASE("gradient: L = |xi|^2 id - xi xi^T, exactly") {
        const SymbolOperator grad = make_gradient(3);
        const PolyMatrix compat = synthesize_compatibility(grad);
        Polynomial norm2(3);
        for (int i = 0; i < 3; ++i) norm2 += Polynomial::monomial(Multiindex::unit(3, i, 2), 1);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                Polynomial expected =
                    -1 * Polynomial::monomial(Multiindex::unit(3, r).plus(Multiindex::unit(3, c)),
                                              Rational(1));
                if (r == c) expected += norm2;
                CHECK(compat(r, c) == expected);
            }
        // ker L(xi) = R xi at a generic point
        Eigen::VectorXd xi(3);
        xi << 0.3, -1.2, 0.7;
        const Subspace ker = kernel(compat.eval(xi));
        REQUIRE(ker.dim() == 1);
        CHECK(std::abs(std::abs(ker.basis.col(0).dot(xi.normalized())) - 1.0) < 1e-10);
    }
    SUBCASE("L(xi) A(xi) = 0 exactly for the elliptic catalog") {
        const SymbolOperator ops[] = {make_gradient(2), make_divcurl(),
                                      make_symmetric_derivative(2), make_hodge(3, 1),
                                      make_laplacian(2)};
        for (const auto& a : ops) {
            const PolyMatrix compat = synthesize_compatibility(a);
            CHECK((compat * a.to_poly_matrix()).is_zero());
        }
    }
    SUBCASE("div-curl: rank L(xi) = dimE - dimV = 1 at xi=(0,0,1), exactly") {
        const PolyMatrix compat = synthesize_compatibility(make_divcurl());
        RationalVector xi(3);
        xi << Rational(0), Rational(0), Rational(1);
        CHECK(exact_rank(compat.eval_exact(xi)) == 1);
    }
    SUBCASE("laplacian: L is identically zero (1x1, trivially annihilating)") {
        CHECK(synthesize_compatibility(make_laplacian(3)).is_zero());
    }
    SUBCASE("non-elliptic operators are rejected via det(A*A) = 0") {
        CHECK_THROWS_AS(synthesize_compatibility(make_divergence(3)), InputError);
        CHECK_THROWS_AS(synthesize_compatibility(make_curl(3)), InputError);
    }
}

TEST_CASE("cancelling iff cocancelling(compatibility operator)") {
    const SymbolOperator ops[] = {make_gradient(2),  make_gradient(1),
                                  make_divcurl(),    make_symmetric_derivative(2),
                                  make_hodge(3, 1),  make_hodge(4, 2),
                                  make_laplacian(2), make_laplacian(3)};
    for (const auto& a : ops) {
        const IntersectionResult canc = check_cancelling(a);
        const PolyMatrix compat = synthesize_compatibility(a);
        const IntersectionResult cocanc = check_cocancelling(compat);
        CHECK(canc.verdict == cocanc.verdict);
        CHECK(canc.intersection.dim() == cocanc.intersection.dim());
    }
}

TEST_CASE("weak cancellation") {
    SUBCASE("laplacian n=2, k=2: integral is 2 pi e, not weakly cancelling") {
        const SymbolOperator lap = make_laplacian(2);
        const IntersectionResult canc = check_cancelling(lap);
        REQUIRE(canc.intersection.dim() == 1);
        const WeakCancellationResult res = check_weak_cancellation(lap, canc.intersection, 64);
        CHECK(res.verdict == Verdict::No);
        REQUIRE(res.integrals.rows() == 1);
        CHECK(std::abs(res.integrals(0, 0)) == doctest::Approx(2 * M_PI).epsilon(1e-9));
    }
    SUBCASE("laplacian n=1, k=2: the two-point sphere integral cancels") {
        const SymbolOperator lap = make_laplacian(1);
        const IntersectionResult canc = check_cancelling(lap);
        REQUIRE(canc.intersection.dim() == 1);
        const WeakCancellationResult res = check_weak_cancellation(lap, canc.intersection, 64);
        CHECK(res.verdict == Verdict::Yes);
        CHECK(res.max_abs <= res.threshold);
    }
    SUBCASE("empty intersection is vacuously weakly cancelling") {
        const SymbolOperator grad = make_gradient(2, 2);  // k = n = 2, cancelling
        const IntersectionResult canc = check_cancelling(grad);
        REQUIRE(canc.intersection.dim() == 0);
        const WeakCancellationResult res = check_weak_cancellation(grad, canc.intersection, 64);
        CHECK(res.verdict == Verdict::Yes);
        CHECK(res.integrals.rows() == 0);
    }
    SUBCASE("k < n is not applicable") {
        const IntersectionResult canc = check_cancelling(make_divcurl());
        CHECK_THROWS_AS(check_weak_cancellation(make_divcurl(), canc.intersection, 64),
                        InputError);
    }
}

TEST_CASE("scaling invariance: c A keeps verdicts, scales min sigma by |c|") {
    const SymbolOperator a = make_symmetric_derivative(2);
    const SymbolOperator scaled = a.scaled(make_rational(-7, 3), "scaled");
    const EllipticityResult base = check_ellipticity(a);
    const EllipticityResult after = check_ellipticity(scaled);
    CHECK(after.verdict == base.verdict);
    CHECK(after.min_sigma == doctest::Approx(base.min_sigma * 7.0 / 3.0).epsilon(1e-9));
    CHECK(check_cancelling(scaled).verdict == check_cancelling(a).verdict);
    CHECK(check_cocancelling(scaled).verdict == check_cocancelling(a).verdict);
}

TEST_CASE("full analyze pipeline and determinism") {
    AnalyzerConfig cfg;
    cfg.sampling.seed = 123;
    const AnalysisReport r1 = analyze(make_divcurl(), cfg);
    CHECK(r1.elliptic == Verdict::Yes);
    CHECK(r1.cancelling == Verdict::No);
    CHECK(r1.cocancelling == Verdict::Yes);
    CHECK(r1.compat_synthesized);
    CHECK(r1.compat_cocancelling == r1.cancelling);
    CHECK(r1.weakly_cancelling == Verdict::NotApplicable);  // k = 1 < n = 3

    const AnalysisReport r2 = analyze(make_divcurl(), cfg);
    CHECK(render_json(r1) == render_json(r2));

    const AnalysisReport lap = analyze(make_laplacian(2), cfg);
    CHECK(lap.elliptic == Verdict::Yes);
    CHECK(lap.cancelling == Verdict::No);
    CHECK(lap.weakly_cancelling == Verdict::No);
    CHECK(lap.compat_cocancelling == Verdict::No);

    const AnalysisReport div = analyze(make_divergence(3), cfg);
    CHECK(div.elliptic == Verdict::No);
    CHECK(div.cancelling == Verdict::NotApplicable);
    CHECK(div.cocancelling == Verdict::Yes);
}
