#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "opsym/catalog.hpp"
#include "opsym/errors.hpp"
#include "opsym/linalg.hpp"

using namespace opsym;

namespace {

// Independent oracle: classical Jacobi eigensolver for symmetric matrices,
// no Eigen decompositions involved. Returns eigenvalues descending.
Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd s) {
    const int n = static_cast<int>(s.rows());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
        if (off < 1e-26) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(s(p, q)) < 1e-300) continue;
                const double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), sn = t * c;
                for (int i = 0; i < n; ++i) {
                    const double sip = s(i, p), siq = s(i, q);
                    s(i, p) = c * sip - sn * siq;
                    s(i, q) = sn * sip + c * siq;
                }
                for (int i = 0; i < n; ++i) {
                    const double spi = s(p, i), sqi = s(q, i);
                    s(p, i) = c * spi - sn * sqi;
                    s(q, i) = sn * spi + c * sqi;
                }
            }
    }
    Eigen::VectorXd ev = s.diagonal();
    std::sort(ev.data(), ev.data() + n, std::greater<double>());
    return ev;
}

Eigen::MatrixXd random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = gauss(rng);
    return m;
}

}  // namespace

TEST_CASE("svd basics") {
    const SvdResult id3 = svd(Eigen::MatrixXd::Identity(3, 3));
    for (int i = 0; i < 3; ++i) CHECK(id3.sigma(i) == doctest::Approx(1.0));

    Eigen::MatrixXd d(2, 2);
    d << 3, 0, 0, 0;
    const SvdResult dd = svd(d);
    CHECK(dd.sigma(0) == doctest::Approx(3.0));
    CHECK(dd.sigma(1) == doctest::Approx(0.0));

    Eigen::MatrixXd bad(1, 1);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(svd(bad), NumericError);
}

TEST_CASE("svd against the independent gram-eigenvalue oracle") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::MatrixXd m = random_matrix(5, 3, rng);
        const SvdResult dec = svd(m);
        // descending and nonnegative
        for (int i = 0; i + 1 < dec.sigma.size(); ++i) CHECK(dec.sigma(i) >= dec.sigma(i + 1));
        CHECK(dec.sigma.minCoeff() >= 0.0);
        // reconstruction within 1e-10 · |M|_inf
        const Eigen::MatrixXd rec = dec.u * dec.sigma.head(3).asDiagonal() * dec.v.transpose();
        CHECK((rec - m).cwiseAbs().maxCoeff() <= 1e-10 * m.cwiseAbs().maxCoeff());
        // orthogonality
        CHECK((dec.u.transpose() * dec.u - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
        CHECK((dec.v.transpose() * dec.v - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
        // σ² equal the gram eigenvalues from the hand-rolled Jacobi iteration
        const Eigen::VectorXd ev = jacobi_eigenvalues(m.transpose() * m);
        for (int i = 0; i < 3; ++i)
            CHECK(dec.sigma(i) * dec.sigma(i) == doctest::Approx(ev(i)).epsilon(1e-10));
    }
}

TEST_CASE("pseudoinverse") {
    SUBCASE("div-curl symbol at xi=(0,0,1): pinv(A) A = id within 1e-10") {
        Eigen::VectorXd xi(3);
        xi << 0, 0, 1;
        const Eigen::MatrixXd a = make_divcurl().eval(xi);
        const Eigen::MatrixXd p = pseudoinverse(a);
        CHECK((p * a - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("zero matrix maps to zero matrix") {
        CHECK(pseudoinverse(Eigen::MatrixXd::Zero(3, 2)).isZero(0));
    }
    SUBCASE("random full-column-rank 6x3 matches the normal-equation formula") {
        std::mt19937_64 rng(2);
        for (int trial = 0; trial < 10; ++trial) {
            const Eigen::MatrixXd m = random_matrix(6, 3, rng);
            const Eigen::MatrixXd lhs = pseudoinverse(m);
            const Eigen::MatrixXd rhs = (m.transpose() * m).inverse() * m.transpose();
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-8);
        }
    }
    SUBCASE("Moore-Penrose identities on random matrices") {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 10; ++trial) {
            const Eigen::MatrixXd m = random_matrix(4, 5, rng);
            const Eigen::MatrixXd p = pseudoinverse(m);
            CHECK((p * m * p - p).cwiseAbs().maxCoeff() < 1e-8);
            CHECK((m * p * m - m).cwiseAbs().maxCoeff() < 1e-8);
        }
    }
}

TEST_CASE("image and kernel subspaces") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> gauss;
    SUBCASE("divergence symbol: kernel = xi-perp with dim n-1") {
        for (int n : {2, 3, 4}) {
            Eigen::VectorXd xi(n);
            for (int i = 0; i < n; ++i) xi(i) = gauss(rng);
            xi.normalize();
            const Subspace ker = kernel(make_divergence(n).eval(xi));
            CHECK(ker.dim() == n - 1);
            CHECK((ker.basis.transpose() * xi).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    SUBCASE("curl symbol: kernel = R xi, dim 1") {
        for (int n : {2, 3, 4}) {
            Eigen::VectorXd xi(n);
            for (int i = 0; i < n; ++i) xi(i) = gauss(rng);
            xi.normalize();
            const Subspace ker = kernel(make_curl(n).eval(xi));
            REQUIRE(ker.dim() == 1);
            CHECK(std::abs(std::abs(ker.basis.col(0).dot(xi)) - 1.0) < 1e-10);
        }
    }
    SUBCASE("identity: image everything, kernel trivial") {
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
        CHECK(image(id).dim() == 4);
        CHECK(kernel(id).dim() == 0);
    }
    SUBCASE("rank-nullity at matching tolerance") {
        for (int trial = 0; trial < 20; ++trial) {
            const int rows = 2 + static_cast<int>(rng() % 5);
            const int cols = 2 + static_cast<int>(rng() % 5);
            Eigen::MatrixXd m = random_matrix(rows, cols, rng);
            if (trial % 2 == 0 && cols >= 2) m.col(cols - 1) = 2.0 * m.col(0);  // force deficiency
            CHECK(image(m).dim() + kernel(m).dim() == cols);
        }
    }
}

TEST_CASE("subspace intersection") {
    SUBCASE("div-curl images over the standard directions meet in R x {0}") {
        const SymbolOperator a = make_divcurl();
        Subspace s = Subspace::full(4);
        for (int i = 0; i < 3; ++i) {
            Eigen::VectorXd xi = Eigen::VectorXd::Zero(3);
            xi(i) = 1.0;
            s = intersect(s, image(a.eval(xi)));
        }
        REQUIRE(s.dim() == 1);
        Eigen::VectorXd e0(4);
        e0 << 1, 0, 0, 0;
        CHECK(s.angle_to(e0) < 1e-8);
    }
    SUBCASE("S cap S = S") {
        std::mt19937_64 rng(5);
        const Subspace s = image(random_matrix(5, 2, rng));
        const Subspace both = intersect(s, s);
        CHECK(subspace_equal(both, s));
    }
    SUBCASE("constructed common part is recovered") {
        std::mt19937_64 rng(6);
        for (int trial = 0; trial < 10; ++trial) {
            const Eigen::MatrixXd common = random_matrix(8, 2, rng);
            Eigen::MatrixXd b1(8, 4), b2(8, 4);
            b1 << common, random_matrix(8, 2, rng);
            b2 << common, random_matrix(8, 2, rng);
            const Subspace inter = intersect(image(b1), image(b2));
            CHECK(inter.dim() == 2);
            CHECK(subspace_equal(inter, image(common), 1e-5));
        }
    }
    SUBCASE("ambient mismatch is an input error") {
        CHECK_THROWS_AS(intersect(Subspace::full(3), Subspace::full(4)), InputError);
    }
}

TEST_CASE("exact rational linear algebra") {
    SUBCASE("rank and kernel of a constructed matrix") {
        RationalMatrix m(2, 3);
        m << Rational(1), Rational(2), Rational(3),
             Rational(2), Rational(4), Rational(6);
        CHECK(exact_rank(m) == 1);
        const RationalMatrix ker = exact_kernel(m);
        CHECK(ker.cols() == 2);
        for (int j = 0; j < 2; ++j) {
            Rational acc(0);
            for (int i = 0; i < 3; ++i) acc += m(0, i) * ker(i, j);
            CHECK(acc == 0);
        }
    }
    SUBCASE("kernel of divergence symbol at a rational direction") {
        RationalVector xi(3);
        xi << Rational(1), make_rational(2, 3), make_rational(-1, 2);
        const RationalMatrix ker = exact_kernel(make_divergence(3).eval_exact(xi));
        CHECK(ker.cols() == 2);
    }
    SUBCASE("column space and containment") {
        RationalMatrix m(3, 3);
        m << Rational(1), Rational(0), Rational(1),
             Rational(0), Rational(1), Rational(1),
             Rational(0), Rational(0), Rational(0);
        const RationalMatrix space = exact_column_space(m);
        CHECK(space.cols() == 2);
        RationalVector v(3);
        v << Rational(5), Rational(-3), Rational(0);
        CHECK(exact_contains(space, v));
        v(2) = Rational(1);
        CHECK(!exact_contains(space, v));
    }
    SUBCASE("exact intersection recovers a constructed common line") {
        RationalMatrix b1(4, 2), b2(4, 2);
        b1 << Rational(1), Rational(0),
              Rational(1), Rational(1),
              Rational(0), Rational(2),
              Rational(0), Rational(0);
        b2 << Rational(1), Rational(0),
              Rational(1), Rational(0),
              Rational(0), Rational(1),
              Rational(0), Rational(3);
        const RationalMatrix inter = exact_intersect(b1, b2);
        REQUIRE(inter.cols() == 1);
        // the common vector is (1,1,0,0)
        CHECK(inter(0, 0) != 0);
        CHECK(inter(0, 0) == inter(1, 0));
        CHECK(inter(2, 0) == 0);
        CHECK(inter(3, 0) == 0);
    }
    SUBCASE("exact and numeric kernels of the same rational matrix agree in dimension") {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int> num(-9, 9);
        std::uniform_int_distribution<int> den(1, 4);
        for (int trial = 0; trial < 20; ++trial) {
            RationalMatrix m(3, 4);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 4; ++c) m(r, c) = make_rational(num(rng), den(rng));
            if (trial % 3 == 0) m.row(2) = m.row(0) + m.row(1);
            Eigen::MatrixXd md(3, 4);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 4; ++c) md(r, c) = to_double(m(r, c));
            CHECK(exact_kernel(m).cols() == kernel(md).dim());
        }
    }
}

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("3/4") == make_rational(3, 4));
    CHECK(parse_rational("-6/8") == make_rational(-3, 4));
    CHECK(parse_rational("+2") == Rational(2));
    CHECK(format_rational(make_rational(-6, 8)) == "-3/4");
    CHECK(format_rational(Rational(7)) == "7");
    CHECK_THROWS_AS(parse_rational("1/-2"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK(rationalize(0.5, 64) == make_rational(1, 2));
    CHECK(rationalize(-0.3333333333333333, 64) == make_rational(-1, 3));
    CHECK(rationalize(1e-9, 64) == Rational(0));
}
