#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "opsym/catalog.hpp"
#include "opsym/errors.hpp"
#include "opsym/poly_matrix.hpp"
#include "opsym/symbol_operator.hpp"

using namespace opsym;

namespace {

// Independent determinant oracle: plain recursive cofactor expansion, no
// sharing with the library's subset-DP implementation.
Polynomial cofactor_det(const PolyMatrix& m, std::vector<int> rows, std::vector<int> cols) {
    if (rows.empty()) return Polynomial::constant(m.vars(), 1);
    Polynomial acc(m.vars());
    for (size_t j = 0; j < cols.size(); ++j) {
        std::vector<int> sub_rows(rows.begin() + 1, rows.end());
        std::vector<int> sub_cols = cols;
        sub_cols.erase(sub_cols.begin() + static_cast<long>(j));
        Polynomial term = m(rows[0], cols[j]) * cofactor_det(m, sub_rows, sub_cols);
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

Polynomial det_oracle(const PolyMatrix& m) {
    std::vector<int> idx(static_cast<size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) idx[static_cast<size_t>(i)] = i;
    return cofactor_det(m, idx, idx);
}

Polynomial norm2_poly(int n) {
    Polynomial p(n);
    for (int i = 0; i < n; ++i) p += Polynomial::monomial(Multiindex::unit(n, i, 2), 1);
    return p;
}

PolyMatrix random_poly_matrix(int size, int vars, int degree, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    const auto alphas = Multiindex::all_of_order(vars, degree);
    std::uniform_int_distribution<size_t> pick(0, alphas.size() - 1);
    PolyMatrix m(size, size, vars);
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c)
            for (int t = 0; t < 3; ++t)
                m(r, c) += Polynomial::monomial(alphas[pick(rng)], make_rational(num(rng), den(rng)));
    return m;
}

}  // namespace

TEST_CASE("multiindex ordering and enumeration") {
    const auto all = Multiindex::all_of_order(3, 2);
    CHECK(all.size() == 6);
    CHECK(std::is_sorted(all.begin(), all.end()));
    for (const auto& alpha : all) CHECK(alpha.order() == 2);
    CHECK(all.front() == Multiindex({0, 0, 2}));
    CHECK(all.back() == Multiindex({2, 0, 0}));
    CHECK(Multiindex({1, 2, 0}).multinomial() == doctest::Approx(3.0));  // 3!/(1!2!)
    CHECK_THROWS_AS(Multiindex({1, -1}), InputError);
}

TEST_CASE("polynomial arithmetic is exact and drops zeros") {
    Polynomial p = Polynomial::monomial(Multiindex({1, 0}), Rational(1, 3));
    Polynomial q = Polynomial::monomial(Multiindex({1, 0}), Rational(-1, 3));
    CHECK((p + q).is_zero());
    Polynomial r = p * Polynomial::monomial(Multiindex({0, 2}), Rational(3));
    CHECK(r.terms().size() == 1);
    CHECK(r.terms().begin()->first == Multiindex({1, 2}));
    CHECK(r.terms().begin()->second == Rational(1));
    CHECK(r.homogeneous_degree() == 3);

    RationalVector xi(2);
    xi << Rational(1, 2), Rational(2);
    CHECK(r.eval_exact(xi) == Rational(2));  // (1/2) * 4
}

TEST_CASE("eval_symbol on the worked examples") {
    SUBCASE("div-curl at xi=(1,0,0), v=(0,1,0)") {
        const SymbolOperator a = make_divcurl();
        Eigen::VectorXd xi(3), v(3);
        xi << 1, 0, 0;
        v << 0, 1, 0;
        const Eigen::VectorXd out = a.eval(xi) * v;
        CHECK(out(0) == doctest::Approx(0.0));  // xi . v
        CHECK(out(1) == doctest::Approx(0.0));  // (xi x v)_1
        CHECK(out(2) == doctest::Approx(0.0));
        CHECK(out(3) == doctest::Approx(1.0));
    }
    SUBCASE("any operator at xi = 0 gives the zero matrix") {
        const SymbolOperator a = make_symmetric_derivative(3);
        CHECK(a.eval(Eigen::VectorXd::Zero(3)).norm() == 0.0);
    }
    SUBCASE("symmetric derivative at xi=(1,0), v=(0,1)") {
        const SymbolOperator a = make_symmetric_derivative(2);
        Eigen::VectorXd xi(2), v(2);
        xi << 1, 0;
        v << 0, 1;
        const Eigen::VectorXd out = a.eval(xi) * v;  // row-major 2x2 matrix
        CHECK(out(0) == doctest::Approx(0.0));
        CHECK(out(1) == doctest::Approx(0.5));
        CHECK(out(2) == doctest::Approx(0.5));
        CHECK(out(3) == doctest::Approx(0.0));
    }
    SUBCASE("dimension mismatch is an input error") {
        const SymbolOperator a = make_divcurl();
        CHECK_THROWS_AS(a.eval(Eigen::VectorXd::Zero(2)), InputError);
    }
}

TEST_CASE("symbol homogeneity holds exactly in rational arithmetic") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 5);
    const SymbolOperator ops[] = {make_divcurl(), make_symmetric_derivative(2),
                                  make_laplacian(3), make_hodge(4, 2)};
    for (const auto& a : ops) {
        for (int trial = 0; trial < 8; ++trial) {
            RationalVector xi(a.n());
            for (int i = 0; i < a.n(); ++i) xi(i) = make_rational(num(rng), den(rng));
            const Rational t = make_rational(num(rng) == 0 ? 3 : num(rng), den(rng));
            RationalVector txi = xi;
            for (int i = 0; i < a.n(); ++i) txi(i) *= t;
            Rational tk(1);
            for (int p = 0; p < a.k(); ++p) tk *= t;
            const RationalMatrix lhs = a.eval_exact(txi);
            const RationalMatrix rhs = a.eval_exact(xi);
            for (int r = 0; r < a.dimE(); ++r)
                for (int c = 0; c < a.dimV(); ++c) CHECK(lhs(r, c) == tk * rhs(r, c));
        }
    }
}

TEST_CASE("gram symbols match the worked examples") {
    SUBCASE("gradient: M = |xi|^2") {
        const PolyMatrix m = make_gradient(3).gram();
        REQUIRE(m.rows() == 1);
        CHECK(m(0, 0) == norm2_poly(3));
    }
    SUBCASE("div-curl: M = |xi|^2 id_3 (Lagrange identity)") {
        const PolyMatrix m = make_divcurl().gram();
        const Polynomial n2 = norm2_poly(3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                if (r == c)
                    CHECK(m(r, c) == n2);
                else
                    CHECK(m(r, c).is_zero());
            }
    }
    SUBCASE("symmetric derivative n=2: M = (|xi|^2 id + xi xi*)/2") {
        const PolyMatrix m = make_symmetric_derivative(2).gram();
        const Polynomial n2 = norm2_poly(2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                Polynomial expected =
                    Polynomial::monomial(Multiindex::unit(2, r).plus(Multiindex::unit(2, c)),
                                         Rational(1, 2));
                if (r == c) expected += Rational(1, 2) * n2;
                CHECK(m(r, c) == expected);
            }
    }
    SUBCASE("every entry of a gram symbol is homogeneous of degree 2k") {
        const SymbolOperator a = make_hodge(4, 2);
        CHECK(a.gram().homogeneous_degree() == 2 * a.k());
    }
}

TEST_CASE("poly_det and poly_adjugate") {
    SUBCASE("1x1") {
        PolyMatrix m(1, 1, 2);
        m(0, 0) = Polynomial::monomial(Multiindex({1, 1}), Rational(5));
        CHECK(poly_det(m) == m(0, 0));
        CHECK(poly_adjugate(m)(0, 0) == Polynomial::constant(2, 1));
    }
    SUBCASE("|xi|^2 id_3: det = |xi|^6, adj = |xi|^4 id") {
        const Polynomial n2 = norm2_poly(3);
        PolyMatrix m(3, 3, 3);
        for (int i = 0; i < 3; ++i) m(i, i) = n2;
        CHECK(poly_det(m) == n2 * n2 * n2);
        const PolyMatrix adj = poly_adjugate(m);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                if (r == c)
                    CHECK(adj(r, c) == n2 * n2);
                else
                    CHECK(adj(r, c).is_zero());
            }
    }
    SUBCASE("non-square input errors out") {
        CHECK_THROWS_AS(poly_det(PolyMatrix(2, 3, 1)), InputError);
    }
    SUBCASE("random matrices: M adj(M) = det(M) id exactly, det matches the oracle") {
        std::mt19937_64 rng(42);
        for (int trial = 0; trial < 6; ++trial) {
            const PolyMatrix m = random_poly_matrix(3, 2, 2, rng);
            const Polynomial det = poly_det(m);
            CHECK(det == det_oracle(m));
            const PolyMatrix prod = m * poly_adjugate(m);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) {
                    if (r == c)
                        CHECK(prod(r, c) == det);
                    else
                        CHECK(prod(r, c).is_zero());
                }
        }
    }
    SUBCASE("4x4 random, mixed degrees") {
        std::mt19937_64 rng(43);
        PolyMatrix m = random_poly_matrix(4, 2, 1, rng);
        m(1, 2) += Polynomial::constant(2, Rational(1, 7));
        CHECK(poly_det(m) == det_oracle(m));
    }
}

TEST_CASE("polymatrix evaluation commutes with arithmetic") {
    std::mt19937_64 rng(11);
    const PolyMatrix p = random_poly_matrix(3, 3, 1, rng);
    const PolyMatrix q = random_poly_matrix(3, 3, 2, rng);
    RationalVector xi(3);
    xi << Rational(2, 3), Rational(-1, 2), Rational(5);
    const RationalMatrix lhs = (p * q).eval_exact(xi);
    const RationalMatrix rhs = p.eval_exact(xi) * q.eval_exact(xi);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(lhs(r, c) == rhs(r, c));
}

TEST_CASE("operator validation") {
    CHECK_THROWS_AS(SymbolOperator("bad", 2, 1, 1, 1, {}), InputError);
    std::map<Multiindex, RationalMatrix> coeffs;
    coeffs.emplace(Multiindex({2, 0}), RationalMatrix::Zero(1, 1));
    // order 2 key with k = 1 must be rejected
    CHECK_THROWS_AS(SymbolOperator("bad", 2, 1, 1, 1, std::move(coeffs)), InputError);
}

TEST_CASE("symbol round-trips through its polynomial matrix") {
    const SymbolOperator a = make_hodge(3, 1);
    const SymbolOperator b = symbol_from_poly_matrix(a.to_poly_matrix(), a.name());
    CHECK(a == b);
}
