#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "opsym/catalog.hpp"
#include "opsym/errors.hpp"
#include "opsym/spectral.hpp"

using namespace opsym;

namespace {

TorusGrid small_grid(int n, int size) {
    TorusGrid g;
    g.n = n;
    g.size = size;
    return g;
}

TorusField gaussian_scalar(const TorusGrid& grid, double sigma) {
    Eigen::VectorXd one(1);
    one << 1.0;
    return gaussian_bump(grid, one, sigma, center_digits(grid));
}

}  // namespace

TEST_CASE("transform round trip and Parseval") {
    std::mt19937_64 rng(1);
    const TorusGrid grid = small_grid(2, 32);
    const TorusField u = random_band_limited(grid, 3, 6, rng);
    SUBCASE("forward then inverse reproduces the field within 1e-10") {
        const TorusField back = u.to_frequency().to_physical();
        CHECK((back.values() - u.values()).cwiseAbs().maxCoeff() <
              1e-10 * u.values().cwiseAbs().maxCoeff());
    }
    SUBCASE("real fields have conjugate-symmetric spectra within 1e-10") {
        CHECK(u.max_imag() < 1e-10);
        const TorusField freq = u.to_frequency();
        const auto strides = grid.strides();
        Eigen::VectorXd m(grid.n);
        for (GridWalker w(grid); !w.done(); w.advance()) {
            if (w.nyquist()) continue;
            int64_t mirror = 0;
            for (int a = 0; a < grid.n; ++a) {
                const int digit = w.digits()[static_cast<size_t>(a)];
                mirror += strides[static_cast<size_t>(a)] * ((grid.size - digit) % grid.size);
            }
            for (int c = 0; c < u.dim(); ++c)
                CHECK(std::abs(freq.values()(c, w.index()) -
                               std::conj(freq.values()(c, mirror))) < 1e-10);
        }
    }
    SUBCASE("physical and frequency L2 norms agree within 1e-10 (Parseval)") {
        CHECK(lp_norm(u, 2.0) ==
              doctest::Approx(l2_norm_frequency(u)).epsilon(1e-10));
    }
}

TEST_CASE("apply_operator on a plane wave is exact on the lattice") {
    const TorusGrid grid = small_grid(3, 16);
    const SymbolOperator a = make_divcurl();
    Eigen::VectorXi m(3);
    m << 3, -2, 5;
    Eigen::VectorXcd v(3);
    v << std::complex<double>(1, 0), std::complex<double>(0, 2), std::complex<double>(-1, 1);
    const TorusField u = plane_wave(grid, m, v);
    const TorusField out = apply_operator(a, u);

    const Eigen::MatrixXd sym = a.eval(m.cast<double>());
    const std::complex<double> factor(0, 2 * M_PI);  // (2 pi i)^1
    Eigen::VectorXcd expected_amp = factor * (sym.cast<std::complex<double>>() * v);
    const TorusField expected = plane_wave(grid, m, expected_amp);
    CHECK((out.values() - expected.values()).cwiseAbs().maxCoeff() <
          1e-12 * expected.values().cwiseAbs().maxCoeff());
}

TEST_CASE("apply_operator kills constants and is linear") {
    const TorusGrid grid = small_grid(2, 16);
    const SymbolOperator a = make_symmetric_derivative(2);
    TorusField c(grid, 2, true);
    c.values().setConstant(std::complex<double>(0.7, 0.0));
    CHECK(max_abs(apply_operator(a, c)) < 1e-12);

    std::mt19937_64 rng(2);
    const TorusField u = random_band_limited(grid, 2, 4, rng);
    const TorusField v = random_band_limited(grid, 2, 4, rng);
    const TorusField lhs = apply_operator(a, u * 2.5 + v * (-1.25));
    const TorusField rhs = apply_operator(a, u) * 2.5 + apply_operator(a, v) * (-1.25);
    CHECK((lhs.values() - rhs.values()).cwiseAbs().maxCoeff() <
          1e-12 * (1.0 + rhs.values().cwiseAbs().maxCoeff()));
}

TEST_CASE("spectral gradient matches centered finite differences at O(N^-2)") {
    const SymbolOperator grad = make_gradient(2);
    std::vector<double> errors;
    for (int size : {32, 64, 128}) {
        const TorusGrid grid = small_grid(2, size);
        const TorusField u = gaussian_scalar(grid, 0.1);
        const TorusField du = apply_operator(grad, u);
        // centered differences along each axis
        const auto strides = grid.strides();
        const double h = grid.spacing();
        double worst = 0.0;
        for (GridWalker w(grid); !w.done(); w.advance()) {
            for (int axis = 0; axis < 2; ++axis) {
                const int digit = w.digits()[static_cast<size_t>(axis)];
                const int64_t stride = strides[static_cast<size_t>(axis)];
                const int64_t fwd = w.index() + ((digit + 1 < size) ? stride : stride - size * stride);
                const int64_t bwd = w.index() - ((digit > 0) ? stride : stride - size * stride);
                const double fd =
                    (u.values()(0, fwd).real() - u.values()(0, bwd).real()) / (2 * h);
                worst = std::max(worst, std::abs(fd - du.values()(axis, w.index()).real()));
            }
        }
        errors.push_back(worst);
    }
    CHECK(errors[0] / errors[1] > 3.0);
    CHECK(errors[1] / errors[2] > 3.0);
}

TEST_CASE("solve_least_squares") {
    SUBCASE("round trip on a random band-limited field (div-curl)") {
        const TorusGrid grid = small_grid(3, 16);
        std::mt19937_64 rng(3);
        TorusField u0 = random_band_limited(grid, 3, 4, rng);
        const TorusField f = apply_operator(make_divcurl(), u0);
        const TorusField u = solve_least_squares(make_divcurl(), f);
        double scale = max_abs(u0);
        CHECK((u.values() - u0.values()).cwiseAbs().maxCoeff() < 1e-8 * scale);
    }
    SUBCASE("f = 0 gives u = 0") {
        const TorusGrid grid = small_grid(2, 8);
        const TorusField zero(grid, 4, true);
        CHECK(max_abs(solve_least_squares(make_symmetric_derivative(2), zero)) == 0.0);
    }
    SUBCASE("scalar Poisson round trip (laplacian)") {
        const TorusGrid grid = small_grid(3, 16);
        std::mt19937_64 rng(4);
        TorusField u0 = random_band_limited(grid, 1, 4, rng);
        const TorusField f = apply_operator(make_laplacian(3), u0);
        const TorusField u = solve_least_squares(make_laplacian(3), f);
        CHECK((u.values() - u0.values()).cwiseAbs().maxCoeff() < 1e-8 * max_abs(u0));
    }
    SUBCASE("non-elliptic symbols are rejected as ill-posed") {
        const TorusGrid grid = small_grid(3, 8);
        const TorusField f(grid, 1, true);
        CHECK_THROWS_AS(solve_least_squares(make_divergence(3), f), InputError);
    }
}

TEST_CASE("norms") {
    SUBCASE("Gaussian bump: L1 close to 1 (mass-normalized) and Lp scaling") {
        const TorusGrid grid = small_grid(2, 64);
        const TorusField u = gaussian_scalar(grid, 0.03);
        CHECK(lp_norm(u, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
        // analytic L2 of the continuum Gaussian: 1/(2 sigma sqrt(pi)) per axis
        const double sigma = 0.03;
        const double l2_exact = std::pow(4.0 * M_PI * sigma * sigma, -0.5);
        CHECK(lp_norm(u, 2.0) == doctest::Approx(l2_exact).epsilon(1e-3));
        CHECK(lp_norm(u * (-2.5), 2.0) == doctest::Approx(2.5 * lp_norm(u, 2.0)).epsilon(1e-12));
    }
    SUBCASE("sobolev_grad_norm of order 1 equals the l2 frequency formula") {
        const TorusGrid grid = small_grid(2, 32);
        std::mt19937_64 rng(5);
        const TorusField u = random_band_limited(grid, 1, 6, rng);
        const double direct = sobolev_grad_norm(u, 1, 2.0);
        const TorusField freq = u.to_frequency();
        double acc = 0.0;
        Eigen::VectorXd m(2);
        for (GridWalker w(grid); !w.done(); w.advance()) {
            w.frequency(m);
            acc += std::pow(2 * M_PI, 2) * m.squaredNorm() *
                   freq.values().col(w.index()).squaredNorm();
        }
        CHECK(direct == doctest::Approx(std::sqrt(acc)).epsilon(1e-10));
    }
    SUBCASE("hardy norm respects the support-distance bound") {
        const TorusGrid grid = small_grid(3, 32);
        // bump centered away from the weight center
        std::vector<int> off_center = center_digits(grid);
        off_center[0] += 8;  // distance 0.25
        Eigen::VectorXd e(1);
        e << 1.0;
        const TorusField u = gaussian_bump(grid, e, 0.02, off_center, 4.0);
        const HardyNorm hn = hardy_norm(u, 1.0, center_digits(grid));
        const double support_distance = 0.25 - 4.0 * 0.02;
        CHECK(hn.value <= lp_norm(u, 1.0) / support_distance * 1.0001);
        CHECK(hn.excluded_bound < 1e-12);
    }
}

TEST_CASE("kernel projection makes L(D) f vanish to machine precision") {
    const TorusGrid grid = small_grid(3, 16);
    std::mt19937_64 rng(6);
    const SymbolOperator div = make_divergence(3);
    const TorusField f = project_onto_kernel(div, random_band_limited(grid, 3, 4, rng));
    CHECK(max_abs(f) > 0.0);
    const double residual = max_abs(apply_operator(div, f));
    CHECK(residual / max_abs(f) < 1e-9 * 2 * M_PI * grid.size);
    // mean is dropped by the projection
    const TorusField freq = f.to_frequency();
    CHECK(freq.values().col(0).norm() < 1e-12);
}

TEST_CASE("convolution with a mass-one mollifier preserves mass and smooths") {
    const TorusGrid grid = small_grid(2, 64);
    const TorusField u = gaussian_scalar(grid, 0.02);
    Eigen::VectorXd one(1);
    one << 1.0;
    const TorusField mol = gaussian_bump(grid, one, 0.05, center_digits(grid), 4.0);
    const TorusField smoothed = convolve(u, mol);
    CHECK(lp_norm(smoothed, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(max_abs(smoothed) < max_abs(u));
}

TEST_CASE("grid validation") {
    TorusGrid g;
    g.n = 5;
    CHECK_THROWS_AS(g.validate(), InputError);
    g.n = 3;
    g.size = 24;
    CHECK_THROWS_AS(g.validate(), InputError);
    g.size = 1 << 10;
    g.memory_cap = 1 << 20;
    CHECK_THROWS_AS(g.validate(), InputError);  // 2^30 points over the cap
}
