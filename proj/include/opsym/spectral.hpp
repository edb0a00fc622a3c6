#pragma once

#include <cstdint>
#include <random>

#include "opsym/symbol_operator.hpp"
#include "opsym/torus.hpp"

namespace opsym {

/// F(A(D)u)(ξ) = (2πi)^k A(ξ) Fu(ξ): transform, multiply per frequency,
/// transform back. Nyquist planes are annihilated. Input physical V-valued,
/// output physical E-valued.
TorusField apply_operator(const SymbolOperator& a, const TorusField& u);

/// Fu(ξ) = (2πi)^{−k} A(ξ)† Ff(ξ) for ξ ≠ 0, zero mean. Recovers zero-mean u
/// from f = A(D)u when A is injectively elliptic; throws on ill-posed symbols.
TorusField solve_least_squares(const SymbolOperator& a, const TorusField& f);

/// ∂^β u via the spectral multiplier (2πi ξ)^β.
TorusField derivative_field(const TorusField& u, const Multiindex& beta);

/// Riemann-sum L^p norm of the pointwise Euclidean magnitude; p = inf allowed.
double lp_norm(const TorusField& u, double p);

/// Frequency-side l² norm; equals lp_norm(u, 2) by Parseval on unit-period grids.
double l2_norm_frequency(const TorusField& u);

/// ‖ |D^j u| ‖_p with |D^j u(x)|² = Σ_{|β|=j} (j!/β!) |∂^β u(x)|².
double sobolev_grad_norm(const TorusField& u, int j, double p);

struct HardyNorm {
    double value = 0.0;          // Σ_{x != center} |u(x)| dist(x)^-a h^n
    double excluded_bound = 0.0; // bound on the skipped singular-cell mass
};
/// Weighted L¹ norm with the min-image distance weight centered at a grid point.
HardyNorm hardy_norm(const TorusField& u, double a, const std::vector<int>& center_digits);

/// Pointwise |u(x)| maximum.
double max_abs(const TorusField& u);

/// Real band-limited random field: conjugate-symmetric unit-variance Gaussian
/// coefficients on { m : |m_i| <= band } \ {0}. The draw order depends only on
/// (band, dim), never on N, so refining the grid reproduces the same function.
TorusField random_band_limited(const TorusGrid& grid, int dim, int band, std::mt19937_64& rng);

/// v e^{2πi m·x} with real amplitude pattern cos/sin pair: returns the complex
/// exponential field (used where exact lattice identities are asserted).
TorusField plane_wave(const TorusGrid& grid, const Eigen::VectorXi& m,
                      const Eigen::VectorXcd& v);

/// Normalized Gaussian bump of standard deviation `width` centered at the grid
/// point `center_digits`, discrete mass h^n Σ = 1, times the direction vector e.
TorusField gaussian_bump(const TorusGrid& grid, const Eigen::VectorXd& e, double width,
                         const std::vector<int>& center_digits, double truncate_sigmas = -1.0);

/// Projects Ff(ξ) onto ker L(ξ) per frequency (zero and Nyquist modes dropped),
/// so L(D)f = 0 to machine precision afterwards.
TorusField project_onto_kernel(const SymbolOperator& l, const TorusField& f, double tol = 1e-8);

/// Pointwise multiply by a radial cutoff: 1 inside `inner`, 0 outside `outer`,
/// quintic smoothstep between, radii measured from the center grid point.
TorusField apply_radial_cutoff(const TorusField& u, const std::vector<int>& center_digits,
                               double inner, double outer);

/// Convolution with a mass-one kernel field via the frequency product.
TorusField convolve(const TorusField& u, const TorusField& kernel);

/// ∫ f·g (real part of the Riemann sum of pointwise inner products).
double inner_product(const TorusField& f, const TorusField& g);

/// Center of the grid (N/2 per axis) — the canonical singularity location.
std::vector<int> center_digits(const TorusGrid& grid);

}  // namespace opsym
