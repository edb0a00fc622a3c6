#include "opsym/spectral.hpp"

#include <cmath>

#include "opsym/errors.hpp"
#include "opsym/linalg.hpp"
#include "opsym/sphere.hpp"

namespace opsym {

namespace {

std::complex<double> two_pi_i_pow(int k) {
    const double mag = std::pow(2.0 * M_PI, k);
    switch (((k % 4) + 4) % 4) {
        case 0: return {mag, 0};
        case 1: return {0, mag};
        case 2: return {-mag, 0};
        default: return {0, -mag};
    }
}

// Min-image displacement from the center grid point, in physical units.
void displacement(const TorusGrid& grid, const std::vector<int>& digits,
                  const std::vector<int>& center, Eigen::VectorXd& out) {
    const double h = grid.spacing();
    out.resize(grid.n);
    for (int a = 0; a < grid.n; ++a) {
        int d = digits[static_cast<size_t>(a)] - center[static_cast<size_t>(a)];
        if (d > grid.size / 2) d -= grid.size;
        if (d < -grid.size / 2) d += grid.size;
        out(a) = d * h;
    }
}

void check_physical(const TorusField& u, const char* where) {
    if (!u.is_physical()) throw InputError(std::string(where) + ": expected a physical-space field");
}

}  // namespace

std::vector<int> center_digits(const TorusGrid& grid) {
    return std::vector<int>(static_cast<size_t>(grid.n), grid.size / 2);
}

TorusField apply_operator(const SymbolOperator& a, const TorusField& u) {
    check_physical(u, "apply_operator");
    if (u.dim() != a.dimV())
        throw InputError("apply_operator: field has " + std::to_string(u.dim()) +
                         " components, operator source has " + std::to_string(a.dimV()));
    if (u.grid().n != a.n()) throw InputError("apply_operator: grid dimension != operator n");
    const TorusField freq = u.to_frequency();
    TorusField out(u.grid(), a.dimE(), /*physical=*/false);
    const std::complex<double> factor = two_pi_i_pow(a.k());
    const double inv_period = 1.0 / u.grid().period;
    Eigen::VectorXd m(u.grid().n), xi(u.grid().n);
    Eigen::MatrixXd sym(a.dimE(), a.dimV());
    Eigen::MatrixXcd symc(a.dimE(), a.dimV());
    for (GridWalker w(u.grid()); !w.done(); w.advance()) {
        if (w.nyquist()) continue;
        w.frequency(m);
        xi = m * inv_period;
        a.eval_into(xi, sym);
        symc = sym.cast<std::complex<double>>();
        out.values().col(w.index()).noalias() = factor * (symc * freq.values().col(w.index()));
    }
    return out.to_physical();
}

TorusField solve_least_squares(const SymbolOperator& a, const TorusField& f) {
    check_physical(f, "solve_least_squares");
    if (f.dim() != a.dimE())
        throw InputError("solve_least_squares: field has " + std::to_string(f.dim()) +
                         " components, operator target has " + std::to_string(a.dimE()));
    if (f.grid().n != a.n()) throw InputError("solve_least_squares: grid dimension != operator n");
    // Cheap ill-posedness screen: the symbol must be injective on sample directions.
    {
        const auto dirs = sphere_points(a.n(), 64);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const auto& xi : dirs) {
            Eigen::JacobiSVD<Eigen::MatrixXd> dec(a.eval(xi));
            const auto& s = dec.singularValues();
            hi = std::max(hi, s.size() ? s(0) : 0.0);
            lo = std::min(lo, min_singular_value(a.eval(xi)));
        }
        if (!(lo > 1e-10 * hi))
            throw InputError("solve_least_squares: '" + a.name() +
                             "' is not injectively elliptic; the problem is ill-posed");
    }
    const TorusField freq = f.to_frequency();
    TorusField out(f.grid(), a.dimV(), /*physical=*/false);
    const std::complex<double> factor = 1.0 / two_pi_i_pow(a.k());
    const double inv_period = 1.0 / f.grid().period;
    Eigen::VectorXd m(f.grid().n), xi(f.grid().n);
    Eigen::MatrixXd sym(a.dimE(), a.dimV());
    Eigen::MatrixXcd pinvc(a.dimV(), a.dimE());
    Eigen::JacobiSVD<Eigen::MatrixXd> dec(a.dimE(), a.dimV(),
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const bool single_column = (a.dimV() == 1);
    for (GridWalker w(f.grid()); !w.done(); w.advance()) {
        if (w.is_zero_frequency() || w.nyquist()) continue;
        w.frequency(m);
        xi = m * inv_period;
        a.eval_into(xi, sym);
        if (single_column) {
            // pinv of a column a is aᵀ/|a|²; exact on injective symbols.
            const double norm2 = sym.col(0).squaredNorm();
            std::complex<double> acc = 0.0;
            for (int r = 0; r < a.dimE(); ++r) acc += sym(r, 0) * freq.values()(r, w.index());
            out.values()(0, w.index()) = factor * acc / norm2;
        } else {
            dec.compute(sym);
            const auto& s = dec.singularValues();
            const double cut = kDefaultRankTol * s(0);
            Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
            for (Eigen::Index i = 0; i < s.size(); ++i)
                if (s(i) > cut) inv(i) = 1.0 / s(i);
            pinvc = (dec.matrixV() * inv.asDiagonal() * dec.matrixU().transpose())
                        .cast<std::complex<double>>();
            out.values().col(w.index()).noalias() = factor * (pinvc * freq.values().col(w.index()));
        }
    }
    return out.to_physical();
}

TorusField derivative_field(const TorusField& u, const Multiindex& beta) {
    check_physical(u, "derivative_field");
    if (beta.dims() != u.grid().n) throw InputError("derivative_field: multiindex dimension");
    const TorusField freq = u.to_frequency();
    TorusField out(u.grid(), u.dim(), /*physical=*/false);
    const std::complex<double> factor = two_pi_i_pow(beta.order());
    const double inv_period = 1.0 / u.grid().period;
    Eigen::VectorXd m(u.grid().n), xi(u.grid().n);
    for (GridWalker w(u.grid()); !w.done(); w.advance()) {
        if (w.nyquist()) continue;
        w.frequency(m);
        xi = m * inv_period;
        out.values().col(w.index()) = factor * beta.pow(xi) * freq.values().col(w.index());
    }
    return out.to_physical();
}

double lp_norm(const TorusField& u, double p) {
    check_physical(u, "lp_norm");
    if (p < 1.0) throw InputError("lp_norm: p must be >= 1");
    const double cell = std::pow(u.grid().spacing(), u.grid().n);
    if (std::isinf(p)) {
        double top = 0.0;
        for (int64_t i = 0; i < u.total(); ++i) top = std::max(top, u.values().col(i).norm());
        return top;
    }
    double acc = 0.0;
    for (int64_t i = 0; i < u.total(); ++i) acc += std::pow(u.values().col(i).norm(), p);
    return std::pow(cell * acc, 1.0 / p);
}

double l2_norm_frequency(const TorusField& u) {
    const TorusField freq = u.is_physical() ? u.to_frequency() : u;
    return std::sqrt(freq.values().squaredNorm());
}

double sobolev_grad_norm(const TorusField& u, int j, double p) {
    if (j == 0) return lp_norm(u, p);
    const auto betas = Multiindex::all_of_order(u.grid().n, j);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(u.total());
    for (const auto& beta : betas) {
        const TorusField db = derivative_field(u, beta);
        const double weight = beta.multinomial();
        for (int64_t i = 0; i < u.total(); ++i)
            acc(i) += weight * db.values().col(i).squaredNorm();
    }
    const double cell = std::pow(u.grid().spacing(), u.grid().n);
    if (std::isinf(p)) return std::sqrt(acc.maxCoeff());
    double sum = 0.0;
    for (int64_t i = 0; i < u.total(); ++i) sum += std::pow(acc(i), p / 2.0);
    return std::pow(cell * sum, 1.0 / p);
}

HardyNorm hardy_norm(const TorusField& u, double a, const std::vector<int>& center) {
    check_physical(u, "hardy_norm");
    const TorusGrid& grid = u.grid();
    if (static_cast<int>(center.size()) != grid.n) throw InputError("hardy_norm: bad center");
    const double cell = std::pow(grid.spacing(), grid.n);
    HardyNorm out;
    Eigen::VectorXd x(grid.n);
    int64_t center_idx = 0;
    {
        const auto strides = grid.strides();
        for (int i = 0; i < grid.n; ++i)
            center_idx += strides[static_cast<size_t>(i)] * center[static_cast<size_t>(i)];
    }
    for (GridWalker w(grid); !w.done(); w.advance()) {
        if (w.index() == center_idx) continue;
        displacement(grid, w.digits(), center, x);
        out.value += u.values().col(w.index()).norm() * std::pow(x.norm(), -a) * cell;
    }
    // Bound on the excluded cell: |u(c)| ∫_{ball h√n/2} |y|^{-a} dy, valid for a < n.
    const double h = grid.spacing();
    const double rad = h * std::sqrt(static_cast<double>(grid.n)) / 2.0;
    const double area = 2.0 * std::pow(M_PI, grid.n / 2.0) / std::tgamma(grid.n / 2.0);
    if (a < grid.n)
        out.excluded_bound =
            u.values().col(center_idx).norm() * area * std::pow(rad, grid.n - a) / (grid.n - a);
    else
        out.excluded_bound = std::numeric_limits<double>::infinity();
    return out;
}

double max_abs(const TorusField& u) {
    double top = 0.0;
    for (int64_t i = 0; i < u.total(); ++i) top = std::max(top, u.values().col(i).norm());
    return top;
}

TorusField random_band_limited(const TorusGrid& grid, int dim, int band, std::mt19937_64& rng) {
    if (band < 1 || band >= grid.size / 2)
        throw InputError("random_band_limited: band must be in [1, N/2)");
    TorusField freq(grid, dim, /*physical=*/false);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto strides = grid.strides();
    // Walk the band box in lexicographic order over m; the order and draws are
    // independent of N so grid refinement reproduces the same function.
    std::vector<int> m(static_cast<size_t>(grid.n), -band);
    auto advance = [&]() {
        for (int a = grid.n - 1; a >= 0; --a) {
            if (++m[static_cast<size_t>(a)] <= band) return true;
            m[static_cast<size_t>(a)] = -band;
        }
        return false;
    };
    while (true) {
        // Keep only the positive half (first nonzero component > 0); mirror the rest.
        int first_nonzero = 0;
        for (int a = 0; a < grid.n; ++a) {
            if (m[static_cast<size_t>(a)] != 0) {
                first_nonzero = m[static_cast<size_t>(a)];
                break;
            }
        }
        if (first_nonzero > 0) {
            int64_t idx_pos = 0, idx_neg = 0;
            for (int a = 0; a < grid.n; ++a) {
                const int digit_pos =
                    m[static_cast<size_t>(a)] >= 0 ? m[static_cast<size_t>(a)]
                                                   : m[static_cast<size_t>(a)] + grid.size;
                const int digit_neg =
                    -m[static_cast<size_t>(a)] >= 0 ? -m[static_cast<size_t>(a)]
                                                    : -m[static_cast<size_t>(a)] + grid.size;
                idx_pos += strides[static_cast<size_t>(a)] * digit_pos;
                idx_neg += strides[static_cast<size_t>(a)] * digit_neg;
            }
            for (int c = 0; c < dim; ++c) {
                const std::complex<double> z(gauss(rng), gauss(rng));
                freq.values()(c, idx_pos) = 0.5 * z;
                freq.values()(c, idx_neg) = 0.5 * std::conj(z);
            }
        }
        if (!advance()) break;
    }
    return freq.to_physical().real_part();
}

TorusField plane_wave(const TorusGrid& grid, const Eigen::VectorXi& m,
                      const Eigen::VectorXcd& v) {
    if (m.size() != grid.n) throw InputError("plane_wave: frequency dimension mismatch");
    TorusField freq(grid, static_cast<int>(v.size()), /*physical=*/false);
    const auto strides = grid.strides();
    int64_t idx = 0;
    for (int a = 0; a < grid.n; ++a) {
        int digit = m(a) >= 0 ? m(a) : m(a) + grid.size;
        if (digit < 0 || digit >= grid.size) throw InputError("plane_wave: frequency out of range");
        idx += strides[static_cast<size_t>(a)] * digit;
    }
    freq.values().col(idx) = v;
    return freq.to_physical();
}

TorusField gaussian_bump(const TorusGrid& grid, const Eigen::VectorXd& e, double width,
                         const std::vector<int>& center, double truncate_sigmas) {
    if (width <= 0) throw InputError("gaussian_bump: width must be positive");
    TorusField out(grid, static_cast<int>(e.size()), /*physical=*/true);
    Eigen::VectorXd x(grid.n);
    const double cutoff2 = truncate_sigmas > 0
                               ? truncate_sigmas * truncate_sigmas * width * width
                               : std::numeric_limits<double>::infinity();
    double mass = 0.0;
    std::vector<double> profile(static_cast<size_t>(grid.total()), 0.0);
    for (GridWalker w(grid); !w.done(); w.advance()) {
        displacement(grid, w.digits(), center, x);
        const double r2 = x.squaredNorm();
        if (r2 > cutoff2) continue;
        const double g = std::exp(-r2 / (2.0 * width * width));
        profile[static_cast<size_t>(w.index())] = g;
        mass += g;
    }
    const double cell = std::pow(grid.spacing(), grid.n);
    const double scale = 1.0 / (mass * cell);
    const Eigen::VectorXcd ec = e.cast<std::complex<double>>();
    for (int64_t i = 0; i < grid.total(); ++i)
        if (profile[static_cast<size_t>(i)] != 0.0)
            out.values().col(i) = (profile[static_cast<size_t>(i)] * scale) * ec;
    return out;
}

TorusField project_onto_kernel(const SymbolOperator& l, const TorusField& f, double tol) {
    check_physical(f, "project_onto_kernel");
    if (f.dim() != l.dimV())
        throw InputError("project_onto_kernel: field components != operator source dimension");
    const TorusField freq = f.to_frequency();
    TorusField out(f.grid(), f.dim(), /*physical=*/false);
    const double inv_period = 1.0 / f.grid().period;
    Eigen::VectorXd m(f.grid().n), xi(f.grid().n);
    for (GridWalker w(f.grid()); !w.done(); w.advance()) {
        if (w.is_zero_frequency() || w.nyquist()) continue;  // cocancelling limit forces f̂(0)=0
        w.frequency(m);
        xi = m * inv_period;
        const Subspace ker = kernel(l.eval(xi), tol);
        if (ker.dim() == 0) continue;
        const Eigen::MatrixXcd proj =
            (ker.basis * ker.basis.transpose()).cast<std::complex<double>>();
        out.values().col(w.index()) = proj * freq.values().col(w.index());
    }
    return out.to_physical().real_part();
}

TorusField apply_radial_cutoff(const TorusField& u, const std::vector<int>& center, double inner,
                               double outer) {
    check_physical(u, "apply_radial_cutoff");
    if (!(0 < inner && inner < outer)) throw InputError("apply_radial_cutoff: need 0 < inner < outer");
    TorusField out = u;
    Eigen::VectorXd x(u.grid().n);
    for (GridWalker w(u.grid()); !w.done(); w.advance()) {
        displacement(u.grid(), w.digits(), center, x);
        const double r = x.norm();
        double chi;
        if (r <= inner) {
            chi = 1.0;
        } else if (r >= outer) {
            chi = 0.0;
        } else {
            const double t = (outer - r) / (outer - inner);
            chi = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));  // quintic smoothstep
        }
        out.values().col(w.index()) *= chi;
    }
    return out;
}

TorusField convolve(const TorusField& u, const TorusField& kernel) {
    check_physical(u, "convolve");
    check_physical(kernel, "convolve");
    if (!(u.grid() == kernel.grid()) || kernel.dim() != 1)
        throw InputError("convolve: kernel must be a scalar field on the same grid");
    const TorusField fu = u.to_frequency();
    const TorusField fk = kernel.to_frequency();
    TorusField out(u.grid(), u.dim(), /*physical=*/false);
    // Fourier coefficients multiply by the kernel's integral transform, which is
    // period^n times its synthesis coefficient.
    const double scale = std::pow(u.grid().period, u.grid().n);
    for (int64_t i = 0; i < u.total(); ++i)
        out.values().col(i) = fu.values().col(i) * (scale * fk.values()(0, i));
    return out.to_physical();
}

double inner_product(const TorusField& f, const TorusField& g) {
    check_physical(f, "inner_product");
    check_physical(g, "inner_product");
    if (!(f.grid() == g.grid()) || f.dim() != g.dim())
        throw InputError("inner_product: mismatched fields");
    const double cell = std::pow(f.grid().spacing(), f.grid().n);
    std::complex<double> acc = 0.0;
    for (int64_t i = 0; i < f.total(); ++i)
        acc += f.values().col(i).dot(g.values().col(i));
    return (acc * cell).real();
}

}  // namespace opsym
