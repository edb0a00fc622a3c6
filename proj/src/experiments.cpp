#include "opsym/experiments.hpp"

#include <cmath>
#include <ostream>

#include "opsym/errors.hpp"

namespace opsym {

TorusGrid ExperimentConfig::make_grid(int size_override, double period) const {
    TorusGrid grid;
    grid.n = grid_dim;
    grid.size = size_override > 0 ? size_override : grid_size;
    grid.period = period;
    grid.memory_cap = memory_cap;
    grid.validate();
    return grid;
}

std::vector<double> ExperimentConfig::ladder() const {
    if (eps_bottom_exp <= eps_top_exp)
        throw InputError("eps ladder: need top exponent < bottom exponent");
    std::vector<double> eps;
    for (int e = eps_top_exp; e <= eps_bottom_exp; ++e) eps.push_back(std::pow(2.0, -e));
    return eps;
}

std::string to_string(Diagnosis d) {
    switch (d) {
        case Diagnosis::Bounded: return "BOUNDED";
        case Diagnosis::BlowUp: return "BLOW-UP";
        case Diagnosis::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

Diagnosis diagnose_ladder(const std::vector<double>& ratios) {
    if (ratios.size() < 2) return Diagnosis::Inconclusive;
    const double first = ratios.front(), last = ratios.back();
    int increases = 0;
    for (size_t i = 1; i < ratios.size(); ++i)
        if (ratios[i] > ratios[i - 1]) ++increases;
    const double steps = static_cast<double>(ratios.size() - 1);
    if (first > 0 && last / first > 2.0 && increases >= 0.8 * steps) return Diagnosis::BlowUp;
    const double lo = *std::min_element(ratios.begin(), ratios.end());
    const double hi = *std::max_element(ratios.begin(), ratios.end());
    if (lo > 0 && hi / lo < 3.0) return Diagnosis::Bounded;
    return Diagnosis::Inconclusive;
}

std::vector<double> RatioTable::ladder_ratios() const {
    std::vector<double> out;
    for (const auto& row : rows)
        if (row.epsilon > 0) out.push_back(row.ratio);
    return out;
}

void RatioTable::write_csv(std::ostream& os) const {
    os << "label,epsilon,ratio,numerator,denominator,grid_N,seed\n";
    char buf[512];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%.17g,%d,%llu\n", row.label.c_str(),
                      row.epsilon, row.ratio, row.numerator, row.denominator, grid_size,
                      static_cast<unsigned long long>(seed));
        os << buf;
    }
}

namespace {

std::mt19937_64 seeded_rng(uint64_t seed, uint64_t stream) {
    return std::mt19937_64(seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull * (stream + 1));
}

std::string eps_label(double eps) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "eps=%.17g", eps);
    return buf;
}

}  // namespace

double boundary_magnitude(const TorusField& u, double radius) {
    const auto center = center_digits(u.grid());
    const double h = u.grid().spacing();
    double top = 0.0;
    Eigen::VectorXd x(u.grid().n);
    for (GridWalker w(u.grid()); !w.done(); w.advance()) {
        double r2 = 0.0;
        for (int a = 0; a < u.grid().n; ++a) {
            int d = w.digits()[static_cast<size_t>(a)] - center[static_cast<size_t>(a)];
            if (d > u.grid().size / 2) d -= u.grid().size;
            if (d < -u.grid().size / 2) d += u.grid().size;
            r2 += double(d) * d * h * h;
        }
        if (r2 >= radius * radius) top = std::max(top, u.values().col(w.index()).norm());
    }
    return top;
}

RatioTable l2_estimate_experiment(const SymbolOperator& a, const ExperimentConfig& cfg,
                                  const EllipticityResult& ell) {
    if (ell.verdict == Verdict::No)
        throw InputError("l2_estimate_experiment: operator is not injectively elliptic");
    RatioTable table;
    table.experiment = "l2";
    table.operator_name = a.name();
    table.grid_dim = a.n();
    table.grid_size = cfg.grid_size;
    table.seed = cfg.seed;

    TorusGrid grid = cfg.make_grid(std::min(cfg.grid_size, 32));
    grid.n = a.n();
    grid.validate();
    auto rng = seeded_rng(cfg.seed, 11);
    const int band = std::min(cfg.band, grid.size / 4);
    Eigen::VectorXd m(grid.n), xi(grid.n);
    Eigen::MatrixXd sym(a.dimE(), a.dimV());
    for (int t = 0; t < cfg.trials; ++t) {
        const TorusField u = random_band_limited(grid, a.dimV(), band, rng);
        const TorusField freq = u.to_frequency();
        double num = 0.0, den = 0.0;
        for (GridWalker w(grid); !w.done(); w.advance()) {
            if (w.nyquist()) continue;
            w.frequency(m);
            const double norm2 = freq.values().col(w.index()).squaredNorm();
            if (norm2 == 0.0) continue;
            num += std::pow(m.squaredNorm(), a.k()) * norm2;
            a.eval_into(m, sym);
            Eigen::VectorXcd av = Eigen::VectorXcd::Zero(a.dimE());
            for (int r = 0; r < a.dimE(); ++r)
                for (int c = 0; c < a.dimV(); ++c)
                    av(r) += sym(r, c) * freq.values()(c, w.index());
            den += av.squaredNorm();
        }
        RatioRow row;
        row.label = "trial=" + std::to_string(t);
        row.numerator = num;
        row.denominator = den;
        row.ratio = (den > 0) ? num / den : 0.0;
        table.rows.push_back(row);
        table.envelope = std::max(table.envelope, row.ratio);
    }
    char note[128];
    std::snprintf(note, sizeof(note), "bound C^2 = %.17g", ell.constant * ell.constant);
    table.notes = note;
    return table;
}

namespace {

// The ladder core shared by the Sobolev and Hardy scans: the numeric kernel
// field G is solved once per direction e, each rung only re-mollifies it.
struct KernelProbe {
    TorusField g;           // V-valued kernel field for the chosen e
    std::vector<int> center;
};

KernelProbe make_kernel_probe(const SymbolOperator& a, const Eigen::VectorXd& e,
                              const TorusGrid& grid) {
    KernelProbe probe;
    probe.center = center_digits(grid);
    const TorusField bump = gaussian_bump(grid, e, 2.0 * grid.spacing(), probe.center);
    probe.g = solve_least_squares(a, bump);
    return probe;
}

TorusField mollify_and_cut(const KernelProbe& probe, double eps, const ExperimentConfig& cfg) {
    const TorusGrid& grid = probe.g.grid();
    Eigen::VectorXd one(1);
    one << 1.0;
    const TorusField mol = gaussian_bump(grid, one, eps, probe.center, 4.0);
    TorusField u = convolve(probe.g, mol).real_part();
    return apply_radial_cutoff(u, probe.center, cfg.cutoff_inner, cfg.cutoff_outer);
}

enum class LadderKind { Sobolev, Hardy };

double ladder_numerator(LadderKind kind, const TorusField& u, const SymbolOperator& a,
                        const ExperimentConfig& cfg, const std::vector<int>& center) {
    if (kind == LadderKind::Sobolev) {
        const double p = double(a.n()) / (a.n() - (a.k() - cfg.ell));
        return sobolev_grad_norm(u, cfg.ell, p);
    }
    const double weight_power = a.k() - cfg.ell;
    if (cfg.ell == 0) return hardy_norm(u, weight_power, center).value;
    // ℓ > 0: weighted L¹ of the pointwise |D^ℓ u|; assemble the magnitude field.
    const auto betas = Multiindex::all_of_order(u.grid().n, cfg.ell);
    TorusField mag(u.grid(), 1, true);
    for (const auto& beta : betas) {
        const TorusField db = derivative_field(u, beta);
        const double wgt = beta.multinomial();
        for (int64_t i = 0; i < u.total(); ++i)
            mag.values()(0, i) += wgt * db.values().col(i).squaredNorm();
    }
    for (int64_t i = 0; i < u.total(); ++i)
        mag.values()(0, i) = std::sqrt(mag.values()(0, i).real());
    return hardy_norm(mag, weight_power, center).value;
}

RatioTable ladder_scan(LadderKind kind, const SymbolOperator& a, const ExperimentConfig& cfg,
                       const AnalysisReport& report) {
    if (report.elliptic == Verdict::No)
        throw InputError("ratio scan: operator is not injectively elliptic");
    if (a.k() - cfg.ell >= a.n())
        throw InputError("ratio scan: requires k - ell < n");
    if (a.n() != cfg.grid_dim)
        throw InputError("ratio scan: config grid dimension != operator n");

    RatioTable table;
    table.experiment = (kind == LadderKind::Sobolev) ? "sobolev" : "hardy";
    table.operator_name = a.name();
    table.grid_dim = cfg.grid_dim;
    table.grid_size = cfg.grid_size;
    table.seed = cfg.seed;

    const TorusGrid grid = cfg.make_grid();
    const auto eps_ladder = cfg.ladder();

    // Direction choice: intersection vector when one exists (the counterexample
    // regime); otherwise the worst of a few random directions, ranked on a
    // cheap coarse grid.
    Eigen::VectorXd e;
    if (report.intersection.dim() > 0) {
        e = report.intersection.basis.col(0);
        table.notes = "direction: intersection basis vector";
    } else {
        auto rng = seeded_rng(cfg.seed, 21);
        std::normal_distribution<double> gauss;
        const int coarse_size = std::min(grid.size, 32);
        TorusGrid coarse = grid;
        coarse.size = coarse_size;
        coarse.validate();
        ExperimentConfig coarse_cfg = cfg;
        coarse_cfg.grid_size = coarse_size;
        double worst = -1.0;
        for (int probe = 0; probe < std::max(1, cfg.probe_directions); ++probe) {
            Eigen::VectorXd cand(a.dimE());
            for (int i = 0; i < a.dimE(); ++i) cand(i) = gauss(rng);
            cand.normalize();
            const KernelProbe kp = make_kernel_probe(a, cand, coarse);
            const TorusField u = mollify_and_cut(kp, eps_ladder.back(), coarse_cfg);
            const double den = lp_norm(apply_operator(a, u), 1.0);
            const double num = ladder_numerator(kind, u, a, coarse_cfg, kp.center);
            const double ratio = den > 0 ? num / den : 0.0;
            if (ratio > worst) {
                worst = ratio;
                e = cand;
            }
        }
        table.notes = "direction: worst of " + std::to_string(cfg.probe_directions) +
                      " random candidates";
    }

    const KernelProbe probe = make_kernel_probe(a, e, grid);
    for (double eps : eps_ladder) {
        const TorusField u = mollify_and_cut(probe, eps, cfg);
        const double wrap = boundary_magnitude(u, 0.45);
        const double peak = max_abs(u);
        if (peak > 0 && wrap > 1e-6 * peak)
            throw NumericError("ratio scan: wrap-around contamination above tolerance");
        RatioRow row;
        row.label = eps_label(eps);
        row.epsilon = eps;
        row.denominator = lp_norm(apply_operator(a, u), 1.0);
        row.numerator = ladder_numerator(kind, u, a, cfg, probe.center);
        row.ratio = row.denominator > 0 ? row.numerator / row.denominator : 0.0;
        table.rows.push_back(row);
    }
    table.diagnosis = diagnose_ladder(table.ladder_ratios());

    // Cancelling operators: random band-limited fields as additional evidence
    // that the ratio admits a uniform bound.
    if (report.intersection.dim() == 0) {
        auto rng = seeded_rng(cfg.seed, 22);
        const int band = std::min(cfg.band, grid.size / 4);
        const int extra = std::min(cfg.trials, 8);
        for (int t = 0; t < extra; ++t) {
            const TorusField u = random_band_limited(grid, a.dimV(), band, rng);
            RatioRow row;
            row.label = "trial=" + std::to_string(t);
            row.denominator = lp_norm(apply_operator(a, u), 1.0);
            row.numerator = ladder_numerator(kind, u, a, cfg, probe.center);
            row.ratio = row.denominator > 0 ? row.numerator / row.denominator : 0.0;
            table.rows.push_back(row);
            table.envelope = std::max(table.envelope, row.ratio);
        }
    }
    return table;
}

}  // namespace

TorusField counterexample_field(const SymbolOperator& a, const Eigen::VectorXd& e, double eps,
                                const Subspace& intersection, const ExperimentConfig& cfg) {
    if (eps <= 0) throw InputError("counterexample_field: eps must be positive");
    if (!intersection.contains(e))
        throw InputError("counterexample_field: e is not in the computed intersection "
                         "(angle above 1e-6)");
    TorusGrid grid = cfg.make_grid();
    if (grid.n != a.n()) throw InputError("counterexample_field: grid dimension != operator n");
    const KernelProbe probe = make_kernel_probe(a, e, grid);
    return mollify_and_cut(probe, eps, cfg);
}

RatioTable sobolev_ratio_scan(const SymbolOperator& a, const ExperimentConfig& cfg,
                              const AnalysisReport& report) {
    return ladder_scan(LadderKind::Sobolev, a, cfg, report);
}

RatioTable hardy_ratio_scan(const SymbolOperator& a, const ExperimentConfig& cfg,
                            const AnalysisReport& report) {
    return ladder_scan(LadderKind::Hardy, a, cfg, report);
}

namespace {

// Smoothed log-cone: the W^{1,n} concentration profile with ‖Dφ‖_n → 0 while
// φ(center) stays 1; scale δ, outer radius R, smoothly windowed to zero.
TorusField log_cone_field(const TorusGrid& grid, const Eigen::VectorXd& e, double delta,
                          double outer_radius, const std::vector<int>& center) {
    TorusField out(grid, static_cast<int>(e.size()), true);
    const double lnRd = std::log(outer_radius / delta);
    if (lnRd <= 0) throw InputError("log_cone_field: delta must be below the outer radius");
    Eigen::VectorXd x(grid.n);
    const Eigen::VectorXcd ec = e.cast<std::complex<double>>();
    const double h = grid.spacing();
    for (GridWalker w(grid); !w.done(); w.advance()) {
        x.setZero();
        for (int a2 = 0; a2 < grid.n; ++a2) {
            int d = w.digits()[static_cast<size_t>(a2)] - center[static_cast<size_t>(a2)];
            if (d > grid.size / 2) d -= grid.size;
            if (d < -grid.size / 2) d += grid.size;
            x(a2) = d * h;
        }
        const double rho = std::sqrt(x.squaredNorm() + delta * delta);
        double phi = std::log(outer_radius / rho) / lnRd;
        if (phi <= 0) continue;
        // Window to zero before the period boundary.
        const double r = x.norm();
        const double w_in = 0.78 * outer_radius, w_out = 0.98 * outer_radius;
        double win = 1.0;
        if (r >= w_out)
            win = 0.0;
        else if (r > w_in) {
            const double t = (w_out - r) / (w_out - w_in);
            win = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
        }
        if (phi > 1.0) phi = 1.0;  // only reachable through roundoff at the center
        out.values().col(w.index()) = (phi * win) * ec;
    }
    return out;
}

}  // namespace

RatioTable duality_ratio_scan(const SymbolOperator& l, const ExperimentConfig& cfg,
                              const IntersectionResult& cocancelling) {
    RatioTable table;
    table.experiment = "duality";
    table.operator_name = l.name();
    table.grid_dim = cfg.grid_dim;
    table.grid_size = cfg.grid_size;
    table.seed = cfg.seed;
    if (l.n() != cfg.grid_dim) throw InputError("duality scan: grid dimension != operator n");

    const TorusGrid grid = cfg.make_grid();
    const int dim = l.dimV();
    const double pn = grid.n;  // ‖Dφ‖_n exponent
    const auto center = center_digits(grid);

    auto rng_f = seeded_rng(cfg.seed, 31);
    auto rng_phi = seeded_rng(cfg.seed, 32);
    const int band = std::min(cfg.band, grid.size / 4);

    for (int t = 0; t < cfg.trials; ++t) {
        const TorusField f = project_onto_kernel(l, random_band_limited(grid, dim, band, rng_f));
        const TorusField phi = random_band_limited(grid, dim, band, rng_phi);
        const double fnorm = lp_norm(f, 1.0);
        const double dphi = sobolev_grad_norm(phi, 1, pn);
        RatioRow row;
        row.label = "trial=" + std::to_string(t);
        row.numerator = std::abs(inner_product(f, phi));
        row.denominator = fnorm * dphi;
        row.ratio = row.denominator > 1e-300 ? row.numerator / row.denominator : 0.0;
        table.rows.push_back(row);
        table.envelope = std::max(table.envelope, row.ratio);
    }

    // Geometric stress case for the divergence: a mollified closed-curve
    // current, spectrally projected so it is exactly divergence-free.
    if (l.name() == "divergence" && grid.n >= 2) {
        TorusField loop(grid, dim, true);
        const double radius = 0.15, width = 0.05;
        const int segments = 256;
        const double h = grid.spacing();
        Eigen::VectorXd x(grid.n);
        for (GridWalker w(grid); !w.done(); w.advance()) {
            x.setZero();
            for (int a2 = 0; a2 < grid.n; ++a2) {
                int d = w.digits()[static_cast<size_t>(a2)] - center[static_cast<size_t>(a2)];
                if (d > grid.size / 2) d -= grid.size;
                if (d < -grid.size / 2) d += grid.size;
                x(a2) = d * h;
            }
            // Quick reject outside the torus tube around the loop.
            const double rho_plane = std::hypot(x(0), x(1));
            double far2 = (rho_plane - radius) * (rho_plane - radius);
            for (int a2 = 2; a2 < grid.n; ++a2) far2 += x(a2) * x(a2);
            if (far2 > 16.0 * width * width) continue;
            Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(dim);
            for (int s = 0; s < segments; ++s) {
                const double theta = 2.0 * M_PI * s / segments;
                Eigen::VectorXd gamma = Eigen::VectorXd::Zero(grid.n);
                gamma(0) = radius * std::cos(theta);
                gamma(1) = radius * std::sin(theta);
                const double d2 = (x - gamma).squaredNorm();
                if (d2 > 16.0 * width * width) continue;
                const double g = std::exp(-d2 / (2.0 * width * width));
                const double ds = 2.0 * M_PI * radius / segments;
                acc(0) += -std::sin(theta) * g * ds;
                acc(1) += std::cos(theta) * g * ds;
            }
            loop.values().col(w.index()) = acc;
        }
        const TorusField f = project_onto_kernel(l, loop);
        const TorusField phi = random_band_limited(grid, dim, band, rng_phi);
        RatioRow row;
        row.label = "loop";
        row.numerator = std::abs(inner_product(f, phi));
        row.denominator = lp_norm(f, 1.0) * sobolev_grad_norm(phi, 1, pn);
        row.ratio = row.denominator > 1e-300 ? row.numerator / row.denominator : 0.0;
        table.rows.push_back(row);
        table.envelope = std::max(table.envelope, row.ratio);
    }

    // Concentration ladder: with a common kernel vector e, f = bump_ε·e stays
    // in ker L(D) for every profile, and log-cone test functions expose the
    // failure of the duality estimate.
    if (cocancelling.verdict == Verdict::No && cocancelling.intersection.dim() > 0) {
        const Eigen::VectorXd e = cocancelling.intersection.basis.col(0);
        const double outer_radius = 0.45;
        const auto eps_ladder = cfg.ladder();
        std::vector<TorusField> cones;
        for (double delta : eps_ladder)
            cones.push_back(log_cone_field(grid, e, delta, outer_radius, center));
        std::vector<double> cone_dphi;
        cone_dphi.reserve(cones.size());
        for (const auto& cone : cones) cone_dphi.push_back(sobolev_grad_norm(cone, 1, pn));
        auto rng_extra = seeded_rng(cfg.seed, 33);
        for (double eps : eps_ladder) {
            const TorusField f = gaussian_bump(grid, e, eps, center, 4.0);
            const double fnorm = lp_norm(f, 1.0);
            RatioRow row;
            row.label = eps_label(eps);
            row.epsilon = eps;
            for (size_t c = 0; c < cones.size(); ++c) {
                const double num = std::abs(inner_product(f, cones[c]));
                const double den = fnorm * cone_dphi[c];
                if (den > 1e-300 && num / den > row.ratio) {
                    row.ratio = num / den;
                    row.numerator = num;
                    row.denominator = den;
                }
            }
            const TorusField phi = random_band_limited(grid, dim, band, rng_extra);
            const double num = std::abs(inner_product(f, phi));
            const double den = fnorm * sobolev_grad_norm(phi, 1, pn);
            if (den > 1e-300 && num / den > row.ratio) {
                row.ratio = num / den;
                row.numerator = num;
                row.denominator = den;
            }
            table.rows.push_back(row);
        }
        table.diagnosis = diagnose_ladder(table.ladder_ratios());
        table.notes = "common kernel vector found; concentration ladder appended";
    }
    return table;
}

RatioTable compensation_ratio_scan(const SymbolOperator& l, const ExperimentConfig& cfg,
                                   const IntersectionResult& cocancelling) {
    if (cocancelling.verdict == Verdict::No)
        throw InputError("compensation scan: operator is not cocancelling");
    RatioTable table;
    table.experiment = "compensation";
    table.operator_name = l.name();
    table.grid_dim = cfg.grid_dim;
    table.grid_size = cfg.grid_size;
    table.seed = cfg.seed;
    if (l.n() != cfg.grid_dim) throw InputError("compensation scan: grid dimension != operator n");

    const TorusGrid grid = cfg.make_grid();
    const int dim = l.dimV();
    const int order = l.k();
    const auto center = center_digits(grid);
    const double cell = std::pow(grid.spacing(), grid.n);

    auto rng_f = seeded_rng(cfg.seed, 41);
    auto rng_phi = seeded_rng(cfg.seed, 42);
    const int band = std::min(cfg.band, grid.size / 4);

    double const_phi_residual = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
        const TorusField f = project_onto_kernel(l, random_band_limited(grid, dim, band, rng_f));
        const TorusField phi = random_band_limited(grid, dim, band, rng_phi);

        // Σ_j ∫ |f| |x|^j |D^j φ|
        double denom = 0.0;
        for (int j = 1; j <= order; ++j) {
            const auto betas = Multiindex::all_of_order(grid.n, j);
            Eigen::VectorXd mag2 = Eigen::VectorXd::Zero(grid.total());
            for (const auto& beta : betas) {
                const TorusField db = derivative_field(phi, beta);
                const double wgt = beta.multinomial();
                for (int64_t i = 0; i < grid.total(); ++i)
                    mag2(i) += wgt * db.values().col(i).squaredNorm();
            }
            Eigen::VectorXd x(grid.n);
            for (GridWalker w(grid); !w.done(); w.advance()) {
                x.setZero();
                for (int a2 = 0; a2 < grid.n; ++a2) {
                    int d = w.digits()[static_cast<size_t>(a2)] - center[static_cast<size_t>(a2)];
                    if (d > grid.size / 2) d -= grid.size;
                    if (d < -grid.size / 2) d += grid.size;
                    x(a2) = d * grid.spacing();
                }
                denom += f.values().col(w.index()).norm() * std::pow(x.norm(), j) *
                         std::sqrt(mag2(w.index())) * cell;
            }
        }
        RatioRow row;
        row.label = "trial=" + std::to_string(t);
        row.numerator = std::abs(inner_product(f, phi));
        row.denominator = denom;
        row.ratio = denom > 1e-300 ? row.numerator / denom : 0.0;
        table.rows.push_back(row);
        table.envelope = std::max(table.envelope, row.ratio);

        // φ constant: the left side must vanish since the kernel projection
        // dropped the mean of f.
        for (int c = 0; c < dim; ++c) {
            std::complex<double> acc = 0.0;
            for (int64_t i = 0; i < grid.total(); ++i) acc += f.values()(c, i);
            const_phi_residual = std::max(const_phi_residual, std::abs(acc) * cell);
        }
    }
    RatioRow zero_row;
    zero_row.label = "const-phi";
    zero_row.numerator = const_phi_residual;
    table.rows.push_back(zero_row);
    char note[128];
    std::snprintf(note, sizeof(note), "max |integral of f| over trials = %.3g",
                  const_phi_residual);
    table.notes = note;
    return table;
}

GreensReport greens_homogeneity_check(const SymbolOperator& a, const ExperimentConfig& cfg,
                                      const Eigen::VectorXd& e) {
    if (a.k() >= a.n())
        throw InputError("greens_homogeneity_check: requires k < n (the logarithmic case k >= n "
                         "is out of scope)");
    GreensReport report;
    if (e.norm() == 0.0) {
        report.skipped = true;
        return report;
    }
    if (a.n() != cfg.grid_dim)
        throw InputError("greens_homogeneity_check: grid dimension != operator n");

    // Two solves at equal spacing: period 1 on N and period 2 on 2N. The
    // leading periodization term scales as period^{k-n}; the Richardson
    // combination below removes it.
    TorusGrid grid1 = cfg.make_grid();
    TorusGrid grid2 = cfg.make_grid(2 * cfg.grid_size, 2.0);
    const auto c1 = center_digits(grid1);
    const auto c2 = center_digits(grid2);
    const double h = grid1.spacing();

    const TorusField k1 = solve_least_squares(a, gaussian_bump(grid1, e, 2.0 * h, c1));
    const TorusField k2 = solve_least_squares(a, gaussian_bump(grid2, e, 2.0 * h, c2));

    const double shrink = std::pow(2.0, a.k() - a.n());  // 2^{k-n} < 1
    const auto strides1 = grid1.strides();
    const auto strides2 = grid2.strides();

    auto kernel_at = [&](const std::vector<int>& offset) {
        int64_t i1 = 0, i2 = 0;
        for (int axis = 0; axis < grid1.n; ++axis) {
            i1 += strides1[static_cast<size_t>(axis)] *
                  (c1[static_cast<size_t>(axis)] + offset[static_cast<size_t>(axis)]);
            i2 += strides2[static_cast<size_t>(axis)] *
                  (c2[static_cast<size_t>(axis)] + offset[static_cast<size_t>(axis)]);
        }
        Eigen::VectorXd v(a.dimV());
        for (int c = 0; c < a.dimV(); ++c)
            v(c) = (k1.values()(c, i1).real() - shrink * k2.values()(c, i2).real()) /
                   (1.0 - shrink);
        return v;
    };

    const double r = 6.0 * h;  // inner shell radius: small but well above the spacing
    report.r = r;
    double err_sum = 0.0, mag_sum = 0.0, outer_sum = 0.0;
    int count = 0;
    // Walk lattice offsets in the inner annulus; the doubled offset lands on
    // the lattice exactly, so no interpolation is involved.
    std::vector<int> offset(static_cast<size_t>(grid1.n), 0);
    const int reach = static_cast<int>(std::ceil((r + h) / h));
    auto visit = [&](auto&& self, int axis) -> void {
        if (axis == grid1.n) {
            double r2 = 0.0;
            for (int v : offset) r2 += double(v) * v * h * h;
            const double rad = std::sqrt(r2);
            if (rad < r - h / 2 || rad >= r + h / 2) return;
            const Eigen::VectorXd inner = kernel_at(offset);
            std::vector<int> doubled(offset);
            for (int& v : doubled) v *= 2;
            const Eigen::VectorXd outer = kernel_at(doubled);
            err_sum += (inner - outer / shrink).norm();
            mag_sum += inner.norm();
            outer_sum += outer.norm();
            report.inner_samples.emplace_back(rad, inner);
            report.outer_samples.emplace_back(2.0 * rad, outer);
            ++count;
            return;
        }
        for (int v = -reach; v <= reach; ++v) {
            offset[static_cast<size_t>(axis)] = v;
            self(self, axis + 1);
        }
    };
    visit(visit, 0);
    if (count == 0) throw NumericError("greens_homogeneity_check: empty shell (grid too coarse)");
    report.shell_points = count;
    report.homogeneity_error = err_sum / mag_sum;
    report.mean_abs_inner = mag_sum / count;
    report.mean_abs_outer = outer_sum / count;
    report.pass = report.homogeneity_error < 0.05;
    return report;
}

}  // namespace opsym
