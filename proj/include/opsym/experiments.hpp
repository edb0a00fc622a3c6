#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "opsym/analyzers.hpp"
#include "opsym/spectral.hpp"

namespace opsym {

struct ExperimentConfig {
    int grid_dim = 3;
    int grid_size = 128;
    int eps_top_exp = 2;     // ladder 2^-top … 2^-bottom, geometric
    int eps_bottom_exp = 7;
    double cutoff_inner = 0.2;
    double cutoff_outer = 0.25;
    int trials = 100;
    int probe_directions = 4;  // random e candidates for cancelling-operator scans
    int band = 8;
    int ell = 0;  // derivative order ℓ on the numerator side
    uint64_t seed = 0;
    double tol = 1e-8;
    int64_t memory_cap = int64_t(1) << 27;

    TorusGrid make_grid(int size_override = -1, double period = 1.0) const;
    std::vector<double> ladder() const;
};

enum class Diagnosis { Bounded, BlowUp, Inconclusive };
std::string to_string(Diagnosis d);

/// Blow-up: last/first > 2 with increases on ≥ 80% of steps.
/// Bounded: max/min < 3. Anything else is inconclusive.
Diagnosis diagnose_ladder(const std::vector<double>& ratios);

struct RatioRow {
    std::string label;       // "eps=2^-3", "trial=7", "loop", "const-phi"
    double epsilon = 0.0;    // 0 when not an epsilon row
    double ratio = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
};

struct RatioTable {
    std::string experiment;
    std::string operator_name;
    int grid_dim = 0;
    int grid_size = 0;
    uint64_t seed = 0;
    std::vector<RatioRow> rows;
    std::optional<Diagnosis> diagnosis;
    double envelope = 0.0;  // max ratio over trial rows
    std::string notes;

    std::vector<double> ladder_ratios() const;
    void write_csv(std::ostream& os) const;
};

/// Ratios ‖D^k u‖₂² / ‖A(D)u‖₂² over random band-limited fields; bounded by
/// C²(1+1e-6) with C the measured ellipticity constant.
RatioTable l2_estimate_experiment(const SymbolOperator& a, const ExperimentConfig& cfg,
                                  const EllipticityResult& ell);

/// u_ε = cutoff · (mollify_ε G), G the numeric kernel field obtained by the
/// least-squares solve against a narrow bump approximating e·δ₀.
/// Throws when e is not within angle 1e-6 of the supplied intersection.
TorusField counterexample_field(const SymbolOperator& a, const Eigen::VectorXd& e, double eps,
                                const Subspace& intersection, const ExperimentConfig& cfg);

/// ε ↦ ‖D^ℓ u_ε‖_{n/(n−(k−ℓ))} / ‖A(D)u_ε‖₁. Non-cancelling operators scan the
/// counterexample construction along an intersection vector; cancelling ones
/// scan the same construction over the worst random direction e plus random
/// band-limited trial fields.
RatioTable sobolev_ratio_scan(const SymbolOperator& a, const ExperimentConfig& cfg,
                              const AnalysisReport& report);

/// Same ladder with the Hardy weight |x|^{−(k−ℓ)} centered at the singularity.
RatioTable hardy_ratio_scan(const SymbolOperator& a, const ExperimentConfig& cfg,
                            const AnalysisReport& report);

/// |∫ f·φ| / (‖f‖₁ ‖Dφ‖_n) with f spectrally projected onto ker L(ξ).
/// Includes the mollified-loop stress case for the divergence, and a bump
/// concentration ladder when a common kernel vector exists.
RatioTable duality_ratio_scan(const SymbolOperator& l, const ExperimentConfig& cfg,
                              const IntersectionResult& cocancelling);

/// |∫ f·φ| / Σ_{j=1}^m ∫ |f| |x|^j |D^j φ|, f in ker L(D). Requires a
/// cocancelling L.
RatioTable compensation_ratio_scan(const SymbolOperator& l, const ExperimentConfig& cfg,
                                   const IntersectionResult& cocancelling);

struct GreensReport {
    bool skipped = false;
    double r = 0.0;               // inner shell radius
    int shell_points = 0;
    double homogeneity_error = 0.0;  // mean |K(x) − 2^{n−k} K(2x)| / mean |K(x)|
    bool pass = false;
    // Kernel magnitudes per shell for downstream oracles: |K| averaged.
    double mean_abs_inner = 0.0;
    double mean_abs_outer = 0.0;
    /// Sampled kernel values on the inner/outer shells with their radii.
    std::vector<std::pair<double, Eigen::VectorXd>> inner_samples, outer_samples;
};

/// Samples the free-space kernel K = G_A[e] on shells |x| = r, 2r and checks
/// the degree-(k−n) homogeneity K(x) ≈ 2^{n−k} K(2x). Periodization bias is
/// removed by a two-period Richardson solve. Requires k < n and elliptic A.
GreensReport greens_homogeneity_check(const SymbolOperator& a, const ExperimentConfig& cfg,
                                      const Eigen::VectorXd& e);

/// Largest |u| over points whose min-image distance to the center exceeds the
/// given radius; the wrap-around monitor of the cutoff constructions.
double boundary_magnitude(const TorusField& u, double radius);

}  // namespace opsym
