#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opsym/linalg.hpp"
#include "opsym/poly_matrix.hpp"
#include "opsym/sphere.hpp"
#include "opsym/symbol_operator.hpp"

namespace opsym {

/// "For all ξ ≠ 0" is semidecided numerically: yes/no verdicts are issued only
/// outside the threshold ambiguity band; no-verdicts upgrade to certified when
/// an exact rational witness exists.
enum class Verdict { Yes, No, NumericalEvidence, NotApplicable };

std::string to_string(Verdict v);

struct AnalyzerConfig {
    SphereSampling sampling;
    double tol = kDefaultRankTol;
    int stabilization_window = 16;
    int exact_cross_checks = 16;
    int quadrature_order = 64;
};

struct EllipticityResult {
    Verdict verdict = Verdict::NumericalEvidence;
    double min_sigma = 0.0;       // refined min of σ_min(A(ξ)) over the unit sphere
    Eigen::VectorXd argmin;
    double constant = 0.0;        // C = 1/min_sigma; |ξ|^k |v| ≤ C |A(ξ)v|
    bool ambiguous = false;
    std::optional<RationalVector> witness;  // exact ξ with rank-deficient A(ξ)
};

struct FoldTrace {
    int samples_used = 0;
    int stable_rounds = 0;
    bool exact_check_passed = true;
    bool ambiguous_rank = false;
};

struct IntersectionResult {
    Verdict verdict = Verdict::NumericalEvidence;
    Subspace intersection;
    FoldTrace trace;
};

/// Minimize σ_min(A(ξ)) over the unit sphere by low-discrepancy sampling plus
/// projected descent from the best starts; certify failures by exact rank at a
/// rationalized argmin.
EllipticityResult check_ellipticity(const SymbolOperator& a, const AnalyzerConfig& cfg = {});

/// Folds ∩_ξ A(ξ)[V] over samples until stable for cfg.stabilization_window
/// consecutive samples, then cross-checks against the exact intersection at
/// random rational directions. Yes iff the limit is {0}.
/// Precondition: A injectively elliptic (verdict yes or numerical-evidence).
IntersectionResult check_cancelling(const SymbolOperator& a, const AnalyzerConfig& cfg = {},
                                    const EllipticityResult* precomputed = nullptr);

/// Same folding over ∩_ξ ker L(ξ). No ellipticity precondition.
IntersectionResult check_cocancelling(const SymbolOperator& l, const AnalyzerConfig& cfg = {});
/// Overload for synthesized compatibility operators; handles L ≡ 0 (kernel = E).
IntersectionResult check_cocancelling(const PolyMatrix& l, const AnalyzerConfig& cfg = {});

/// L(ξ) = det(M(ξ))·id_E − A(ξ)·adj(M(ξ))·A(ξ)*, M = A*A, computed exactly.
/// L(ξ)·A(ξ) ≡ 0 as a polynomial identity and ker L(ξ) = A(ξ)[V] for ξ ≠ 0.
/// Throws InputError when det(M) ≡ 0 (A not injectively elliptic).
PolyMatrix synthesize_compatibility(const SymbolOperator& a);

struct WeakCancellationResult {
    Verdict verdict = Verdict::NotApplicable;
    /// One row per (intersection basis vector, multiindex β with |β| = k−n):
    /// ∫_{S^{n-1}} ξ^β (A(ξ)† e)_v dξ across columns v.
    Eigen::MatrixXd integrals;
    std::vector<Multiindex> betas;
    double max_abs = 0.0;
    double threshold = 0.0;
};

/// Sphere integrals ∫ ξ^{⊗(k−n)} A(ξ)†[e] dξ for each basis vector e of the
/// intersection ∩_ξ A(ξ)[V]. The paper's A(ξ)⁻¹ is read as the Moore–Penrose
/// inverse, well defined on intersection vectors since e ∈ A(ξ)[V].
/// Requires k ≥ n and injectively elliptic A.
WeakCancellationResult check_weak_cancellation(const SymbolOperator& a,
                                               const Subspace& intersection,
                                               int quadrature_order = 64);

struct AnalysisReport {
    std::string operator_name;
    int n = 0, k = 0, dimV = 0, dimE = 0;
    Verdict elliptic = Verdict::NotApplicable;
    Verdict cancelling = Verdict::NotApplicable;
    Verdict cocancelling = Verdict::NotApplicable;
    Verdict weakly_cancelling = Verdict::NotApplicable;
    double min_singular_value = 0.0;
    Eigen::VectorXd argmin;
    double ellipticity_constant = 0.0;
    std::optional<std::string> ellipticity_witness;
    Subspace intersection;         // ∩ images
    Subspace kernel_intersection;  // ∩ kernels of A itself
    FoldTrace cancelling_trace, cocancelling_trace;
    WeakCancellationResult weak;
    bool compat_synthesized = false;
    int compat_order = 0;
    Verdict compat_cocancelling = Verdict::NotApplicable;  // should agree with `cancelling`
    uint64_t seed = 0;
    double tol = kDefaultRankTol;
    int samples = 0;
};

/// Full pipeline: ellipticity → cancelling → compatibility synthesis →
/// cocancelling → weak cancellation (k ≥ n).
AnalysisReport analyze(const SymbolOperator& a, const AnalyzerConfig& cfg = {});

}  // namespace opsym
