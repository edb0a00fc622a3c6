#pragma once

#include <map>
#include <string>

#include <Eigen/Core>

#include "opsym/multiindex.hpp"
#include "opsym/poly_matrix.hpp"
#include "opsym/rational.hpp"

namespace opsym {

/// Homogeneous constant-coefficient vector differential operator of order k,
/// stored as the exact rational coefficient matrices A_α, |α| = k. Immutable
/// after construction; every operation on it is pure.
class SymbolOperator {
public:
    /// Validates: all keys have order k, at least one A_α nonzero, shapes agree.
    SymbolOperator(std::string name, int n, int k, int dimV, int dimE,
                   std::map<Multiindex, RationalMatrix> coeffs);

    const std::string& name() const { return name_; }
    int n() const { return n_; }
    int k() const { return k_; }
    int dimV() const { return dimV_; }
    int dimE() const { return dimE_; }
    const std::map<Multiindex, RationalMatrix>& coeffs() const { return coeffs_; }

    /// A(ξ) = Σ_{|α|=k} ξ^α A_α, as a real dimE×dimV matrix.
    Eigen::MatrixXd eval(const Eigen::VectorXd& xi) const;
    /// Allocation-free variant for hot per-frequency loops.
    void eval_into(const Eigen::VectorXd& xi, Eigen::MatrixXd& out) const;
    /// Exact-rational variant.
    RationalMatrix eval_exact(const RationalVector& xi) const;

    /// A(ξ) as a dimE×dimV matrix of homogeneous degree-k polynomials.
    PolyMatrix to_poly_matrix() const;

    /// Gram symbol M(ξ) = A(ξ)*A(ξ), dimV×dimV, homogeneous of degree 2k.
    PolyMatrix gram() const;

    /// c·A, rational c ≠ 0. Verdicts are invariant under this.
    SymbolOperator scaled(const Rational& c, const std::string& new_name) const;

    bool operator==(const SymbolOperator& rhs) const;

private:
    std::string name_;
    int n_, k_, dimV_, dimE_;
    std::map<Multiindex, RationalMatrix> coeffs_;
    // Double-precision mirror of coeffs_, built once; per-frequency evaluation
    // must not touch GMP.
    std::vector<std::pair<std::vector<int>, Eigen::MatrixXd>> coeffs_double_;
};

/// Reinterprets a homogeneous polynomial matrix as a SymbolOperator (used for
/// synthesized compatibility operators). Throws when the matrix is mixed-degree.
SymbolOperator symbol_from_poly_matrix(const PolyMatrix& m, const std::string& name);

}  // namespace opsym
