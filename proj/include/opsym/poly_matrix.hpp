#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "opsym/polynomial.hpp"

namespace opsym {

/// Dense matrix of multivariate rational polynomials. Evaluation commutes with
/// the matrix arithmetic exactly; the homogeneity degree is advisory only.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(int rows, int cols, int vars);
    static PolyMatrix identity(int size, int vars);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int vars() const { return vars_; }

    Polynomial& operator()(int r, int c) { return cells_[static_cast<size_t>(r * cols_ + c)]; }
    const Polynomial& operator()(int r, int c) const {
        return cells_[static_cast<size_t>(r * cols_ + c)];
    }

    /// Common homogeneity degree of all nonzero entries, nullopt when mixed or all-zero.
    std::optional<int> homogeneous_degree() const;

    PolyMatrix transpose() const;
    bool is_zero() const;
    bool operator==(const PolyMatrix& rhs) const = default;

    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator*(const Polynomial& p, const PolyMatrix& m);

    Eigen::MatrixXd eval(const Eigen::VectorXd& xi) const;
    RationalMatrix eval_exact(const RationalVector& xi) const;

private:
    int rows_ = 0, cols_ = 0, vars_ = 0;
    std::vector<Polynomial> cells_;
};

/// Exact determinant by division-free expansion (dynamic programming over
/// column subsets); every intermediate value is a polynomial.
Polynomial poly_det(const PolyMatrix& m);

/// Exact adjugate, division-free. Satisfies m * adj(m) == det(m) * id exactly.
PolyMatrix poly_adjugate(const PolyMatrix& m);

}  // namespace opsym
