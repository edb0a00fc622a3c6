#include "opsym/poly_matrix.hpp"

#include <unordered_map>

#include "opsym/errors.hpp"

namespace opsym {

PolyMatrix::PolyMatrix(int rows, int cols, int vars)
    : rows_(rows), cols_(cols), vars_(vars),
      cells_(static_cast<size_t>(rows) * static_cast<size_t>(cols), Polynomial(vars)) {
    if (rows < 0 || cols < 0) throw InputError("negative PolyMatrix dimensions");
}

PolyMatrix PolyMatrix::identity(int size, int vars) {
    PolyMatrix m(size, size, vars);
    for (int i = 0; i < size; ++i) m(i, i) = Polynomial::constant(vars, 1);
    return m;
}

std::optional<int> PolyMatrix::homogeneous_degree() const {
    std::optional<int> d;
    for (const auto& p : cells_) {
        if (p.is_zero()) continue;
        auto pd = p.homogeneous_degree();
        if (!pd) return std::nullopt;
        if (d && *d != *pd) return std::nullopt;
        d = pd;
    }
    return d;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix t(cols_, rows_, vars_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool PolyMatrix::is_zero() const {
    for (const auto& p : cells_)
        if (!p.is_zero()) return false;
    return true;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("PolyMatrix shape mismatch");
    PolyMatrix out = a;
    for (size_t i = 0; i < out.cells_.size(); ++i) out.cells_[i] += b.cells_[i];
    return out;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("PolyMatrix shape mismatch");
    PolyMatrix out = a;
    for (size_t i = 0; i < out.cells_.size(); ++i) out.cells_[i] -= b.cells_[i];
    return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw InputError("PolyMatrix product shape mismatch");
    PolyMatrix out(a.rows_, b.cols_, a.vars_);
    for (int r = 0; r < a.rows_; ++r)
        for (int c = 0; c < b.cols_; ++c) {
            Polynomial acc(a.vars_);
            for (int k = 0; k < a.cols_; ++k) acc += a(r, k) * b(k, c);
            out(r, c) = acc;
        }
    return out;
}

PolyMatrix operator*(const Polynomial& p, const PolyMatrix& m) {
    PolyMatrix out = m;
    for (auto& cell : out.cells_) cell = p * cell;
    return out;
}

Eigen::MatrixXd PolyMatrix::eval(const Eigen::VectorXd& xi) const {
    Eigen::MatrixXd out(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c).eval(xi);
    return out;
}

RationalMatrix PolyMatrix::eval_exact(const RationalVector& xi) const {
    RationalMatrix out(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c).eval_exact(xi);
    return out;
}

namespace {

// det of the submatrix made of rows [0, popcount(mask)) of `rows` and the
// column subset `mask`, by expansion along the last used row. All values stay
// polynomial: no division ever happens.
class SubsetDet {
public:
    SubsetDet(const PolyMatrix& m, std::vector<int> rows)
        : m_(m), rows_(std::move(rows)), vars_(m.vars()) {}

    const Polynomial& det(uint32_t mask) {
        auto it = memo_.find(mask);
        if (it != memo_.end()) return it->second;
        Polynomial result(vars_);
        const int size = __builtin_popcount(mask);
        if (size == 0) {
            result = Polynomial::constant(vars_, 1);
        } else {
            const int row = rows_[static_cast<size_t>(size - 1)];
            int pos = 0;
            for (uint32_t bits = mask; bits; bits &= bits - 1, ++pos) {
                const int col = __builtin_ctz(bits);
                const Polynomial& entry = m_(row, col);
                if (!entry.is_zero()) {
                    Polynomial sub = entry * det(mask & ~(1u << col));
                    if ((size - 1 + pos) % 2 == 0)
                        result += sub;
                    else
                        result -= sub;
                }
            }
        }
        return memo_.emplace(mask, std::move(result)).first->second;
    }

private:
    const PolyMatrix& m_;
    std::vector<int> rows_;
    int vars_;
    std::unordered_map<uint32_t, Polynomial> memo_;
};

}  // namespace

Polynomial poly_det(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw InputError("poly_det: matrix is not square");
    const int n = m.rows();
    if (n > 20) throw InputError("poly_det: matrices beyond 20x20 are not supported");
    if (n == 0) return Polynomial::constant(m.vars(), 1);
    std::vector<int> rows(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) rows[static_cast<size_t>(i)] = i;
    SubsetDet dp(m, rows);
    return dp.det((n == 32 ? ~0u : (1u << n) - 1u));
}

PolyMatrix poly_adjugate(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw InputError("poly_adjugate: matrix is not square");
    const int n = m.rows();
    PolyMatrix adj(n, n, m.vars());
    if (n == 0) return adj;
    if (n == 1) {
        adj(0, 0) = Polynomial::constant(m.vars(), 1);
        return adj;
    }
    const uint32_t full = (1u << n) - 1u;
    for (int i = 0; i < n; ++i) {
        std::vector<int> rows;
        rows.reserve(static_cast<size_t>(n - 1));
        for (int r = 0; r < n; ++r)
            if (r != i) rows.push_back(r);
        SubsetDet dp(m, rows);
        for (int j = 0; j < n; ++j) {
            Polynomial minor = dp.det(full & ~(1u << j));
            // adj = transpose of the cofactor matrix.
            adj(j, i) = ((i + j) % 2 == 0) ? minor : -minor;
        }
    }
    return adj;
}

}  // namespace opsym
