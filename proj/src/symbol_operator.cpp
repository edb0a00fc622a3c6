#include "opsym/symbol_operator.hpp"

#include "opsym/errors.hpp"

namespace opsym {

namespace {

bool all_zero(const RationalMatrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0) return false;
    return true;
}

bool same_entries(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            if (a(r, c) != b(r, c)) return false;
    return true;
}

}  // namespace

SymbolOperator::SymbolOperator(std::string name, int n, int k, int dimV, int dimE,
                               std::map<Multiindex, RationalMatrix> coeffs)
    : name_(std::move(name)), n_(n), k_(k), dimV_(dimV), dimE_(dimE), coeffs_(std::move(coeffs)) {
    if (n_ < 1 || dimV_ < 1 || dimE_ < 1)
        throw InputError("operator '" + name_ + "': n, dimV, dimE must all be >= 1");
    if (k_ < 1) throw InputError("operator '" + name_ + "': order k must be >= 1");
    bool any_nonzero = false;
    for (const auto& [alpha, mat] : coeffs_) {
        if (alpha.dims() != n_)
            throw InputError("operator '" + name_ + "': multiindex dimension != n");
        if (alpha.order() != k_)
            throw InputError("operator '" + name_ + "': coefficient multiindex (" +
                             alpha.to_string() + ") has order " + std::to_string(alpha.order()) +
                             ", expected k = " + std::to_string(k_));
        if (mat.rows() != dimE_ || mat.cols() != dimV_)
            throw InputError("operator '" + name_ + "': coefficient matrix shape mismatch");
        if (!all_zero(mat)) any_nonzero = true;
    }
    if (!any_nonzero) throw InputError("operator '" + name_ + "': all coefficients are zero");
    coeffs_double_.reserve(coeffs_.size());
    for (const auto& [alpha, mat] : coeffs_) {
        Eigen::MatrixXd m(dimE_, dimV_);
        for (int r = 0; r < dimE_; ++r)
            for (int c = 0; c < dimV_; ++c) m(r, c) = to_double(mat(r, c));
        coeffs_double_.emplace_back(alpha.entries(), std::move(m));
    }
}

Eigen::MatrixXd SymbolOperator::eval(const Eigen::VectorXd& xi) const {
    Eigen::MatrixXd out;
    eval_into(xi, out);
    return out;
}

void SymbolOperator::eval_into(const Eigen::VectorXd& xi, Eigen::MatrixXd& out) const {
    if (xi.size() != n_)
        throw InputError("eval_symbol: xi has length " + std::to_string(xi.size()) +
                         ", expected " + std::to_string(n_));
    out.setZero(dimE_, dimV_);
    for (const auto& [exponents, mat] : coeffs_double_) {
        double w = 1.0;
        for (int i = 0; i < n_; ++i)
            for (int p = 0; p < exponents[static_cast<size_t>(i)]; ++p) w *= xi[i];
        if (w != 0.0) out.noalias() += w * mat;
    }
}

RationalMatrix SymbolOperator::eval_exact(const RationalVector& xi) const {
    if (xi.size() != n_) throw InputError("eval_symbol: rational xi has wrong length");
    RationalMatrix out = RationalMatrix::Zero(dimE_, dimV_);
    for (const auto& [alpha, mat] : coeffs_) {
        const Rational w = alpha.pow(xi);
        if (w == 0) continue;
        for (int r = 0; r < dimE_; ++r)
            for (int c = 0; c < dimV_; ++c) out(r, c) += w * mat(r, c);
    }
    return out;
}

PolyMatrix SymbolOperator::to_poly_matrix() const {
    PolyMatrix out(dimE_, dimV_, n_);
    for (const auto& [alpha, mat] : coeffs_)
        for (int r = 0; r < dimE_; ++r)
            for (int c = 0; c < dimV_; ++c)
                if (mat(r, c) != 0) out(r, c) += Polynomial::monomial(alpha, mat(r, c));
    return out;
}

PolyMatrix SymbolOperator::gram() const {
    const PolyMatrix a = to_poly_matrix();
    return a.transpose() * a;
}

SymbolOperator SymbolOperator::scaled(const Rational& c, const std::string& new_name) const {
    if (c == 0) throw InputError("scaled: c must be nonzero");
    std::map<Multiindex, RationalMatrix> coeffs = coeffs_;
    for (auto& [alpha, mat] : coeffs) mat *= c;
    return SymbolOperator(new_name, n_, k_, dimV_, dimE_, std::move(coeffs));
}

bool SymbolOperator::operator==(const SymbolOperator& rhs) const {
    if (n_ != rhs.n_ || k_ != rhs.k_ || dimV_ != rhs.dimV_ || dimE_ != rhs.dimE_) return false;
    auto it = coeffs_.begin();
    auto jt = rhs.coeffs_.begin();
    for (; it != coeffs_.end() && jt != rhs.coeffs_.end(); ++it, ++jt) {
        if (it->first != jt->first) return false;
        if (!same_entries(it->second, jt->second)) return false;
    }
    return it == coeffs_.end() && jt == rhs.coeffs_.end();
}

SymbolOperator symbol_from_poly_matrix(const PolyMatrix& m, const std::string& name) {
    auto degree = m.homogeneous_degree();
    if (!degree)
        throw InputError("symbol_from_poly_matrix: matrix is mixed-degree or identically zero");
    std::map<Multiindex, RationalMatrix> coeffs;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            for (const auto& [alpha, coef] : m(r, c).terms()) {
                auto it = coeffs.emplace(alpha, RationalMatrix::Zero(m.rows(), m.cols())).first;
                it->second(r, c) = coef;
            }
    return SymbolOperator(name, m.vars(), *degree, m.cols(), m.rows(), std::move(coeffs));
}

}  // namespace opsym
