#include "opsym/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "opsym/errors.hpp"

namespace opsym {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* where) {
    if (!m.allFinite()) throw NumericError(std::string(where) + ": non-finite entries");
}

}  // namespace

SvdResult svd(const Eigen::MatrixXd& m) {
    require_finite(m, "svd");
    Eigen::JacobiSVD<Eigen::MatrixXd> dec(m, Eigen::ComputeThinU | Eigen::ComputeFullV);
    SvdResult out;
    out.u = dec.matrixU();
    out.v = dec.matrixV();
    out.sigma = Eigen::VectorXd::Zero(m.cols());
    out.sigma.head(dec.singularValues().size()) = dec.singularValues();
    return out;
}

Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& m, double tol) {
    require_finite(m, "pseudoinverse");
    Eigen::JacobiSVD<Eigen::MatrixXd> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = dec.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return Eigen::MatrixXd::Zero(m.cols(), m.rows());
    const double cut = tol * s(0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) inv(i) = 1.0 / s(i);
    return dec.matrixV() * inv.asDiagonal() * dec.matrixU().transpose();
}

double min_singular_value(const Eigen::MatrixXd& m) {
    if (m.cols() > m.rows()) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> dec(m);
    return dec.singularValues()(m.cols() - 1);
}

Subspace Subspace::full(int ambient, double tol) {
    return Subspace{ambient, Eigen::MatrixXd::Identity(ambient, ambient), tol};
}

Subspace Subspace::zero(int ambient, double tol) {
    return Subspace{ambient, Eigen::MatrixXd::Zero(ambient, 0), tol};
}

double Subspace::angle_to(const Eigen::VectorXd& v) const {
    const double norm = v.norm();
    if (norm == 0.0) return 0.0;
    if (dim() == 0) return M_PI / 2;
    const double cos = std::clamp((basis.transpose() * v).norm() / norm, 0.0, 1.0);
    return std::acos(cos);
}

bool Subspace::contains(const Eigen::VectorXd& v, double angle_tol) const {
    return angle_to(v) <= angle_tol;
}

Subspace image(const Eigen::MatrixXd& m, double tol) {
    require_finite(m, "image");
    Eigen::JacobiSVD<Eigen::MatrixXd> dec(m, Eigen::ComputeThinU);
    const auto& s = dec.singularValues();
    const double cut = (s.size() > 0 ? tol * s(0) : 0.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++rank;
    Subspace out{static_cast<int>(m.rows()), dec.matrixU().leftCols(rank), tol};
    return out;
}

Subspace kernel(const Eigen::MatrixXd& m, double tol) {
    require_finite(m, "kernel");
    Eigen::JacobiSVD<Eigen::MatrixXd> dec(m, Eigen::ComputeFullV);
    const auto& s = dec.singularValues();
    const double cut = (s.size() > 0 ? tol * s(0) : 0.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++rank;
    Subspace out{static_cast<int>(m.cols()), dec.matrixV().rightCols(m.cols() - rank), tol};
    return out;
}

Subspace intersect(const Subspace& s1, const Subspace& s2) {
    if (s1.ambient != s2.ambient)
        throw InputError("intersect: ambient dimensions differ (" + std::to_string(s1.ambient) +
                         " vs " + std::to_string(s2.ambient) + ")");
    const double tol = std::max(s1.tol, s2.tol);
    if (s1.dim() == 0 || s2.dim() == 0) return Subspace::zero(s1.ambient, tol);
    const Eigen::MatrixXd overlap = s1.basis.transpose() * s2.basis;
    Eigen::JacobiSVD<Eigen::MatrixXd> dec(overlap, Eigen::ComputeThinU);
    const auto& cos = dec.singularValues();
    int keep = 0;
    for (Eigen::Index i = 0; i < cos.size(); ++i)
        if (cos(i) >= 1.0 - tol) ++keep;
    Subspace out{s1.ambient, s1.basis * dec.matrixU().leftCols(keep), tol};
    // Columns are orthonormal up to roundoff already; tighten anyway.
    if (keep > 0) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(out.basis);
        out.basis = qr.householderQ() * Eigen::MatrixXd::Identity(s1.ambient, keep);
    }
    return out;
}

namespace {

double one_sided_angle(const Subspace& from, const Subspace& to) {
    if (from.dim() == 0) return 0.0;
    if (to.dim() == 0) return M_PI / 2;
    const Eigen::MatrixXd overlap = to.basis.transpose() * from.basis;
    Eigen::JacobiSVD<Eigen::MatrixXd> dec(overlap);
    const double c = std::clamp(dec.singularValues().minCoeff(), 0.0, 1.0);
    return std::acos(c);
}

}  // namespace

double subspace_angle(const Subspace& s1, const Subspace& s2) {
    return std::max(one_sided_angle(s1, s2), one_sided_angle(s2, s1));
}

bool subspace_equal(const Subspace& s1, const Subspace& s2, double angle_tol) {
    if (s1.ambient != s2.ambient) return false;
    if (s1.dim() != s2.dim()) return false;
    return subspace_angle(s1, s2) <= angle_tol;
}

// ---- exact-rational linear algebra -------------------------------------

namespace {

// Clears denominators row-wise; rank is unchanged.
std::vector<std::vector<mpz_class>> to_integer_rows(const RationalMatrix& m) {
    std::vector<std::vector<mpz_class>> out(static_cast<size_t>(m.rows()),
                                            std::vector<mpz_class>(static_cast<size_t>(m.cols())));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        mpz_class lcm_den(1);
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            mpz_class den = m(r, c).get_den();
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
        }
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            Rational scaled = m(r, c) * Rational(lcm_den);
            out[static_cast<size_t>(r)][static_cast<size_t>(c)] = scaled.get_num();
        }
    }
    return out;
}

}  // namespace

int exact_rank(const RationalMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    auto a = to_integer_rows(m);
    const size_t rows = a.size(), cols = a[0].size();
    // Bareiss fraction-free elimination: divisions are exact over ℤ.
    mpz_class prev(1);
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pivot = rows;
        for (size_t r = rank; r < rows; ++r)
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot == rows) continue;
        if (pivot != rank) std::swap(a[pivot], a[rank]);
        for (size_t r = rank + 1; r < rows; ++r) {
            for (size_t c = col + 1; c < cols; ++c) {
                mpz_class t = a[rank][col] * a[r][c] - a[r][col] * a[rank][c];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[r][c] = t;
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return static_cast<int>(rank);
}

RationalMatrix exact_kernel(const RationalMatrix& m) {
    const Eigen::Index rows = m.rows(), cols = m.cols();
    RationalMatrix a = m;
    std::vector<Eigen::Index> pivot_col;
    Eigen::Index lead = 0;
    for (Eigen::Index col = 0; col < cols && lead < rows; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = lead; r < rows; ++r)
            if (a(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != lead) a.row(pivot).swap(a.row(lead));
        const Rational inv = 1 / a(lead, col);
        for (Eigen::Index c = col; c < cols; ++c) a(lead, c) *= inv;
        for (Eigen::Index r = 0; r < rows; ++r) {
            if (r == lead || a(r, col) == 0) continue;
            const Rational f = a(r, col);
            for (Eigen::Index c = col; c < cols; ++c) a(r, c) -= f * a(lead, c);
        }
        pivot_col.push_back(col);
        ++lead;
    }
    std::vector<Eigen::Index> free_cols;
    {
        size_t p = 0;
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (p < pivot_col.size() && pivot_col[p] == c)
                ++p;
            else
                free_cols.push_back(c);
        }
    }
    RationalMatrix basis = RationalMatrix::Zero(cols, static_cast<Eigen::Index>(free_cols.size()));
    for (size_t j = 0; j < free_cols.size(); ++j) {
        const Eigen::Index fc = free_cols[j];
        basis(fc, static_cast<Eigen::Index>(j)) = 1;
        for (size_t p = 0; p < pivot_col.size(); ++p)
            basis(pivot_col[p], static_cast<Eigen::Index>(j)) = -a(static_cast<Eigen::Index>(p), fc);
    }
    return basis;
}

RationalMatrix exact_column_space(const RationalMatrix& m) {
    // Independent columns found by rank increments, left to right.
    RationalMatrix picked(m.rows(), 0);
    int rank = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        RationalMatrix trial(m.rows(), picked.cols() + 1);
        if (picked.cols() > 0) trial.leftCols(picked.cols()) = picked;
        trial.col(picked.cols()) = m.col(c);
        if (exact_rank(trial) > rank) {
            picked = trial;
            ++rank;
        }
    }
    return picked;
}

RationalMatrix exact_intersect(const RationalMatrix& basis1, const RationalMatrix& basis2) {
    if (basis1.rows() != basis2.rows()) throw InputError("exact_intersect: ambient mismatch");
    const Eigen::Index ambient = basis1.rows();
    if (basis1.cols() == 0 || basis2.cols() == 0) return RationalMatrix(ambient, 0);
    // Solve [B1 | -B2] [a; b] = 0; the intersection is B1 a.
    RationalMatrix stacked(ambient, basis1.cols() + basis2.cols());
    stacked << basis1, -basis2;
    RationalMatrix null = exact_kernel(stacked);
    RationalMatrix inter(ambient, null.cols());
    for (Eigen::Index j = 0; j < null.cols(); ++j)
        inter.col(j) = basis1 * null.block(0, j, basis1.cols(), 1);
    return exact_column_space(inter);
}

bool exact_contains(const RationalMatrix& basis, const RationalVector& v) {
    bool zero = true;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v(i) != 0) zero = false;
    if (zero) return true;
    if (basis.cols() == 0) return false;
    RationalMatrix augmented(basis.rows(), basis.cols() + 1);
    augmented << basis, v;
    return exact_rank(augmented) == exact_rank(basis);
}

Subspace to_numeric_subspace(const RationalMatrix& basis, int ambient, double tol) {
    Eigen::MatrixXd b(basis.rows(), basis.cols());
    for (Eigen::Index r = 0; r < basis.rows(); ++r)
        for (Eigen::Index c = 0; c < basis.cols(); ++c) b(r, c) = to_double(basis(r, c));
    if (b.cols() == 0) return Subspace::zero(ambient, tol);
    return image(b, tol);
}

}  // namespace opsym
