#pragma once

#include <map>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "opsym/multiindex.hpp"
#include "opsym/rational.hpp"

namespace opsym {

/// Sparse multivariate polynomial with exact rational coefficients.
/// Zero coefficients are never stored; all arithmetic is exact.
class Polynomial {
public:
    explicit Polynomial(int vars = 0) : vars_(vars) {}
    static Polynomial constant(int vars, const Rational& c);
    static Polynomial monomial(const Multiindex& alpha, const Rational& c);

    int vars() const { return vars_; }
    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return static_cast<int>(terms_.size()); }
    const std::map<Multiindex, Rational>& terms() const { return terms_; }

    /// Total degree of the highest term, or nullopt for the zero polynomial.
    std::optional<int> degree() const;
    /// Degree if every term has the same order, nullopt otherwise ("mixed").
    std::optional<int> homogeneous_degree() const;

    void add_term(const Multiindex& alpha, const Rational& c);

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
    friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
    friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
    friend Polynomial operator*(const Rational& c, const Polynomial& p);
    Polynomial operator-() const { return Rational(-1) * *this; }

    bool operator==(const Polynomial& rhs) const = default;

    double eval(const Eigen::VectorXd& xi) const;
    Rational eval_exact(const RationalVector& xi) const;

    std::string to_string() const;

private:
    int vars_;
    std::map<Multiindex, Rational> terms_;
};

}  // namespace opsym
