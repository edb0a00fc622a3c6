#include "opsym/polynomial.hpp"

#include <sstream>

#include "opsym/errors.hpp"

namespace opsym {

Polynomial Polynomial::constant(int vars, const Rational& c) {
    Polynomial p(vars);
    p.add_term(Multiindex::zero(vars), c);
    return p;
}

Polynomial Polynomial::monomial(const Multiindex& alpha, const Rational& c) {
    Polynomial p(alpha.dims());
    p.add_term(alpha, c);
    return p;
}

std::optional<int> Polynomial::degree() const {
    std::optional<int> d;
    for (const auto& [alpha, c] : terms_) d = std::max(d.value_or(0), alpha.order());
    return d;
}

std::optional<int> Polynomial::homogeneous_degree() const {
    std::optional<int> d;
    for (const auto& [alpha, c] : terms_) {
        if (d && *d != alpha.order()) return std::nullopt;
        d = alpha.order();
    }
    return d;
}

void Polynomial::add_term(const Multiindex& alpha, const Rational& c) {
    if (alpha.dims() != vars_) throw InputError("polynomial term has wrong variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(alpha, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (vars_ != rhs.vars_) throw InputError("polynomial variable count mismatch");
    for (const auto& [alpha, c] : rhs.terms_) add_term(alpha, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    if (vars_ != rhs.vars_) throw InputError("polynomial variable count mismatch");
    for (const auto& [alpha, c] : rhs.terms_) add_term(alpha, Rational(-c));
    return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
    if (lhs.vars_ != rhs.vars_) throw InputError("polynomial variable count mismatch");
    Polynomial out(lhs.vars_);
    for (const auto& [a, ca] : lhs.terms_)
        for (const auto& [b, cb] : rhs.terms_) out.add_term(a.plus(b), ca * cb);
    return out;
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
    Polynomial out(p.vars_);
    if (c == 0) return out;
    for (const auto& [alpha, coef] : p.terms_) out.terms_.emplace(alpha, c * coef);
    return out;
}

double Polynomial::eval(const Eigen::VectorXd& xi) const {
    double out = 0.0;
    for (const auto& [alpha, c] : terms_) out += to_double(c) * alpha.pow(xi);
    return out;
}

Rational Polynomial::eval_exact(const RationalVector& xi) const {
    Rational out(0);
    for (const auto& [alpha, c] : terms_) out += c * alpha.pow(xi);
    return out;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [alpha, c] : terms_) {
        Rational a = c;
        if (!first) {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool needs_coef = true;
        std::ostringstream mono;
        for (int i = 0; i < alpha.dims(); ++i) {
            if (alpha[i] == 0) continue;
            needs_coef = false;
            mono << "x" << (i + 1);
            if (alpha[i] > 1) mono << "^" << alpha[i];
            mono << "*";
        }
        std::string m = mono.str();
        if (!m.empty()) m.pop_back();  // trailing '*'
        if (needs_coef || a != 1)
            os << format_rational(a) << (m.empty() ? "" : "*");
        os << m;
    }
    return os.str();
}

}  // namespace opsym
