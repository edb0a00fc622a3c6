#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <string>

#include "opsym/errors.hpp"

namespace opsym {

using Rational = mpq_class;

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

// Parses "p", "-p", "p/q" with q > 0. Used by the operator spec file format.
Rational parse_rational(const std::string& text);

// Canonical form: "p" or "p/q" with gcd(p,q)=1, q > 1 only when needed.
std::string format_rational(const Rational& q);

// Nearest rational with denominator at most max_den (continued fractions).
Rational rationalize(double x, unsigned long max_den);

// mpq_class(p, q) does not reduce p/q; comparisons on unreduced values are
// wrong. Every two-argument construction must go through here.
inline Rational make_rational(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace opsym

namespace Eigen {

// Scalar traits so dense Eigen types can hold exact rationals.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    typedef mpq_class Real;
    typedef mpq_class NonInteger;
    typedef mpq_class Nested;

    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }

    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
};

}  // namespace Eigen
