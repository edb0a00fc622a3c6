#include "opsym/rational.hpp"

#include <cmath>
#include <cstdlib>

namespace opsym {

Rational parse_rational(const std::string& raw) {
    if (raw.empty()) throw InputError("empty rational literal");
    // GMP rejects a leading '+'; the file syntax allows it.
    const std::string text = raw.front() == '+' ? raw.substr(1) : raw;
    if (text.empty()) throw InputError("malformed rational '" + raw + "'");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Rational q(text, 10);
            q.canonicalize();
            return q;
        }
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        if (num.empty() || den.empty()) throw InputError("malformed rational '" + text + "'");
        if (den.front() == '-' || den.front() == '+')
            throw InputError("rational '" + text + "': denominator must be a positive integer");
        Rational q(num + "/" + den, 10);
        if (q.get_den() == 0) throw InputError("rational '" + text + "': zero denominator");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw InputError("malformed rational '" + text + "'");
    }
}

std::string format_rational(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational rationalize(double x, unsigned long max_den) {
    if (!std::isfinite(x)) throw InputError("cannot rationalize non-finite value");
    const bool neg = x < 0;
    double r = std::fabs(x);
    // Continued fraction convergents p/q with q <= max_den.
    unsigned long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        const double a_f = std::floor(r);
        if (a_f > 1e18) break;
        const unsigned long a = static_cast<unsigned long>(a_f);
        if (q1 != 0 && a > (max_den - q0) / q1) break;
        const unsigned long p2 = a * p1 + p0;
        const unsigned long q2 = a * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double frac = r - a_f;
        if (frac < 1e-12) break;
        r = 1.0 / frac;
    }
    if (q1 == 0) return Rational(0);
    Rational out(static_cast<long>(p1), static_cast<long>(q1));
    out.canonicalize();
    return neg ? Rational(-out) : out;
}

}  // namespace opsym
