#include "opsym/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "opsym/errors.hpp"

namespace opsym {

namespace {

struct Rule1d {
    std::vector<double> x;  // nodes on [a, b]
    std::vector<double> w;
};

template <unsigned Order>
Rule1d gauss_rule(double a, double b) {
    using G = boost::math::quadrature::gauss<double, Order>;
    Rule1d rule;
    const double mid = (a + b) / 2, half = (b - a) / 2;
    const auto& xs = G::abscissa();
    const auto& ws = G::weights();
    for (size_t i = 0; i < xs.size(); ++i) {
        rule.x.push_back(mid + half * xs[i]);
        rule.w.push_back(half * ws[i]);
        if (xs[i] != 0.0) {
            rule.x.push_back(mid - half * xs[i]);
            rule.w.push_back(half * ws[i]);
        }
    }
    return rule;
}

Rule1d gauss_legendre(int order, double a, double b) {
    switch (order) {
        case 8: return gauss_rule<8>(a, b);
        case 16: return gauss_rule<16>(a, b);
        case 32: return gauss_rule<32>(a, b);
        case 64: return gauss_rule<64>(a, b);
        case 128: return gauss_rule<128>(a, b);
        default:
            throw InputError("sphere_quadrature: order must be one of 8, 16, 32, 64, 128");
    }
}

}  // namespace

double sphere_area(int n) {
    // |S^{n-1}| = 2 π^{n/2} / Γ(n/2)
    return 2.0 * std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0);
}

std::vector<QuadNode> sphere_quadrature(int n, int order) {
    std::vector<QuadNode> nodes;
    switch (n) {
        case 1: {
            Eigen::VectorXd plus(1), minus(1);
            plus << 1.0;
            minus << -1.0;
            nodes.push_back({plus, 1.0});
            nodes.push_back({minus, 1.0});
            break;
        }
        case 2: {
            const Rule1d phi = gauss_legendre(order, 0.0, 2.0 * M_PI);
            for (size_t i = 0; i < phi.x.size(); ++i) {
                Eigen::VectorXd p(2);
                p << std::cos(phi.x[i]), std::sin(phi.x[i]);
                nodes.push_back({p, phi.w[i]});
            }
            break;
        }
        case 3: {
            const Rule1d theta = gauss_legendre(order, 0.0, M_PI);
            const Rule1d phi = gauss_legendre(order, 0.0, 2.0 * M_PI);
            for (size_t i = 0; i < theta.x.size(); ++i)
                for (size_t j = 0; j < phi.x.size(); ++j) {
                    const double st = std::sin(theta.x[i]), ct = std::cos(theta.x[i]);
                    Eigen::VectorXd p(3);
                    p << st * std::cos(phi.x[j]), st * std::sin(phi.x[j]), ct;
                    nodes.push_back({p, theta.w[i] * phi.w[j] * st});
                }
            break;
        }
        case 4: {
            const Rule1d psi = gauss_legendre(order, 0.0, M_PI);
            const Rule1d theta = gauss_legendre(order, 0.0, M_PI);
            const Rule1d phi = gauss_legendre(order, 0.0, 2.0 * M_PI);
            for (size_t i = 0; i < psi.x.size(); ++i) {
                const double sp = std::sin(psi.x[i]), cp = std::cos(psi.x[i]);
                for (size_t j = 0; j < theta.x.size(); ++j) {
                    const double st = std::sin(theta.x[j]), ct = std::cos(theta.x[j]);
                    for (size_t l = 0; l < phi.x.size(); ++l) {
                        Eigen::VectorXd p(4);
                        p << sp * st * std::cos(phi.x[l]), sp * st * std::sin(phi.x[l]), sp * ct,
                            cp;
                        nodes.push_back({p, psi.w[i] * theta.w[j] * phi.w[l] * sp * sp * st});
                    }
                }
            }
            break;
        }
        default:
            throw InputError("sphere_quadrature: only n in {1,2,3,4} is supported");
    }
    return nodes;
}

}  // namespace opsym
