#include "opsym/sphere.hpp"

#include <cmath>

#include "opsym/errors.hpp"

namespace opsym {

namespace {

double halton(uint64_t index, uint64_t base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

constexpr uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

}  // namespace

std::vector<Eigen::VectorXd> sphere_points(int n, int count, uint64_t seed) {
    if (n < 1) throw InputError("sphere_points: need n >= 1");
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(static_cast<size_t>(count));
    if (n == 1) {
        for (int i = 0; i < count; ++i) {
            Eigen::VectorXd p(1);
            p(0) = (i % 2 == 0) ? 1.0 : -1.0;
            pts.push_back(p);
        }
        return pts;
    }
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    const double rot = std::fmod(static_cast<double>(seed) * 0.6180339887498949, 1.0);
    if (n == 2) {
        for (int i = 0; i < count; ++i) {
            const double t = 2.0 * M_PI * (std::fmod(i / golden + rot, 1.0));
            Eigen::VectorXd p(2);
            p << std::cos(t), std::sin(t);
            pts.push_back(p);
        }
        return pts;
    }
    if (n == 3) {
        // Fibonacci sphere.
        for (int i = 0; i < count; ++i) {
            const double z = 1.0 - (2.0 * i + 1.0) / count;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double t = 2.0 * M_PI * std::fmod(i / golden + rot, 1.0);
            Eigen::VectorXd p(3);
            p << r * std::cos(t), r * std::sin(t), z;
            pts.push_back(p);
        }
        return pts;
    }
    // Halton points mapped through Box-Muller then normalized; uniform on S^{n-1}.
    const int pairs = (n + 1) / 2;
    if (pairs > 4) throw InputError("sphere_points: n > 8 not supported");
    for (int i = 0; i < count; ++i) {
        const uint64_t idx = static_cast<uint64_t>(i) + 1 + seed * 7919;
        Eigen::VectorXd g(2 * pairs);
        for (int p = 0; p < pairs; ++p) {
            const double u1 = std::min(std::max(halton(idx, kPrimes[2 * p]), 1e-12), 1.0);
            const double u2 = halton(idx, kPrimes[2 * p + 1]);
            const double rad = std::sqrt(-2.0 * std::log(u1));
            g(2 * p) = rad * std::cos(2.0 * M_PI * u2);
            g(2 * p + 1) = rad * std::sin(2.0 * M_PI * u2);
        }
        Eigen::VectorXd p = g.head(n);
        const double norm = p.norm();
        if (norm < 1e-9) continue;
        pts.push_back(p / norm);
    }
    // Top up in the unlikely event some points were skipped.
    uint64_t extra = static_cast<uint64_t>(count) + 1;
    while (static_cast<int>(pts.size()) < count) {
        const uint64_t idx = extra++ + seed * 7919;
        Eigen::VectorXd g(2 * pairs);
        for (int p = 0; p < pairs; ++p) {
            const double u1 = std::min(std::max(halton(idx, kPrimes[2 * p]), 1e-12), 1.0);
            const double u2 = halton(idx, kPrimes[2 * p + 1]);
            const double rad = std::sqrt(-2.0 * std::log(u1));
            g(2 * p) = rad * std::cos(2.0 * M_PI * u2);
            g(2 * p + 1) = rad * std::sin(2.0 * M_PI * u2);
        }
        Eigen::VectorXd p = g.head(n);
        if (p.norm() < 1e-9) continue;
        pts.push_back(p.normalized());
    }
    return pts;
}

Eigen::VectorXd refine_sphere_minimum(const std::function<double(const Eigen::VectorXd&)>& f,
                                      Eigen::VectorXd x, int max_iterations) {
    const int n = static_cast<int>(x.size());
    x.normalize();
    double fx = f(x);
    double step = 0.1;
    const double fd = 1e-6;
    for (int it = 0; it < max_iterations && step > 1e-14; ++it) {
        Eigen::VectorXd grad(n);
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd hi = x, lo = x;
            hi(i) += fd;
            lo(i) -= fd;
            grad(i) = (f(hi.normalized()) - f(lo.normalized())) / (2 * fd);
        }
        Eigen::VectorXd tangent = grad - grad.dot(x) * x;
        const double gnorm = tangent.norm();
        if (gnorm < 1e-15) break;
        Eigen::VectorXd trial = (x - (step / gnorm) * tangent).normalized();
        const double ft = f(trial);
        if (ft < fx) {
            x = trial;
            fx = ft;
            step *= 1.5;
        } else {
            step *= 0.5;
        }
    }
    return x;
}

}  // namespace opsym
