#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace opsym {

/// Deterministic sphere discretization: how many directions, which generator,
/// and how much local refinement the analyzers run from the best samples.
struct SphereSampling {
    int count = 0;  // 0 -> max(1024, 64 n^2)
    int refine_starts = 8;
    int refine_iterations = 200;
    uint64_t seed = 0;

    int effective_count(int n) const {
        const int floor_count = std::max(1024, 64 * n * n);
        return count > 0 ? std::max(count, 2 * n) : floor_count;
    }
};

/// Low-discrepancy unit directions in ℝⁿ. Deterministic given (n, count, seed):
/// golden-angle sets for n <= 3, Halton/Box-Muller mapped points beyond.
std::vector<Eigen::VectorXd> sphere_points(int n, int count, uint64_t seed = 0);

/// Projected gradient descent of f on the unit sphere starting at x0:
/// numerical tangent gradients, step halving. Returns the refined minimizer.
Eigen::VectorXd refine_sphere_minimum(const std::function<double(const Eigen::VectorXd&)>& f,
                                      Eigen::VectorXd x0, int max_iterations);

}  // namespace opsym
