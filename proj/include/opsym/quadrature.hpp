#pragma once

#include <vector>

#include <Eigen/Core>

namespace opsym {

struct QuadNode {
    Eigen::VectorXd point;  // on S^{n-1}
    double weight;
};

/// Product Gauss–Legendre rule on S^{n-1} in spherical coordinates, n ∈ {1,..,4};
/// `order` nodes per angle. Weights sum to the sphere surface area.
std::vector<QuadNode> sphere_quadrature(int n, int order = 64);

/// Surface area of S^{n-1}.
double sphere_area(int n);

}  // namespace opsym
