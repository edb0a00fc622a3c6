#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "opsym/rational.hpp"

namespace opsym {

/// Multiindex α ∈ ℕⁿ; the map key for operator coefficients and polynomial terms.
/// Ordering is lexicographic on the entry vector, which fixes the canonical
/// serialization order everywhere.
class Multiindex {
public:
    Multiindex() = default;
    explicit Multiindex(std::vector<int> entries);
    static Multiindex zero(int n);
    static Multiindex unit(int n, int axis, int power = 1);

    int dims() const { return static_cast<int>(entries_.size()); }
    int order() const { return order_; }
    int operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
    const std::vector<int>& entries() const { return entries_; }

    Multiindex plus(const Multiindex& other) const;

    auto operator<=>(const Multiindex& other) const { return entries_ <=> other.entries_; }
    bool operator==(const Multiindex& other) const = default;

    /// ξ^α for real ξ.
    double pow(const Eigen::VectorXd& xi) const;
    /// ξ^α for rational ξ, exact.
    Rational pow(const RationalVector& xi) const;

    /// |α|! / α!  (number of orderings; the Frobenius weight of D^k tensors).
    double multinomial() const;

    std::string to_string() const;  // "a1,a2,...,an"
    static Multiindex parse(const std::string& text, int expected_dims);

    /// All multiindices in n variables of the given order, lexicographically sorted.
    static std::vector<Multiindex> all_of_order(int n, int order);

private:
    std::vector<int> entries_;
    int order_ = 0;
};

}  // namespace opsym
