#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace opsym {

/// Periodic grid: N points per axis (power of two), frequency lattice
/// m ∈ (−N/2, N/2]^n, physical frequencies m / period.
struct TorusGrid {
    int n = 3;
    int size = 64;
    double period = 1.0;
    int64_t memory_cap = int64_t(1) << 27;  // max complex elements per field

    int64_t total() const;
    double spacing() const { return period / size; }

    void validate() const;

    /// Mixed-radix strides, axis 0 slowest.
    std::vector<int64_t> strides() const;

    /// Integer frequency of one grid digit: j ↦ j or j − N, in (−N/2, N/2].
    int freq_of_digit(int j) const { return j <= size / 2 ? j : j - size; }

    bool operator==(const TorusGrid& rhs) const {
        return n == rhs.n && size == rhs.size && period == rhs.period;
    }
};

/// Sampled vector-valued function on the grid. In frequency space the stored
/// values are synthesis coefficients: u(x) = Σ_m values(m) e^{2πi m·x/period}.
class TorusField {
public:
    TorusField() = default;
    TorusField(const TorusGrid& grid, int dim, bool physical = true);

    const TorusGrid& grid() const { return grid_; }
    int dim() const { return dim_; }
    bool is_physical() const { return physical_; }
    int64_t total() const { return grid_.total(); }

    Eigen::MatrixXcd& values() { return values_; }
    const Eigen::MatrixXcd& values() const { return values_; }

    TorusField to_frequency() const;
    TorusField to_physical() const;

    /// Max |imaginary part| over a nominally real physical field.
    double max_imag() const;
    /// Drops imaginary parts (used after verified-real round trips).
    TorusField real_part() const;

    TorusField operator*(double scale) const;
    TorusField operator+(const TorusField& rhs) const;
    TorusField operator-(const TorusField& rhs) const;

private:
    TorusGrid grid_;
    int dim_ = 0;
    bool physical_ = true;
    Eigen::MatrixXcd values_;  // dim × total
};

/// Iterates grid indices as an odometer; exposes the linear index, the digit
/// vector, and the integer frequency vector of the current point.
class GridWalker {
public:
    explicit GridWalker(const TorusGrid& grid);
    bool done() const { return idx_ >= grid_.total(); }
    void advance();

    int64_t index() const { return idx_; }
    const std::vector<int>& digits() const { return digits_; }
    /// Integer frequency vector m.
    void frequency(Eigen::VectorXd& out) const;
    /// Physical coordinate x = digits · spacing.
    void coordinate(Eigen::VectorXd& out) const;
    /// True when any frequency component equals the unpaired Nyquist N/2.
    bool nyquist() const;
    bool is_zero_frequency() const;

private:
    TorusGrid grid_;
    int64_t idx_ = 0;
    std::vector<int> digits_;
};

}  // namespace opsym
