#include "opsym/torus.hpp"

#include <unsupported/Eigen/FFT>

#include "opsym/errors.hpp"

namespace opsym {

int64_t TorusGrid::total() const {
    int64_t t = 1;
    for (int i = 0; i < n; ++i) t *= size;
    return t;
}

void TorusGrid::validate() const {
    if (n < 1 || n > 4) throw InputError("TorusGrid: n must be in 1..4");
    if (size < 2 || (size & (size - 1)) != 0)
        throw InputError("TorusGrid: N must be a power of two >= 2 (got " +
                         std::to_string(size) + ")");
    if (period <= 0) throw InputError("TorusGrid: period must be positive");
    if (total() > memory_cap)
        throw InputError("TorusGrid: N^n = " + std::to_string(total()) +
                         " exceeds the memory cap of " + std::to_string(memory_cap) +
                         " points");
}

std::vector<int64_t> TorusGrid::strides() const {
    std::vector<int64_t> s(static_cast<size_t>(n));
    int64_t acc = 1;
    for (int a = n - 1; a >= 0; --a) {
        s[static_cast<size_t>(a)] = acc;
        acc *= size;
    }
    return s;
}

TorusField::TorusField(const TorusGrid& grid, int dim, bool physical)
    : grid_(grid), dim_(dim), physical_(physical) {
    grid_.validate();
    if (dim < 1) throw InputError("TorusField: dim must be >= 1");
    values_ = Eigen::MatrixXcd::Zero(dim, grid_.total());
}

namespace {

// In-place 1-D transforms along every axis of every component.
void transform_lines(Eigen::MatrixXcd& vals, const TorusGrid& grid, bool forward) {
    static thread_local Eigen::FFT<double> fft;
    const int N = grid.size;
    const auto strides = grid.strides();
    const int64_t total = grid.total();
    std::vector<std::complex<double>> in(static_cast<size_t>(N)), out(static_cast<size_t>(N));
    for (int c = 0; c < vals.rows(); ++c) {
        for (int axis = 0; axis < grid.n; ++axis) {
            const int64_t stride = strides[static_cast<size_t>(axis)];
            const int64_t lines = total / N;
            for (int64_t line = 0; line < lines; ++line) {
                // Decompose the line id over the other axes to find its base point.
                int64_t rem = line, base = 0;
                for (int a = 0; a < grid.n; ++a) {
                    if (a == axis) continue;
                    const int64_t digit = rem % N;
                    rem /= N;
                    base += digit * strides[static_cast<size_t>(a)];
                }
                for (int t = 0; t < N; ++t) in[static_cast<size_t>(t)] = vals(c, base + t * stride);
                if (forward)
                    fft.fwd(out, in);
                else
                    fft.inv(out, in);
                for (int t = 0; t < N; ++t) vals(c, base + t * stride) = out[static_cast<size_t>(t)];
            }
        }
    }
}

}  // namespace

TorusField TorusField::to_frequency() const {
    if (!physical_) throw InputError("to_frequency: field is already in frequency space");
    TorusField out = *this;
    transform_lines(out.values_, grid_, /*forward=*/true);
    out.values_ *= 1.0 / static_cast<double>(grid_.total());
    out.physical_ = false;
    return out;
}

TorusField TorusField::to_physical() const {
    if (physical_) throw InputError("to_physical: field is already in physical space");
    TorusField out = *this;
    transform_lines(out.values_, grid_, /*forward=*/false);
    out.values_ *= static_cast<double>(grid_.total());
    out.physical_ = true;
    return out;
}

double TorusField::max_imag() const {
    return values_.imag().cwiseAbs().maxCoeff();
}

TorusField TorusField::real_part() const {
    TorusField out = *this;
    out.values_ = values_.real().cast<std::complex<double>>();
    return out;
}

TorusField TorusField::operator*(double scale) const {
    TorusField out = *this;
    out.values_ *= scale;
    return out;
}

TorusField TorusField::operator+(const TorusField& rhs) const {
    if (!(grid_ == rhs.grid_) || dim_ != rhs.dim_ || physical_ != rhs.physical_)
        throw InputError("TorusField: mismatched operands");
    TorusField out = *this;
    out.values_ += rhs.values_;
    return out;
}

TorusField TorusField::operator-(const TorusField& rhs) const {
    if (!(grid_ == rhs.grid_) || dim_ != rhs.dim_ || physical_ != rhs.physical_)
        throw InputError("TorusField: mismatched operands");
    TorusField out = *this;
    out.values_ -= rhs.values_;
    return out;
}

GridWalker::GridWalker(const TorusGrid& grid)
    : grid_(grid), digits_(static_cast<size_t>(grid.n), 0) {}

void GridWalker::advance() {
    ++idx_;
    for (int a = grid_.n - 1; a >= 0; --a) {
        if (++digits_[static_cast<size_t>(a)] < grid_.size) return;
        digits_[static_cast<size_t>(a)] = 0;
    }
}

void GridWalker::frequency(Eigen::VectorXd& out) const {
    out.resize(grid_.n);
    for (int a = 0; a < grid_.n; ++a)
        out(a) = grid_.freq_of_digit(digits_[static_cast<size_t>(a)]);
}

void GridWalker::coordinate(Eigen::VectorXd& out) const {
    out.resize(grid_.n);
    const double h = grid_.spacing();
    for (int a = 0; a < grid_.n; ++a) out(a) = digits_[static_cast<size_t>(a)] * h;
}

bool GridWalker::nyquist() const {
    for (int a = 0; a < grid_.n; ++a)
        if (digits_[static_cast<size_t>(a)] == grid_.size / 2) return true;
    return false;
}

bool GridWalker::is_zero_frequency() const {
    for (int a = 0; a < grid_.n; ++a)
        if (digits_[static_cast<size_t>(a)] != 0) return false;
    return true;
}

}  // namespace opsym
