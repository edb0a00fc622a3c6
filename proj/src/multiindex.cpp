#include "opsym/multiindex.hpp"

#include <numeric>
#include <sstream>

#include "opsym/errors.hpp"

namespace opsym {

Multiindex::Multiindex(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_)
        if (e < 0) throw InputError("multiindex entries must be nonnegative");
    order_ = std::accumulate(entries_.begin(), entries_.end(), 0);
}

Multiindex Multiindex::zero(int n) { return Multiindex(std::vector<int>(static_cast<size_t>(n), 0)); }

Multiindex Multiindex::unit(int n, int axis, int power) {
    std::vector<int> e(static_cast<size_t>(n), 0);
    e[static_cast<size_t>(axis)] = power;
    return Multiindex(std::move(e));
}

Multiindex Multiindex::plus(const Multiindex& other) const {
    if (dims() != other.dims()) throw InputError("multiindex dimension mismatch");
    std::vector<int> e(entries_);
    for (int i = 0; i < dims(); ++i) e[static_cast<size_t>(i)] += other[i];
    return Multiindex(std::move(e));
}

double Multiindex::pow(const Eigen::VectorXd& xi) const {
    if (xi.size() != dims()) throw InputError("multiindex/vector dimension mismatch");
    double out = 1.0;
    for (int i = 0; i < dims(); ++i)
        for (int p = 0; p < entries_[static_cast<size_t>(i)]; ++p) out *= xi[i];
    return out;
}

Rational Multiindex::pow(const RationalVector& xi) const {
    if (xi.size() != dims()) throw InputError("multiindex/vector dimension mismatch");
    Rational out(1);
    for (int i = 0; i < dims(); ++i)
        for (int p = 0; p < entries_[static_cast<size_t>(i)]; ++p) out *= xi[i];
    return out;
}

double Multiindex::multinomial() const {
    double out = 1.0;
    int used = 0;
    for (int e : entries_)
        for (int j = 1; j <= e; ++j) out *= static_cast<double>(++used) / j;
    return out;
}

std::string Multiindex::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < dims(); ++i) {
        if (i) os << ',';
        os << entries_[static_cast<size_t>(i)];
    }
    return os.str();
}

Multiindex Multiindex::parse(const std::string& text, int expected_dims) {
    std::vector<int> e;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(part, &pos);
        } catch (const std::exception&) {
            throw InputError("bad multiindex component '" + part + "'");
        }
        if (pos != part.size()) throw InputError("bad multiindex component '" + part + "'");
        e.push_back(v);
    }
    if (expected_dims >= 0 && static_cast<int>(e.size()) != expected_dims)
        throw InputError("multiindex '" + text + "' has " + std::to_string(e.size()) +
                         " components, expected " + std::to_string(expected_dims));
    return Multiindex(std::move(e));
}

std::vector<Multiindex> Multiindex::all_of_order(int n, int order) {
    std::vector<Multiindex> out;
    std::vector<int> cur(static_cast<size_t>(n), 0);
    // Depth-first in lexicographic order: assign the largest feasible head first? No —
    // lexicographic ascending means (0,...,0,order) first. Recurse smallest-first.
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == n - 1) {
            cur[static_cast<size_t>(pos)] = remaining;
            out.emplace_back(cur);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[static_cast<size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    if (n >= 1) rec(rec, 0, order);
    return out;
}

}  // namespace opsym
