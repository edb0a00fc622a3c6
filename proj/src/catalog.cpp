#include "opsym/catalog.hpp"

#include <algorithm>

#include "opsym/errors.hpp"

namespace opsym {

namespace {

using Coeffs = std::map<Multiindex, RationalMatrix>;

void set_entry(Coeffs& coeffs, const Multiindex& alpha, int rows, int cols, int r, int c,
               const Rational& value) {
    auto it = coeffs.emplace(alpha, RationalMatrix::Zero(rows, cols)).first;
    it->second(r, c) += value;
}

/// Lexicographically sorted m-element subsets of {0,...,n-1}; the basis order
/// for ⋀^m ℝⁿ used by the Hodge constructors.
std::vector<std::vector<int>> subsets(int n, int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == m) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

int subset_index(const std::vector<std::vector<int>>& table, const std::vector<int>& s) {
    auto it = std::lower_bound(table.begin(), table.end(), s);
    return static_cast<int>(it - table.begin());
}

}  // namespace

SymbolOperator make_gradient(int n, int k) {
    if (n < 1) throw InputError("gradient: need n >= 1");
    if (k < 1) throw InputError("gradient: need k >= 1");
    // Scalar source; one target component per multiindex of order k, rows in
    // descending lex order so that row i of the k=1 symbol is xi_{i+1}.
    auto alphas = Multiindex::all_of_order(n, k);
    std::reverse(alphas.begin(), alphas.end());
    const int dimE = static_cast<int>(alphas.size());
    Coeffs coeffs;
    for (int row = 0; row < dimE; ++row)
        set_entry(coeffs, alphas[static_cast<size_t>(row)], dimE, 1, row, 0, 1);
    return SymbolOperator(k == 1 ? "gradient" : "gradient^" + std::to_string(k), n, k, 1, dimE,
                          std::move(coeffs));
}

SymbolOperator make_divergence(int n) {
    if (n < 1) throw InputError("divergence: need n >= 1");
    Coeffs coeffs;
    for (int i = 0; i < n; ++i) set_entry(coeffs, Multiindex::unit(n, i), 1, n, 0, i, 1);
    return SymbolOperator("divergence", n, 1, n, 1, std::move(coeffs));
}

SymbolOperator make_curl(int n) {
    if (n < 2) throw InputError("curl: need n >= 2");
    // (curl u)_{ab} = ∂_a u_b - ∂_b u_a over pairs a < b.
    const auto pairs = subsets(n, 2);
    const int dimE = static_cast<int>(pairs.size());
    Coeffs coeffs;
    for (int row = 0; row < dimE; ++row) {
        const int a = pairs[static_cast<size_t>(row)][0];
        const int b = pairs[static_cast<size_t>(row)][1];
        set_entry(coeffs, Multiindex::unit(n, a), dimE, n, row, b, 1);
        set_entry(coeffs, Multiindex::unit(n, b), dimE, n, row, a, -1);
    }
    return SymbolOperator("curl", n, 1, n, dimE, std::move(coeffs));
}

SymbolOperator make_divcurl() {
    const int n = 3;
    // A(ξ)v = (ξ·v, ξ×v); the Lagrange identity makes |A(ξ)v| = |ξ||v|.
    Coeffs coeffs;
    for (int i = 0; i < n; ++i) set_entry(coeffs, Multiindex::unit(n, i), 4, 3, 0, i, 1);
    // (ξ×v)_r = Σ ε_{rij} ξ_i v_j
    const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                              {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                              {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
    for (int r = 0; r < 3; ++r)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (eps[r][i][j] != 0)
                    set_entry(coeffs, Multiindex::unit(n, i), 4, 3, 1 + r, j, eps[r][i][j]);
    return SymbolOperator("divcurl", n, 1, 3, 4, std::move(coeffs));
}

SymbolOperator make_symmetric_derivative(int n) {
    if (n < 1) throw InputError("symder: need n >= 1");
    // Target is full n×n matrices (row-major), the symmetric image sits inside.
    Coeffs coeffs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int row = i * n + j;
            // (A(ξ)v)_{ij} = (ξ_i v_j + ξ_j v_i)/2
            set_entry(coeffs, Multiindex::unit(n, i), n * n, n, row, j, Rational(1, 2));
            set_entry(coeffs, Multiindex::unit(n, j), n * n, n, row, i, Rational(1, 2));
        }
    return SymbolOperator("symder", n, 1, n, n * n, std::move(coeffs));
}

SymbolOperator make_hodge(int n, int m) {
    if (n < 2 || m < 1 || m > n - 1)
        throw InputError("hodge: need n >= 2 and 1 <= m <= n-1 (got n=" + std::to_string(n) +
                         ", m=" + std::to_string(m) + ")");
    const auto src = subsets(n, m);
    const auto up = subsets(n, m + 1);
    const auto down = subsets(n, m - 1);
    const int dimV = static_cast<int>(src.size());
    const int dimUp = static_cast<int>(up.size());
    const int dimDown = static_cast<int>(down.size());
    const int dimE = dimUp + dimDown;
    Coeffs coeffs;
    for (int col = 0; col < dimV; ++col) {
        const auto& s = src[static_cast<size_t>(col)];
        for (int i = 0; i < n; ++i) {
            // (ξ ∧ v)_T with T = {i} ∪ S, sign = (-1)^{position of i in T}
            if (std::find(s.begin(), s.end(), i) == s.end()) {
                std::vector<int> t = s;
                t.insert(std::lower_bound(t.begin(), t.end(), i), i);
                const int pos = static_cast<int>(
                    std::lower_bound(t.begin(), t.end(), i) - t.begin());
                const int row = subset_index(up, t);
                set_entry(coeffs, Multiindex::unit(n, i), dimE, dimV, row, col,
                          (pos % 2 == 0) ? 1 : -1);
            } else {
                // (ξ ⌟ v)_S' with S' = S \ {i}, sign = (-1)^{position of i in S}
                std::vector<int> t = s;
                const auto where = std::find(t.begin(), t.end(), i);
                const int pos = static_cast<int>(where - t.begin());
                t.erase(where);
                const int row = dimUp + subset_index(down, t);
                set_entry(coeffs, Multiindex::unit(n, i), dimE, dimV, row, col,
                          (pos % 2 == 0) ? 1 : -1);
            }
        }
    }
    return SymbolOperator("hodge", n, 1, dimV, dimE, std::move(coeffs));
}

SymbolOperator make_laplacian(int n) {
    if (n < 1) throw InputError("laplacian: need n >= 1");
    Coeffs coeffs;
    for (int i = 0; i < n; ++i) set_entry(coeffs, Multiindex::unit(n, i, 2), 1, 1, 0, 0, 1);
    return SymbolOperator("laplacian", n, 2, 1, 1, std::move(coeffs));
}

SymbolOperator make_kpowers(int n, int k) {
    if (n < 1 || k < 1) throw InputError("kpowers: need n >= 1 and k >= 1");
    // L(D)v = ∂_1^k v_1 + ... + ∂_n^k v_n
    Coeffs coeffs;
    for (int i = 0; i < n; ++i) set_entry(coeffs, Multiindex::unit(n, i, k), 1, n, 0, i, 1);
    return SymbolOperator("kpowers", n, k, n, 1, std::move(coeffs));
}

SymbolOperator catalog_get(const std::string& id, const CatalogParams& p) {
    if (id == "gradient") return make_gradient(p.n, p.k.value_or(1));
    if (id == "divergence") return make_divergence(p.n);
    if (id == "curl") return make_curl(p.n);
    if (id == "divcurl") {
        if (p.n != 3) throw InputError("divcurl: only n = 3 is defined");
        return make_divcurl();
    }
    if (id == "symder") return make_symmetric_derivative(p.n);
    if (id == "hodge") {
        if (!p.m) throw InputError("hodge: parameter m is required (1 <= m <= n-1)");
        return make_hodge(p.n, *p.m);
    }
    if (id == "laplacian") return make_laplacian(p.n);
    if (id == "kpowers") return make_kpowers(p.n, p.k.value_or(2));
    throw InputError("unknown catalog id '" + id + "'; valid ids: gradient, divergence, curl, " +
                     "divcurl, symder, hodge, laplacian, kpowers");
}

CatalogEntry catalog_entry(const std::string& id, const CatalogParams& p) {
    CatalogEntry e;
    e.id = id;
    if (id == "gradient") {
        e.params_help = "n >= 1, optional k >= 1";
        e.elliptic = Expected::Yes;
        e.cancelling = (p.n >= 2) ? Expected::Yes : Expected::No;
        e.cocancelling = Expected::Yes;
        e.provenance = "scalar Sobolev inequality; image is the line through (xi^alpha)";
    } else if (id == "divergence") {
        e.params_help = "n >= 1";
        e.elliptic = (p.n == 1) ? Expected::Yes : Expected::No;
        e.cancelling = (p.n == 1) ? Expected::No : Expected::Unknown;
        e.cocancelling = Expected::Yes;
        e.provenance = "pointwise kernel {xi}^perp; their intersection is trivial";
    } else if (id == "curl") {
        e.params_help = "n >= 2";
        e.elliptic = Expected::No;
        e.cocancelling = Expected::Yes;
        e.provenance = "pointwise kernel R.xi; their intersection is trivial";
    } else if (id == "divcurl") {
        e.params_help = "n = 3";
        e.elliptic = Expected::Yes;
        e.cancelling = Expected::No;
        e.cocancelling = Expected::Yes;
        e.provenance = "images R x {xi}^perp intersect in R x {0}";
    } else if (id == "symder") {
        e.params_help = "n >= 1";
        e.elliptic = Expected::Yes;
        e.cancelling = (p.n >= 2) ? Expected::Yes : Expected::No;
        e.cocancelling = Expected::Yes;
        e.provenance = "Korn-Sobolev inequality regime";
    } else if (id == "hodge") {
        e.params_help = "n >= 2, 1 <= m <= n-1";
        e.elliptic = Expected::Yes;
        const int m = p.m.value_or(0);
        e.cancelling = (m >= 2 && m <= p.n - 2) ? Expected::Yes : Expected::No;
        e.cocancelling = Expected::Yes;
        e.provenance = "endpoint Hodge systems; middle degrees cancel";
    } else if (id == "laplacian") {
        e.params_help = "n >= 1";
        e.elliptic = Expected::Yes;
        e.cancelling = Expected::No;
        e.cocancelling = Expected::Yes;
        e.provenance = "image is all of the 1-dimensional target for every xi";
    } else if (id == "kpowers") {
        e.params_help = "n >= 1, k >= 1";
        e.elliptic = (p.n == 1) ? Expected::Yes : Expected::No;
        e.cocancelling = Expected::Yes;
        e.provenance = "independent monomials xi_i^k force a trivial common kernel";
    } else {
        throw InputError("unknown catalog id '" + id + "'");
    }
    return e;
}

std::vector<std::string> catalog_ids() {
    return {"gradient", "divergence", "curl", "divcurl", "symder", "hodge", "laplacian", "kpowers"};
}

}  // namespace opsym
