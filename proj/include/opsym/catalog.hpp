#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opsym/symbol_operator.hpp"

namespace opsym {

/// Three-valued expectation attached to catalog entries; `Unknown` marks
/// verdicts the entry does not pin (e.g. cancelling for a non-elliptic operator).
enum class Expected { Yes, No, Unknown };

struct CatalogEntry {
    std::string id;
    std::string params_help;
    Expected elliptic = Expected::Unknown;
    Expected cancelling = Expected::Unknown;
    Expected cocancelling = Expected::Unknown;
    std::string provenance;
};

struct CatalogParams {
    int n = 3;
    std::optional<int> m;  // Hodge form degree
    std::optional<int> k;  // order, where the family is parametrized by it
};

/// Catalog ids: gradient, divergence, curl, divcurl, symder, hodge, laplacian, kpowers.
SymbolOperator catalog_get(const std::string& id, const CatalogParams& params);

/// Golden expectations for one instantiation (id, params).
CatalogEntry catalog_entry(const std::string& id, const CatalogParams& params);

std::vector<std::string> catalog_ids();

// Individual constructors; catalog_get dispatches to these.
SymbolOperator make_gradient(int n, int k = 1);
SymbolOperator make_divergence(int n);
SymbolOperator make_curl(int n);
SymbolOperator make_divcurl();            // n = 3 only
SymbolOperator make_symmetric_derivative(int n);
SymbolOperator make_hodge(int n, int m);  // (d, d*) on m-forms
SymbolOperator make_laplacian(int n);
SymbolOperator make_kpowers(int n, int k);

}  // namespace opsym
