#pragma once

#include <string>

#include "opsym/symbol_operator.hpp"

namespace opsym {

/// Operator spec file, line oriented, format_version 1:
///
///   format_version 1
///   name divcurl
///   n 3
///   k 1
///   dimV 3
///   dimE 4
///   coeff 0,0,1 2 0 -1
///   coeff 0,0,1 3 1 1/1
///   ...
///
/// `coeff <multiindex> <row> <col> <rational>` quadruples; zero entries are
/// omitted; serialization order is (multiindex lex, row, col), which makes
/// parse → serialize bit-exact. Entries with |α| ≠ k are rejected.
SymbolOperator parse_operator_spec(const std::string& text);
SymbolOperator load_operator_spec(const std::string& path);

std::string serialize_operator_spec(const SymbolOperator& op);

}  // namespace opsym
