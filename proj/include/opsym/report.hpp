#pragma once

#include <string>

#include "opsym/analyzers.hpp"
#include "opsym/experiments.hpp"

namespace opsym {

/// Human-readable analysis summary.
std::string render_text(const AnalysisReport& report);

/// Deterministic machine report (sorted keys, shortest round-trip numerals);
/// identical configs and seeds produce byte-identical output.
std::string render_json(const AnalysisReport& report);

std::string render_text(const RatioTable& table);
std::string render_json(const RatioTable& table);

std::string render_text(const GreensReport& report);
std::string render_json(const GreensReport& report);

}  // namespace opsym
