#pragma once

#include <string>
#include <vector>

#include "exst/statistics.hpp"

namespace exst {

/// "0" for the trivial group, else "Z4", "Z2xZ4xZ4", ...
std::string factors_text(const std::vector<BigInt>& factors);

/// Structured text report: versioned header, `key: value` lines, and a final
/// human-readable `T = ...` line.
std::string statistics_report(const std::string& model_description,
                              const StatisticsResult& r);

}  // namespace exst
