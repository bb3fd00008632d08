#pragma once

#include <string>
#include <string_view>

#include "nrhf/cbs.hpp"

namespace nrhf {

inline constexpr std::string_view kSolutionHeader = "nrhf-solution";
inline constexpr int kSolutionVersion = 1;

// Per-agent node/time/gen triples; see docs/file-formats.md.
std::string save_solution(const Solution& solution);
Solution load_solution(std::string_view text);

// One `key = value` line per statistic.
std::string format_stats(const CbsStats& stats, SearchStatus status);

}  // namespace nrhf
