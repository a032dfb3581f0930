#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gdei/runner.hpp"

namespace gdei {

// Shortest decimal representation that parses back to the same double
// (17 significant digits at most).
std::string format_double(double value);

// Header: iteration,loss,learning_rate,p_k,delta_k,efficiency
// The k = 1 row leaves the three efficiency fields empty.
std::string trace_to_csv(const RunTrace& trace);

// Inverse of trace_to_csv for plotting saved traces. The reconstructed
// trace carries no model or config. Errors name the offending line.
RunTrace trace_from_csv(const std::string& text);

// One panel per iteration limit, each truncating the loss curve at that
// limit. log_y plots log10(loss).
std::string plot_loss_curve(const RunTrace& trace, const std::vector<std::uint64_t>& iteration_limits,
                            bool log_y = false);

// Efficiency against iteration from k = 2, y axis fixed to [0, 100].
std::string plot_efficiency_curve(const RunTrace& trace);

// Every labelled run's efficiency curve overlaid in one panel.
std::string plot_efficiency_overlay(const ComparisonReport& report);

// {label: {summary: {...}, iterations: [...]}} with sorted labels; failed
// runs carry {error: ...} instead.
std::string comparison_to_json(const ComparisonReport& report);

}  // namespace gdei
