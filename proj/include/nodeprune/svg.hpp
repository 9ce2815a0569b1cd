#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nodeprune {

/// node count -> number of runs that selected it
using NodeHistogram = std::map<int, int>;

/// One histogram per method, drawn side by side in the given order.
using MethodHistograms = std::vector<std::pair<std::string, NodeHistogram>>;

/**
 * Standalone SVG bar chart of selected node counts. Every bar is a
 * `<rect class="bar">`; categories with zero count draw nothing. Throws
 * std::invalid_argument when there is nothing to draw.
 */
std::string histogram_svg(const MethodHistograms& counts, const std::string& title);
void emit_histogram_svg(const MethodHistograms& counts, const std::filesystem::path& out_path,
                        const std::string& title = "Selected hidden nodes");

struct MethodErrors {
  std::string method;
  double train = 0.0;
  double test = 0.0;
};

/// Grouped train/test bars per method.
std::string error_bars_svg(const std::vector<MethodErrors>& errors, const std::string& title);
void emit_error_bars_svg(const std::vector<MethodErrors>& errors, const std::filesystem::path& out_path,
                         const std::string& title = "Mean squared error");

}  // namespace nodeprune
