#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "nodeprune/data.hpp"
#include "nodeprune/network.hpp"
#include "nodeprune/optimizer.hpp"
#include "nodeprune/penalty.hpp"
#include "nodeprune/selection.hpp"
#include "nodeprune/structure.hpp"

namespace nodeprune {

using nlohmann::json;

// NetworkParams: {"d", "H", "u": H rows of d, "v": [H], "b1": [H], "b2"}.
json to_json(const NetworkParams& params);
/// Validates dimensions and finiteness; throws std::invalid_argument.
NetworkParams network_from_json(const json& j);

json to_json(const PenaltySpec& spec);
PenaltySpec penalty_from_json(const json& j);

json to_json(const MinimalityReport& report);
json to_json(const NodeCounts& counts);

/// Traces are large; they are only included on request.
json to_json(const FitReport& fit, bool include_trace = false);

json to_json(const SelectionResult& result, bool include_traces = false);

json to_json(const TrainConfig& cfg);
json to_json(const GridSpec& grids);
json to_json(const SimSpec& spec);
json to_json(const SplitSpec& spec);

/// Fields missing from `j` keep the value already in `out`.
void merge_from_json(const json& j, TrainConfig& out);
void merge_from_json(const json& j, GridSpec& out);
void merge_from_json(const json& j, SimSpec& out);
void merge_from_json(const json& j, SplitSpec& out);

/// Round-trip text ("%.17g"); identical doubles print identically.
std::string format_number(double value);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

/// Columns: epoch, risk, penalty, objective (epoch counts from 1).
void write_trace_csv(const std::filesystem::path& path, const FitReport& fit);

/// Columns: step, reg, aic, nonzero_nodes, risk.
void write_aic_csv(const std::filesystem::path& path, const SelectionResult& result);

}  // namespace nodeprune
