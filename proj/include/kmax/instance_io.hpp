#pragma once

// JSON encodings: instance files, experiment configs, gap reports and
// decompositions. Arm labels in reports are 1-based.

#include <filesystem>

#include "json.hpp"

#include "kmax/arm_model.hpp"
#include "kmax/harness.hpp"
#include "kmax/reward.hpp"

namespace kmax {

using json = nlohmann::json;

/// { "k": int, "arms": [ { "values": [..], "probs": [..] } ] }
Instance instance_from_json(const json& j);
json instance_to_json(const Instance& inst);
Instance load_instance_file(const std::filesystem::path& path);

/// Fields present in `j` override those in `base`.
ExperimentConfig config_from_json(const json& j, ExperimentConfig base = {});
json config_to_json(const ExperimentConfig& cfg);

json action_to_json(const Action& action);
/// Infinite gaps are written as null.
json gap_report_to_json(const GapReport& report);
json decomposition_to_json(const Instance& inst);

}  // namespace kmax
