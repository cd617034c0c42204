#pragma once

#include <array>
#include <string>
#include <string_view>

#include <json.hpp>

#include "motionsimp/complexity.hpp"
#include "motionsimp/eval.hpp"
#include "motionsimp/pipeline.hpp"

namespace motionsimp {

using nlohmann::json;

/// Compact, key-sorted serialisation shared by the CLI and the service so both
/// emit byte-identical documents.
std::string dump_json(const json& doc);

json weights_to_json(const MetricWeights& w);

/// {"c1".."c5", "activations", "weights", "frames", "fps", "skeleton"}.
json profile_to_json(const ComplexityProfile& profile, const MotionSequence& seq);

/// "all", "none" or a comma list such as "c1,c3" (the "c" is optional).
std::array<bool, kNumCriteria> parse_criteria(std::string_view text);

/// Config keys: criteria, k, lambda, tau {"c1": ..}, min_len {"c1": ..},
/// psi_target, eps, alpha, flip, sg_window, sg_order. Unknown keys and wrong
/// types throw MotionError(InvalidArgument); the result is validated.
SimplifyConfig config_from_json(const json& doc);
json config_to_json(const SimplifyConfig& config);

json interval_to_json(const ComplexInterval& iv);
json stage_to_json(const StageRecord& stage);

/// Result document; output frames are included when `with_frames` is set.
json result_to_json(const SimplifyResult& result, bool with_frames);

json eval_report_to_json(const EvalReport& report);

}  // namespace motionsimp
