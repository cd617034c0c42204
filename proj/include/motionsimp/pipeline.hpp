#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "motionsimp/complexity.hpp"
#include "motionsimp/rules.hpp"
#include "motionsimp/trends.hpp"

namespace motionsimp {

inline constexpr double kDefaultTauPercentile = 75.0;
inline constexpr double kDefaultMinLenSeconds = 0.25;

struct SimplifyConfig {
    double epsilon = kDefaultTrendEpsilon;
    double alpha = kDefaultOverlapAlpha;
    // Unset thresholds default to the 75th percentile of the working
    // sequence's own activation trace at that stage.
    std::array<std::optional<double>, kNumCriteria> tau{};
    // Unset minimum lengths default to 0.25 s of frames (at least 2).
    std::array<std::optional<std::size_t>, kNumCriteria> min_len{};
    double k = 0.5;
    int lambda_slow = 2;
    std::optional<double> psi_target;  // unset: yaw at each interval's first frame
    FlipVector flip_vector{-1, 1, 1};
    std::array<bool, kNumCriteria> criteria_enabled{true, true, true, true, true};
    SavgolParams smoothing{};

    void validate() const;
    MetricWeights metric_weights() const;
    double tau_for(int criterion, const ComplexityProfile& profile) const;
    std::size_t min_len_for(int criterion, double fps) const;
};

/// What one stage of the pipeline did.
struct StageRecord {
    int criterion = 0;
    bool enabled = false;
    bool attempted = false;  // score exceeded tau
    bool accepted = false;   // candidate strictly lowered the score
    double tau = 0.0;
    std::size_t min_len = 0;
    double score_before = 0.0;
    std::optional<double> score_candidate;
    std::vector<ComplexInterval> intervals;
    std::vector<FlipVector> flips;  // criterion 5 only, one per interval
    std::uint64_t digest_before = 0;
    std::uint64_t digest_after = 0;
};

struct SimplifyResult {
    MotionSequence motion;
    ComplexityProfile before;
    ComplexityProfile after;
    std::array<StageRecord, kNumCriteria> applied;
};

/// State threaded through the stages: the working sequence and its cached
/// scores, which only change when a stage is accepted.
struct PipelineState {
    MotionSequence working;
    ComplexityProfile scores;
    std::vector<MotionTrend> trends;
};

/// Candidate edit for one criterion without the acceptance decision.
MotionSequence apply_rule(int criterion, const MotionSequence& working, const std::vector<ComplexInterval>& intervals,
                          const SimplifyConfig& config, const std::vector<MotionTrend>& trends,
                          std::vector<FlipVector>* flips_used = nullptr);

/// Runs one gated, accept-if-improved stage and updates `state` in place.
StageRecord run_stage(int criterion, PipelineState& state, const SimplifyConfig& config);

/// The full rule-based pipeline: C1 velocity reduction, C2 distance
/// compression, C3 orientation stabilisation, C4 distance compression and C5
/// directional change, in that order. Trends are detected once up front.
SimplifyResult simplify(const MotionSequence& seq, const SimplifyConfig& config = {});

}  // namespace motionsimp
