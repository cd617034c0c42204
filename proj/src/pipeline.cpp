#include "motionsimp/pipeline.hpp"

#include <cmath>

#include "motionsimp/errors.hpp"

namespace motionsimp {

void SimplifyConfig::validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) fail(ErrorKind::InvalidArgument, "epsilon must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::InvalidArgument, "alpha must be in (0, 1]");
    if (!(k >= 0.0 && k <= 1.0)) fail(ErrorKind::InvalidArgument, "k must be in [0, 1]");
    if (lambda_slow < 2) fail(ErrorKind::InvalidArgument, "lambda must be an integer >= 2");
    for (const auto& t : tau) {
        if (t && !std::isfinite(*t)) fail(ErrorKind::InvalidArgument, "tau must be finite");
    }
    for (const auto& l : min_len) {
        if (l && *l < 2) fail(ErrorKind::InvalidArgument, "min_len must be >= 2");
    }
    if (psi_target && !std::isfinite(*psi_target)) fail(ErrorKind::InvalidArgument, "psi_target must be finite");
    for (int v : flip_vector) {
        if (v != 1 && v != -1) fail(ErrorKind::InvalidArgument, "flip vector entries must be -1 or +1");
    }
    smoothing.validate();
}

MetricWeights SimplifyConfig::metric_weights() const {
    MetricWeights w;
    w.smoothing = smoothing;
    return w;
}

double SimplifyConfig::tau_for(int criterion, const ComplexityProfile& profile) const {
    const auto& t = tau.at(static_cast<std::size_t>(criterion - 1));
    return t ? *t : percentile(profile.activation(criterion), kDefaultTauPercentile);
}

std::size_t SimplifyConfig::min_len_for(int criterion, double fps) const {
    const auto& l = min_len.at(static_cast<std::size_t>(criterion - 1));
    if (l) return *l;
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(kDefaultMinLenSeconds * fps)));
}

MotionSequence apply_rule(int criterion, const MotionSequence& working, const std::vector<ComplexInterval>& intervals,
                          const SimplifyConfig& config, const std::vector<MotionTrend>& trends,
                          std::vector<FlipVector>* flips_used) {
    switch (criterion) {
        case 1:
            return velocity_reduction(working, intervals, config.lambda_slow);
        case 2:
        case 4:
            return distance_compression(working, intervals, config.k);
        case 3:
            return orientation_stabilization(working, intervals, config.psi_target);
        case 5: {
            MotionSequence gen = working;
            for (const auto& iv : intervals) {
                const FlipVector flip = derive_flip_vector(trends, iv, config.alpha).value_or(config.flip_vector);
                if (flips_used) flips_used->push_back(flip);
                gen = directional_change(gen, {iv}, flip);
            }
            return gen;
        }
        default:
            fail(ErrorKind::InvalidArgument, "criterion must be 1..5");
    }
}

StageRecord run_stage(int criterion, PipelineState& state, const SimplifyConfig& config) {
    StageRecord rec;
    rec.criterion = criterion;
    rec.enabled = config.criteria_enabled.at(static_cast<std::size_t>(criterion - 1));
    rec.digest_before = state.working.digest();
    rec.digest_after = rec.digest_before;
    rec.score_before = state.scores.score(criterion);
    if (!rec.enabled) return rec;

    rec.tau = config.tau_for(criterion, state.scores);
    rec.min_len = config.min_len_for(criterion, state.working.fps());
    if (!(rec.score_before > rec.tau)) return rec;
    rec.attempted = true;

    rec.intervals = detect_intervals(state.working, state.scores, criterion, rec.tau, rec.min_len, state.trends);
    MotionSequence candidate =
        apply_rule(criterion, state.working, rec.intervals, config, state.trends, &rec.flips);
    ComplexityProfile candidate_scores = compute_profile(candidate, config.metric_weights());
    rec.score_candidate = candidate_scores.score(criterion);
    if (*rec.score_candidate < rec.score_before) {
        rec.accepted = true;
        state.working = std::move(candidate);
        state.scores = std::move(candidate_scores);
        rec.digest_after = state.working.digest();
    }
    return rec;
}

SimplifyResult simplify(const MotionSequence& seq, const SimplifyConfig& config) {
    config.validate();
    const MetricWeights weights = config.metric_weights();
    PipelineState state{seq, compute_profile(seq, weights), detect_motion_trends(seq, config.epsilon, config.alpha)};
    const ComplexityProfile before = state.scores;

    std::array<StageRecord, kNumCriteria> records;
    for (int c = 1; c <= static_cast<int>(kNumCriteria); ++c) {
        records[static_cast<std::size_t>(c - 1)] = run_stage(c, state, config);
    }
    ComplexityProfile after = compute_profile(state.working, weights);
    return SimplifyResult{std::move(state.working), before, std::move(after), std::move(records)};
}

}  // namespace motionsimp
