#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "motionsimp/complexity.hpp"
#include "motionsimp/motion.hpp"

namespace motionsimp {

using Direction = std::array<int, 3>;

/// A monotonic motion event of one joint over frames [start, end].
struct MotionTrend {
    std::size_t joint = 0;
    std::size_t start = 0;
    std::size_t end = 0;
    Direction direction{0, 0, 0};

    std::size_t length() const { return end - start; }
    friend bool operator==(const MotionTrend&, const MotionTrend&) = default;
};

/// A thresholded activation run of `criterion` with the joints to edit.
struct ComplexInterval {
    int criterion = 0;
    std::size_t start = 0;
    std::size_t end = 0;
    JointSet joints;

    friend bool operator==(const ComplexInterval&, const ComplexInterval&) = default;
};

inline constexpr double kDefaultTrendEpsilon = 0.2;  // m per frame
inline constexpr double kDefaultOverlapAlpha = 0.5;

/// |[s1,e1] n [s2,e2]| / min(e1 - s1, e2 - s2); 0 when either span is empty.
double overlap_ratio(std::size_t s1, std::size_t e1, std::size_t s2, std::size_t e2);

/// Maximal runs of constant nonzero sign_eps of the frame-to-frame
/// displacement along one axis. A run covering steps t0..t1 spans frames
/// [t0, t1 + 1], so neighbouring runs share their boundary frame.
std::vector<MotionTrend> detect_axis_trends(const MotionSequence& seq, std::size_t joint, int axis, double epsilon);

/// Sweep-line merge of axis trends, per joint.
///
/// Two trends are linked when their overlap ratio is >= alpha; each connected
/// group becomes one trend spanning the union of its members with the summed
/// direction. Grouping repeats on the merged set until no pair links, so the
/// result is independent of input order and merging it again is a no-op.
/// Groups whose direction sums to zero are dropped.
std::vector<MotionTrend> merge_trends(std::vector<MotionTrend> trends, double alpha);

/// Axis detection for every joint and axis, then merge_trends.
std::vector<MotionTrend> detect_motion_trends(const MotionSequence& seq, double epsilon, double alpha);

/// Maximal runs of activation > tau with at least `min_len` frames.
std::vector<std::pair<std::size_t, std::size_t>> threshold_runs(const std::vector<double>& activation,
                                                                double tau, std::size_t min_len);

/// Target joints for an interval of `criterion`, as a union of skeleton chains
/// (all joints for criterion 3).
JointSet select_target_joints(int criterion, const MotionSequence& seq, const std::vector<MotionTrend>& trends,
                              std::size_t start, std::size_t end, const DerivativeSet& deriv);

std::vector<ComplexInterval> detect_intervals(const MotionSequence& seq, const ComplexityProfile& profile,
                                              int criterion, double tau, std::size_t min_len,
                                              const std::vector<MotionTrend>& trends);

}  // namespace motionsimp
