#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "motionsimp/motion.hpp"
#include "motionsimp/trends.hpp"

namespace motionsimp {

using FlipVector = std::array<int, 3>;

/// Whether a rule runs root reattachment and boundary smoothing after editing
/// each interval. Disabling it exposes the raw edit for inspection.
enum class PostProcess { Apply, Skip };

/// Scales every frame-to-frame step of the target joints by k inside each interval.
MotionSequence distance_compression(const MotionSequence& seq, const std::vector<ComplexInterval>& intervals,
                                    double k, PostProcess post = PostProcess::Apply);

/// Stretches each interval by an integer factor in place: step s+k -> s+k+1 is
/// spread over `slowdown` frames starting at s + k*slowdown and the stretched
/// end frame takes the original endpoint. Intervals whose stretched end would
/// fall outside the sequence are left untouched.
MotionSequence velocity_reduction(const MotionSequence& seq, const std::vector<ComplexInterval>& intervals,
                                  int slowdown, PostProcess post = PostProcess::Apply);

/// Re-integrates the target joints' steps with the given axes negated,
/// anchored at the interval's first frame.
MotionSequence directional_change(const MotionSequence& seq, const std::vector<ComplexInterval>& intervals,
                                  const FlipVector& flip, PostProcess post = PostProcess::Apply);

/// Rotates the whole skeleton about the pelvis, frame by frame, so the facing
/// yaw equals `target`; without a target each interval keeps the yaw of its
/// first frame.
MotionSequence orientation_stabilization(const MotionSequence& seq, const std::vector<ComplexInterval>& intervals,
                                         std::optional<double> target);

/// Translates the chain per frame so its root matches `orig` over [start, end].
MotionSequence reattach_root(const MotionSequence& orig, const MotionSequence& gen, const JointChain& chain,
                             std::size_t start, std::size_t end);

/// Shifts frames after `boundary` by the endpoint offset orig - gen at the
/// boundary, decaying each axis of the offset only while the original motion
/// moves against it and zeroing it rather than crossing zero.
MotionSequence smooth_discontinuity(const MotionSequence& orig, const MotionSequence& gen, const JointSet& joints,
                                    std::size_t boundary);

/// Flip vector from opposing left/right wrist trends that overlap each other
/// and the interval by at least alpha; nullopt when no such pair exists.
std::optional<FlipVector> derive_flip_vector(const std::vector<MotionTrend>& trends, const ComplexInterval& interval,
                                             double alpha);

}  // namespace motionsimp
