#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "motionsimp/motion.hpp"
#include "motionsimp/savgol.hpp"

namespace motionsimp {

/// Per-frame, per-joint vector field with the same F x 24 layout as positions.
class JointField {
public:
    JointField() = default;
    explicit JointField(std::size_t frames) : frames_(frames), data_(frames * kNumJoints, Vec3::Zero()) {}

    std::size_t frames() const { return frames_; }
    const Vec3& at(std::size_t f, std::size_t j) const { return data_[f * kNumJoints + j]; }
    Vec3& at(std::size_t f, std::size_t j) { return data_[f * kNumJoints + j]; }

private:
    std::size_t frames_ = 0;
    std::vector<Vec3> data_;
};

struct DerivativeSet {
    JointField velocity;           // m/s, forward difference, last row repeated
    JointField filtered_velocity;  // SG-smoothed velocity
    JointField acceleration;       // second difference of filtered velocity, x fps
};

/// Strict form: requires an odd window, window > order >= 1 and F >= window.
DerivativeSet derivatives(const MotionSequence& seq, SavgolParams sg);

/// Same as derivatives() but shrinks the SG window for clips shorter than it.
DerivativeSet derivatives_fitted(const MotionSequence& seq, SavgolParams sg);

/// Smooths a scalar series, shrinking the window for short series.
std::vector<double> savgol_fitted(const std::vector<double>& series, SavgolParams sg);

Eigen::Matrix3d rotation_y(double angle);

/// Facing yaw from the inter-hip vector, or nullopt when the hips coincide in XZ.
std::optional<double> yaw_from_hips(const Vec3& left_hip, const Vec3& right_hip);

/// Facing yaw in (-pi, pi] for every frame; degenerate frames carry the
/// previous frame's yaw forward (0 at frame 0).
std::vector<double> yaw_series(const MotionSequence& seq);

double pelvis_yaw(const MotionSequence& seq, std::size_t t);

/// Removes 2*pi jumps so consecutive samples differ by at most pi.
std::vector<double> unwrap_angles(const std::vector<double>& angles);

/// Maps an angle to (-pi, pi].
double wrap_angle(double angle);

/// Rigid rotation of every joint about the world Y axis through `pivot`.
MotionSequence rotate_about_y(const MotionSequence& seq, double angle, const Vec3& pivot = Vec3::Zero());

MotionSequence translate(const MotionSequence& seq, const Vec3& offset);

/// X-reflection in world space with left/right joint labels swapped.
MotionSequence mirror_sequence(const MotionSequence& seq);

}  // namespace motionsimp
