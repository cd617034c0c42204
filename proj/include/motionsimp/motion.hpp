#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "motionsimp/skeleton.hpp"

namespace motionsimp {

using Vec3 = Eigen::Vector3d;

inline constexpr std::size_t kContactChannels = 4;
using ContactRow = std::array<std::uint8_t, kContactChannels>;
using ContactTrack = std::vector<ContactRow>;

/// F x 24 x 3 world-space joint positions (metres, Y up) sampled at fps.
///
/// Positions are stored frame-major. A constructed sequence always satisfies
/// F >= 2, finite coordinates, fps > 0 and, when present, one contact row per
/// frame. Mutating accessors exist so edits can work on copies; they do not
/// re-validate.
class MotionSequence {
public:
    MotionSequence(std::size_t frames, double fps, std::vector<Vec3> positions,
                   std::optional<ContactTrack> contacts = std::nullopt);

    /// Static pose repeated for `frames` frames.
    static MotionSequence from_pose(const std::array<Vec3, kNumJoints>& pose,
                                    std::size_t frames, double fps);

    std::size_t frames() const { return frames_; }
    std::size_t joints() const { return kNumJoints; }
    double fps() const { return fps_; }
    const SkeletonSpec& skeleton() const { return smpl24(); }

    const Vec3& at(std::size_t f, std::size_t j) const { return positions_[f * kNumJoints + j]; }
    Vec3& at(std::size_t f, std::size_t j) { return positions_[f * kNumJoints + j]; }

    const std::vector<Vec3>& positions() const { return positions_; }

    bool has_contacts() const { return contacts_.has_value(); }
    const std::optional<ContactTrack>& contacts() const { return contacts_; }
    void set_contacts(std::optional<ContactTrack> contacts);

    /// FNV-1a over the raw bytes of positions; used to fingerprint edits.
    std::uint64_t digest() const;

    friend bool operator==(const MotionSequence& a, const MotionSequence& b);

private:
    std::size_t frames_;
    double fps_;
    std::vector<Vec3> positions_;
    std::optional<ContactTrack> contacts_;
};

}  // namespace motionsimp
