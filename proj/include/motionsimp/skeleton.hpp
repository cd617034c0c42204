#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace motionsimp {

inline constexpr std::size_t kNumJoints = 24;
inline constexpr int kNoParent = -1;

// SMPL-24 joint indices. Left side is +X when the body faces +Z.
namespace joint {
inline constexpr std::size_t Pelvis = 0;
inline constexpr std::size_t LeftHip = 1;
inline constexpr std::size_t RightHip = 2;
inline constexpr std::size_t Spine1 = 3;
inline constexpr std::size_t LeftKnee = 4;
inline constexpr std::size_t RightKnee = 5;
inline constexpr std::size_t Spine2 = 6;
inline constexpr std::size_t LeftAnkle = 7;
inline constexpr std::size_t RightAnkle = 8;
inline constexpr std::size_t Spine3 = 9;
inline constexpr std::size_t LeftFoot = 10;
inline constexpr std::size_t RightFoot = 11;
inline constexpr std::size_t Neck = 12;
inline constexpr std::size_t LeftCollar = 13;
inline constexpr std::size_t RightCollar = 14;
inline constexpr std::size_t Head = 15;
inline constexpr std::size_t LeftShoulder = 16;
inline constexpr std::size_t RightShoulder = 17;
inline constexpr std::size_t LeftElbow = 18;
inline constexpr std::size_t RightElbow = 19;
inline constexpr std::size_t LeftWrist = 20;
inline constexpr std::size_t RightWrist = 21;
inline constexpr std::size_t LeftHand = 22;
inline constexpr std::size_t RightHand = 23;
}  // namespace joint

using JointSet = std::vector<std::size_t>;

struct JointPair {
    std::size_t left;
    std::size_t right;
};

struct JointChain {
    std::string name;
    JointSet joints;  // joints.front() is the chain root

    std::size_t root() const { return joints.front(); }
};

struct SkeletonGroups {
    JointSet feet;   // contact joints: ankles then feet, left before right
    JointSet lower;
    JointSet upper;
    JointSet limbs;
    std::vector<JointPair> paired;
};

struct SkeletonSpec {
    std::vector<std::string> joint_names;
    std::vector<int> joint_parents;
    SkeletonGroups groups;
    std::vector<JointChain> chains;

    std::size_t size() const { return joint_names.size(); }
    const JointChain& chain(const std::string& name) const;
    // Chains whose joints are all contained in `joints`, in skeleton order.
    std::vector<JointChain> chains_within(const JointSet& joints) const;
};

/// The fixed SMPL-24 layout used by every sequence in this library.
const SkeletonSpec& smpl24();

/// Checks the structural invariants of a layout; throws MotionError(Shape).
void validate_skeleton(const SkeletonSpec& spec);

/// Mirror partner of each joint (left<->right, centre joints map to themselves).
const std::array<std::size_t, kNumJoints>& mirror_partner();

}  // namespace motionsimp
