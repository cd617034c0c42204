#include "motionsimp/skeleton.hpp"

#include <algorithm>
#include <set>

#include "motionsimp/errors.hpp"

namespace motionsimp {

namespace {

SkeletonSpec build_smpl24() {
    using namespace joint;
    SkeletonSpec s;
    s.joint_names = {"pelvis",         "left_hip",       "right_hip",   "spine1",
                     "left_knee",      "right_knee",     "spine2",      "left_ankle",
                     "right_ankle",    "spine3",         "left_foot",   "right_foot",
                     "neck",           "left_collar",    "right_collar", "head",
                     "left_shoulder",  "right_shoulder", "left_elbow",  "right_elbow",
                     "left_wrist",     "right_wrist",    "left_hand",   "right_hand"};
    s.joint_parents = {kNoParent, 0, 0, 0, 1, 2, 3, 4, 5, 6, 7, 8,
                       9, 9, 9, 12, 13, 14, 16, 17, 18, 19, 20, 21};

    s.groups.feet = {LeftAnkle, RightAnkle, LeftFoot, RightFoot};
    s.groups.lower = {LeftHip, RightHip, LeftKnee, RightKnee,
                      LeftAnkle, RightAnkle, LeftFoot, RightFoot};
    s.groups.upper = {LeftCollar, RightCollar, LeftShoulder, RightShoulder,
                      LeftElbow, RightElbow, LeftWrist, RightWrist};
    s.groups.limbs = s.groups.upper;
    for (std::size_t j : {LeftKnee, RightKnee, LeftAnkle, RightAnkle, LeftFoot, RightFoot}) {
        s.groups.limbs.push_back(j);
    }
    s.groups.paired = {{LeftAnkle, RightAnkle},       {LeftKnee, RightKnee},
                       {LeftHip, RightHip},           {LeftShoulder, RightShoulder},
                       {LeftElbow, RightElbow},       {LeftWrist, RightWrist}};

    s.chains = {
        {"left_leg", {LeftHip, LeftKnee, LeftAnkle, LeftFoot}},
        {"right_leg", {RightHip, RightKnee, RightAnkle, RightFoot}},
        {"left_arm", {LeftShoulder, LeftElbow, LeftWrist, LeftHand}},
        {"right_arm", {RightShoulder, RightElbow, RightWrist, RightHand}},
    };
    validate_skeleton(s);
    return s;
}

}  // namespace

const SkeletonSpec& smpl24() {
    static const SkeletonSpec spec = build_smpl24();
    return spec;
}

const JointChain& SkeletonSpec::chain(const std::string& name) const {
    auto it = std::find_if(chains.begin(), chains.end(),
                           [&](const JointChain& c) { return c.name == name; });
    if (it == chains.end()) {
        fail(ErrorKind::InvalidArgument, "unknown chain: " + name);
    }
    return *it;
}

std::vector<JointChain> SkeletonSpec::chains_within(const JointSet& joints) const {
    std::set<std::size_t> have(joints.begin(), joints.end());
    std::vector<JointChain> out;
    for (const auto& c : chains) {
        if (std::all_of(c.joints.begin(), c.joints.end(),
                        [&](std::size_t j) { return have.count(j) != 0; })) {
            out.push_back(c);
        }
    }
    return out;
}

void validate_skeleton(const SkeletonSpec& spec) {
    const std::size_t n = spec.joint_names.size();
    if (n != kNumJoints || spec.joint_parents.size() != n) {
        fail(ErrorKind::Shape, "skeleton must have exactly 24 joints");
    }
    if (spec.joint_parents[0] != kNoParent) {
        fail(ErrorKind::Shape, "joint 0 must be the root");
    }
    for (std::size_t j = 1; j < n; ++j) {
        // parents precede children, which rules out cycles
        const int p = spec.joint_parents[j];
        if (p < 0 || static_cast<std::size_t>(p) >= j) {
            fail(ErrorKind::Shape, "bad parent for joint " + spec.joint_names[j]);
        }
    }
    for (const auto& pr : spec.groups.paired) {
        if (pr.left == pr.right || pr.left >= n || pr.right >= n) {
            fail(ErrorKind::Shape, "bad left/right pair");
        }
    }
    for (const auto& c : spec.chains) {
        if (c.joints.empty()) {
            fail(ErrorKind::Shape, "empty chain " + c.name);
        }
        for (std::size_t i = 1; i < c.joints.size(); ++i) {
            if (spec.joint_parents[c.joints[i]] != static_cast<int>(c.joints[i - 1])) {
                fail(ErrorKind::Shape, "chain " + c.name + " is not a parent path");
            }
        }
    }
}

const std::array<std::size_t, kNumJoints>& mirror_partner() {
    static const std::array<std::size_t, kNumJoints> partner = [] {
        std::array<std::size_t, kNumJoints> p{};
        for (std::size_t j = 0; j < kNumJoints; ++j) p[j] = j;
        const auto& names = smpl24().joint_names;
        for (std::size_t j = 0; j < kNumJoints; ++j) {
            const std::string& name = names[j];
            std::string other;
            if (name.rfind("left_", 0) == 0) {
                other = "right_" + name.substr(5);
            } else if (name.rfind("right_", 0) == 0) {
                other = "left_" + name.substr(6);
            } else {
                continue;
            }
            p[j] = static_cast<std::size_t>(
                std::find(names.begin(), names.end(), other) - names.begin());
        }
        return p;
    }();
    return partner;
}

}  // namespace motionsimp
