#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "motionsimp/motion.hpp"

namespace motionsimp {

/// Synthetic clips, one per criterion plus controls.
enum class FixtureKind {
    Static,          // rest pose, no motion
    Walker,          // stepping gait with ground-truth contacts
    Spinner,         // whole body turning about the pelvis
    Mirror,          // left/right mirror-symmetric limb motion
    AsymmetricArms,  // right arm moving, left side still
    DenseShaker,     // fast limb oscillation with jitter
    Slider,          // feet glide while flagged in contact
    Desync,          // upper and lower body alternate activity
    Sync,            // upper and lower body move with identical intensity
    Random,          // smooth random motion for property tests
};

struct FixtureOptions {
    std::size_t frames = 120;
    double fps = 60.0;
    std::uint64_t seed = 0;
};

const std::vector<FixtureKind>& all_fixture_kinds();
std::string fixture_name(FixtureKind kind);
FixtureKind fixture_from_name(std::string_view name);

/// Rest pose facing +Z with the lowest foot joint at y = 0.02.
std::array<Vec3, kNumJoints> rest_pose();

MotionSequence make_fixture(FixtureKind kind, const FixtureOptions& options = {});

}  // namespace motionsimp
