#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "motionsimp/fixtures.hpp"
#include "motionsimp/trends.hpp"

namespace testgen {

inline motionsimp::MotionSequence random_motion(std::uint64_t seed, std::size_t frames, double fps = 60.0) {
    return motionsimp::make_fixture(motionsimp::FixtureKind::Random, {frames, fps, seed});
}

/// Trend sets over a few joints with short, often overlapping spans.
inline std::vector<motionsimp::MotionTrend> random_trends(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<std::size_t> joint(0, 2), start(0, 60), len(1, 15);
    std::uniform_int_distribution<int> axis(0, 2), coin(0, 1), tri(-1, 1);
    std::vector<motionsimp::MotionTrend> out;
    for (std::size_t i = 0; i < n; ++i) {
        motionsimp::MotionTrend t;
        t.joint = joint(rng);
        t.start = start(rng);
        t.end = t.start + len(rng);
        if (coin(rng)) {
            t.direction[axis(rng)] = coin(rng) ? 1 : -1;
        } else {
            for (auto& d : t.direction) d = tri(rng);
        }
        out.push_back(t);
    }
    return out;
}

}  // namespace testgen
