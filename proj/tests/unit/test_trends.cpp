#include <doctest.h>

#include <algorithm>
#include <random>

#include "generators.hpp"
#include "motionsimp/fixtures.hpp"
#include "motionsimp/trends.hpp"
#include "oracles.hpp"

using namespace motionsimp;

namespace {

// Pelvis x follows `xs`; everything else at rest.
MotionSequence track_x(const std::vector<double>& xs) {
    const auto rest = rest_pose();
    std::vector<Vec3> pos;
    for (double x : xs) {
        for (std::size_t j = 0; j < kNumJoints; ++j) pos.push_back(j == 0 ? Vec3(x, rest[0].y(), 0.0) : rest[j]);
    }
    return MotionSequence(xs.size(), 30.0, pos);
}

}  // namespace

TEST_CASE("overlap ratio") {
    CHECK(overlap_ratio(0, 10, 5, 15) == doctest::Approx(0.5));
    CHECK(overlap_ratio(0, 10, 2, 4) == doctest::Approx(1.0));
    CHECK(overlap_ratio(0, 5, 5, 9) == 0.0);
    CHECK(overlap_ratio(3, 3, 0, 9) == 0.0);
}

TEST_CASE("axis trends") {
    std::vector<double> ramp;
    for (int t = 0; t < 10; ++t) ramp.push_back(0.3 * t);
    auto t = detect_axis_trends(track_x(ramp), 0, 0, 0.2);
    REQUIRE(t.size() == 1);
    CHECK(t[0].start == 0);
    CHECK(t[0].end == 9);
    CHECK(t[0].direction == Direction{1, 0, 0});

    std::vector<double> jitter;
    for (int i = 0; i < 20; ++i) jitter.push_back(i % 2 ? 0.05 : -0.05);
    CHECK(detect_axis_trends(track_x(jitter), 0, 0, 0.2).empty());

    std::vector<double> tri;
    for (int i = 0; i <= 5; ++i) tri.push_back(0.3 * i);
    for (int i = 1; i <= 5; ++i) tri.push_back(1.5 - 0.3 * i);
    t = detect_axis_trends(track_x(tri), 0, 0, 0.2);
    REQUIRE(t.size() == 2);
    CHECK(t[0].direction[0] == 1);
    CHECK(t[1].direction[0] == -1);
    CHECK(t[0].end == t[1].start);
}

TEST_CASE("axis trends are sorted and step-disjoint") {
    const auto seq = testgen::random_motion(8, 120, 10.0);
    for (std::size_t j = 0; j < kNumJoints; ++j) {
        for (int a = 0; a < 3; ++a) {
            const auto t = detect_axis_trends(seq, j, a, 0.05);
            for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i - 1].end <= t[i].start);
            for (const auto& x : t) CHECK(x.end > x.start);
        }
    }
}

TEST_CASE("merge basics") {
    MotionTrend x{4, 10, 20, {1, 0, 0}}, z{4, 10, 20, {0, 0, 1}};
    auto m = merge_trends({x, z}, 0.5);
    REQUIRE(m.size() == 1);
    CHECK(m[0].direction == Direction{1, 0, 1});

    MotionTrend a{4, 0, 5, {1, 0, 0}}, b{4, 10, 15, {0, 1, 0}}, c{5, 0, 5, {0, 1, 0}};
    CHECK(merge_trends({a, b, c}, 0.5).size() == 3);

    MotionTrend up{1, 0, 10, {1, 0, 0}}, down{1, 0, 10, {-1, 0, 0}};
    CHECK(merge_trends({up, down}, 0.5).empty());
}

TEST_CASE("merge matches oracle, is idempotent and order-insensitive") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 50; ++round) {
        auto trends = testgen::random_trends(rng, 5 + round % 30);
        const auto merged = merge_trends(trends, 0.5);
        CHECK(merged == oracle::merge_fixed_point(trends, 0.5));
        CHECK(merge_trends(merged, 0.5) == merged);
        std::shuffle(trends.begin(), trends.end(), rng);
        CHECK(merge_trends(trends, 0.5) == merged);
        for (const auto& m : merged) {
            CHECK(std::any_of(trends.begin(), trends.end(), [&](const MotionTrend& t) {
                return t.joint == m.joint && t.start >= m.start && t.end <= m.end;
            }));
        }
    }
}

TEST_CASE("threshold runs") {
    CHECK(threshold_runs(std::vector<double>(30, 0.1), 0.5, 2).empty());
    std::vector<double> sq(40, 0.0);
    for (int f = 5; f < 15; ++f) sq[f] = 1.0;
    for (int f = 25; f < 28; ++f) sq[f] = 1.0;
    const auto runs = threshold_runs(sq, 0.5, 5);
    REQUIRE(runs.size() == 1);
    CHECK(runs[0] == std::pair<std::size_t, std::size_t>{5, 14});
    CHECK(threshold_runs(sq, 0.5, 11).empty());
}

TEST_CASE("intervals and target joints") {
    const auto seq = testgen::random_motion(33, 150);
    const auto profile = compute_profile(seq);
    const auto trends = detect_motion_trends(seq, 0.02, 0.5);
    for (int c = 1; c <= 5; ++c) {
        const double tau = percentile(profile.activation(c), 60.0);
        const auto iv = detect_intervals(seq, profile, c, tau, 5, trends);
        for (std::size_t i = 0; i < iv.size(); ++i) {
            CHECK(iv[i].criterion == c);
            CHECK(iv[i].end - iv[i].start + 1 >= 5);
            if (i > 0) CHECK(iv[i - 1].end < iv[i].start);
            CHECK(!iv[i].joints.empty());
        }
    }
    const auto d = derivatives_fitted(seq, {});
    CHECK(select_target_joints(1, seq, trends, 0, 20, d) == JointSet{1, 4, 7, 10, 2, 5, 8, 11});
    CHECK(select_target_joints(3, seq, trends, 0, 20, d).size() == kNumJoints);
    CHECK(select_target_joints(5, seq, trends, 0, 20, d) == JointSet{17, 19, 21, 23});
    CHECK(select_target_joints(2, seq, {}, 0, 20, d).size() == 16);

    const auto upper_busy = make_fixture(FixtureKind::AsymmetricArms, {60, 60.0, 0});
    const auto du = derivatives_fitted(upper_busy, {});
    CHECK(select_target_joints(4, upper_busy, {}, 0, 59, du) == JointSet{16, 18, 20, 22, 17, 19, 21, 23});
}
