#include "motionsimp/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>

#include "motionsimp/errors.hpp"
#include "motionsimp/kinematics.hpp"

namespace motionsimp {

namespace {

constexpr double kPi = std::numbers::pi;

// Uniform draws built from raw engine output so files are identical across
// standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

using Pose = std::array<Vec3, kNumJoints>;

struct Builder {
    std::size_t frames;
    double fps;
    std::vector<Vec3> pos;

    Builder(std::size_t f, double rate) : frames(f), fps(rate), pos(f * kNumJoints) {}

    double time(std::size_t f) const { return static_cast<double>(f) / fps; }
    void set(std::size_t f, const Pose& pose) {
        for (std::size_t j = 0; j < kNumJoints; ++j) pos[f * kNumJoints + j] = pose[j];
    }
    MotionSequence build(std::optional<ContactTrack> contacts = std::nullopt) {
        return MotionSequence(frames, fps, std::move(pos), std::move(contacts));
    }
};

// Rotates `joints` about `pivot` around `axis` by `angle`.
void rotate_joints(Pose& p, std::initializer_list<std::size_t> joints, const Vec3& pivot, const Vec3& axis,
                   double angle) {
    const Eigen::AngleAxisd rot(angle, axis.normalized());
    for (std::size_t j : joints) p[j] = rot * (p[j] - pivot) + pivot;
}

MotionSequence make_static(const FixtureOptions& o) {
    return MotionSequence::from_pose(rest_pose(), o.frames, o.fps);
}

MotionSequence make_walker(const FixtureOptions& o) {
    using namespace joint;
    Rng rng(o.seed);
    const double period = rng.uniform(0.9, 1.1);
    const double stride = rng.uniform(0.45, 0.55);
    const double swing_frac = 0.4;
    const Pose rest = rest_pose();
    Builder b(o.frames, o.fps);

    // Each foot advances `stride` per cycle during its swing window.
    auto foot_progress = [&](double t, double phase) {
        const double c = t / period + phase;
        const double cycles = std::floor(c);
        const double u = c - cycles;
        if (u < swing_frac) {
            const double s = u / swing_frac;
            return std::pair{(cycles + s) * stride, std::sin(kPi * s) * 0.12};
        }
        return std::pair{(cycles + 1.0) * stride, 0.0};
    };

    for (std::size_t f = 0; f < o.frames; ++f) {
        const double t = b.time(f);
        Pose p = rest;
        const double body_z = stride * t / period;
        for (auto& q : p) q.z() += body_z;

        const auto [lz, ly] = foot_progress(t, 0.0);
        const auto [rz, ry] = foot_progress(t, 0.5);
        const std::pair<double, double> legs[2] = {{lz, ly}, {rz, ry}};
        const std::size_t hips[2] = {LeftHip, RightHip};
        const std::size_t knees[2] = {LeftKnee, RightKnee};
        const std::size_t ankles[2] = {LeftAnkle, RightAnkle};
        const std::size_t feet[2] = {LeftFoot, RightFoot};
        for (int s = 0; s < 2; ++s) {
            const double z = legs[s].first - stride * 0.5;
            const double lift = legs[s].second;
            p[ankles[s]] = Vec3(rest[ankles[s]].x(), rest[ankles[s]].y() + lift, z);
            p[feet[s]] = p[ankles[s]] + (rest[feet[s]] - rest[ankles[s]]);
            p[knees[s]] = 0.5 * (p[hips[s]] + p[ankles[s]]) + Vec3(0.0, 0.0, 0.05);
        }
        // arms swing against the legs
        const double swing = 0.35 * std::sin(2.0 * kPi * t / period);
        rotate_joints(p, {LeftElbow, LeftWrist, LeftHand}, p[LeftShoulder], Vec3::UnitX(), swing);
        rotate_joints(p, {RightElbow, RightWrist, RightHand}, p[RightShoulder], Vec3::UnitX(), -swing);
        b.set(f, p);
    }

    // Ground truth: a contact joint is planted while it rests on the ground
    // and does not move to the next frame.
    ContactTrack contacts(o.frames);
    const std::size_t channels[kContactChannels] = {LeftAnkle, RightAnkle, LeftFoot, RightFoot};
    for (std::size_t f = 0; f < o.frames; ++f) {
        const std::size_t next = f + 1 < o.frames ? f + 1 : f;
        const std::size_t prev = f + 1 < o.frames ? f : f - 1;
        for (std::size_t k = 0; k < kContactChannels; ++k) {
            const std::size_t j = channels[k];
            const Vec3& a = b.pos[prev * kNumJoints + j];
            const Vec3& c = b.pos[next * kNumJoints + j];
            const bool grounded = std::abs(b.pos[f * kNumJoints + j].y() - rest[j].y()) < 1e-12;
            contacts[f][k] = ((c - a).norm() < 1e-12 && grounded) ? 1 : 0;
        }
    }
    return b.build(std::move(contacts));
}

MotionSequence make_spinner(const FixtureOptions& o) {
    Rng rng(o.seed);
    const double rate = rng.uniform(0.8, 1.2) * 2.0 * kPi;  // rad/s
    const Pose rest = rest_pose();
    Builder b(o.frames, o.fps);
    for (std::size_t f = 0; f < o.frames; ++f) {
        const Eigen::Matrix3d r = rotation_y(rate * b.time(f));
        Pose p;
        for (std::size_t j = 0; j < kNumJoints; ++j) p[j] = r * (rest[j] - rest[0]) + rest[0];
        b.set(f, p);
    }
    return b.build();
}

MotionSequence make_mirror(const FixtureOptions& o) {
    using namespace joint;
    Rng rng(o.seed);
    const double freq = rng.uniform(0.8, 1.5);
    const double amp = rng.uniform(0.4, 0.8);
    const Pose rest = rest_pose();
    Builder b(o.frames, o.fps);
    for (std::size_t f = 0; f < o.frames; ++f) {
        const double t = b.time(f);
        const double a = amp * std::sin(2.0 * kPi * freq * t);
        Pose p = rest;
        rotate_joints(p, {LeftElbow, LeftWrist, LeftHand}, p[LeftShoulder], Vec3::UnitZ(), a);
        rotate_joints(p, {LeftWrist, LeftHand}, p[LeftElbow], Vec3::UnitY(), 0.5 * a);
        const double bend = 0.3 * (1.0 - std::cos(2.0 * kPi * freq * t));
        rotate_joints(p, {LeftAnkle, LeftFoot}, p[LeftKnee], Vec3::UnitX(), bend);
        // right side is the exact X-reflection of the left side
        const std::pair<std::size_t, std::size_t> pairs[] = {
            {LeftElbow, RightElbow}, {LeftWrist, RightWrist}, {LeftHand, RightHand},
            {LeftAnkle, RightAnkle}, {LeftFoot, RightFoot}};
        for (const auto& [l, r] : pairs) p[r] = Vec3(-p[l].x(), p[l].y(), p[l].z());
        b.set(f, p);
    }
    return b.build();
}

MotionSequence make_asymmetric_arms(const FixtureOptions& o) {
    using namespace joint;
    Rng rng(o.seed);
    const double freq = rng.uniform(0.8, 1.5);
    const Pose rest = rest_pose();
    Builder b(o.frames, o.fps);
    for (std::size_t f = 0; f < o.frames; ++f) {
        const double t = b.time(f);
        Pose p = rest;
        const double w = 2.0 * kPi * freq * t;
        rotate_joints(p, {RightElbow, RightWrist, RightHand}, p[RightShoulder], Vec3::UnitZ(), 0.7 * std::sin(w));
        rotate_joints(p, {RightElbow, RightWrist, RightHand}, p[RightShoulder], Vec3::UnitY(), 0.5 * std::cos(w));
        b.set(f, p);
    }
    return b.build();
}

MotionSequence make_dense_shaker(const FixtureOptions& o) {
    Rng rng(o.seed);
    const Pose rest = rest_pose();
    const auto& limbs = smpl24().groups.limbs;
    std::vector<std::array<double, 6>> params(kNumJoints);
    for (auto& q : params) {
        for (auto& v : q) v = rng.uniform();
    }
    Builder b(o.frames, o.fps);
    for (std::size_t f = 0; f < o.frames; ++f) {
        const double t = b.time(f);
        Pose p = rest;
        for (std::size_t j : limbs) {
            const auto& q = params[j];
            for (int a = 0; a < 3; ++a) {
                const double freq = 3.0 + 3.0 * q[a];
                p[j][a] += 0.08 * std::sin(2.0 * kPi * freq * t + 2.0 * kPi * q[a + 3]) +
                           0.005 * (rng.uniform() - 0.5);
            }
        }
        b.set(f, p);
    }
    return b.build();
}

MotionSequence make_slider(const FixtureOptions& o) {
    const Pose rest = rest_pose();
    Builder b(o.frames, o.fps);
    for (std::size_t f = 0; f < o.frames; ++f) {
        Pose p = rest;
        for (auto& q : p) q.x() += 0.5 * b.time(f);
        b.set(f, p);
    }
    return b.build(ContactTrack(o.frames, ContactRow{1, 1, 1, 1}));
}

// Upper and lower groups oscillate; `desync` alternates which half is active.
MotionSequence make_coordination(const FixtureOptions& o, bool desync) {
    Rng rng(o.seed);
    const double freq = rng.uniform(1.5, 2.5);
    const double half_period = 0.5;
    const Pose rest = rest_pose();
    const auto& sk = smpl24();
    Builder b(o.frames, o.fps);
    for (std::size_t f = 0; f < o.frames; ++f) {
        const double t = b.time(f);
        const double d = 0.1 * std::sin(2.0 * kPi * freq * t);
        double upper_gain = 1.0, lower_gain = 1.0;
        if (desync) {
            const bool upper_turn = static_cast<long>(std::floor(t / half_period)) % 2 == 0;
            upper_gain = upper_turn ? 1.0 : 0.2;
            lower_gain = upper_turn ? 0.2 : 1.0;
        }
        Pose p = rest;
        for (std::size_t j : sk.groups.upper) p[j].z() += upper_gain * d;
        for (std::size_t j : sk.groups.lower) p[j].z() += lower_gain * d;
        b.set(f, p);
    }
    return b.build();
}

MotionSequence make_random(const FixtureOptions& o) {
    Rng rng(o.seed);
    const Pose rest = rest_pose();
    struct Wave {
        double amp, freq, phase;
    };
    std::vector<std::array<Wave, 3>> waves(kNumJoints * 3);
    for (auto& w : waves) {
        for (auto& c : w) c = {rng.uniform(0.01, 0.12), rng.uniform(0.2, 3.0), rng.uniform(0.0, 2.0 * kPi)};
    }
    const double yaw_rate = rng.uniform(-2.0, 2.0);
    const double yaw_wobble = rng.uniform(0.0, 1.0);
    const Vec3 drift(rng.uniform(-0.5, 0.5), 0.0, rng.uniform(-0.5, 0.5));
    Builder b(o.frames, o.fps);
    for (std::size_t f = 0; f < o.frames; ++f) {
        const double t = b.time(f);
        Pose p = rest;
        for (std::size_t j = 0; j < kNumJoints; ++j) {
            for (int a = 0; a < 3; ++a) {
                for (const auto& w : waves[j * 3 + static_cast<std::size_t>(a)]) {
                    p[j][a] += w.amp * std::sin(2.0 * kPi * w.freq * t + w.phase);
                }
                p[j][a] += 0.002 * (rng.uniform() - 0.5);
            }
        }
        const Eigen::Matrix3d r = rotation_y(yaw_rate * t + yaw_wobble * std::sin(3.0 * t));
        const Vec3 pelvis = p[joint::Pelvis];
        for (auto& q : p) q = r * (q - pelvis) + pelvis + drift * t;
        b.set(f, p);
    }
    return b.build();
}

}  // namespace

std::array<Vec3, kNumJoints> rest_pose() {
    return {{
        {0.0, 0.93, 0.0},     // pelvis
        {0.09, 0.85, 0.0},    // left_hip
        {-0.09, 0.85, 0.0},   // right_hip
        {0.0, 1.03, 0.0},     // spine1
        {0.10, 0.48, 0.0},    // left_knee
        {-0.10, 0.48, 0.0},   // right_knee
        {0.0, 1.16, 0.0},     // spine2
        {0.10, 0.06, 0.0},    // left_ankle
        {-0.10, 0.06, 0.0},   // right_ankle
        {0.0, 1.22, 0.0},     // spine3
        {0.11, 0.02, 0.12},   // left_foot
        {-0.11, 0.02, 0.12},  // right_foot
        {0.0, 1.44, 0.0},     // neck
        {0.08, 1.36, 0.0},    // left_collar
        {-0.08, 1.36, 0.0},   // right_collar
        {0.0, 1.58, 0.03},    // head
        {0.19, 1.38, 0.0},    // left_shoulder
        {-0.19, 1.38, 0.0},   // right_shoulder
        {0.45, 1.38, 0.0},    // left_elbow
        {-0.45, 1.38, 0.0},   // right_elbow
        {0.70, 1.38, 0.0},    // left_wrist
        {-0.70, 1.38, 0.0},   // right_wrist
        {0.78, 1.38, 0.0},    // left_hand
        {-0.78, 1.38, 0.0},   // right_hand
    }};
}

const std::vector<FixtureKind>& all_fixture_kinds() {
    static const std::vector<FixtureKind> kinds = {
        FixtureKind::Static,      FixtureKind::Walker, FixtureKind::Spinner, FixtureKind::Mirror,
        FixtureKind::AsymmetricArms, FixtureKind::DenseShaker, FixtureKind::Slider, FixtureKind::Desync,
        FixtureKind::Sync,        FixtureKind::Random};
    return kinds;
}

std::string fixture_name(FixtureKind kind) {
    switch (kind) {
        case FixtureKind::Static: return "static";
        case FixtureKind::Walker: return "walker";
        case FixtureKind::Spinner: return "spinner";
        case FixtureKind::Mirror: return "mirror";
        case FixtureKind::AsymmetricArms: return "asymmetric-arms";
        case FixtureKind::DenseShaker: return "dense-shaker";
        case FixtureKind::Slider: return "slider";
        case FixtureKind::Desync: return "desync";
        case FixtureKind::Sync: return "sync";
        case FixtureKind::Random: return "random";
    }
    return "unknown";
}

FixtureKind fixture_from_name(std::string_view name) {
    for (FixtureKind k : all_fixture_kinds()) {
        if (fixture_name(k) == name) return k;
    }
    fail(ErrorKind::InvalidArgument, "unknown fixture kind: " + std::string(name));
}

MotionSequence make_fixture(FixtureKind kind, const FixtureOptions& o) {
    if (o.frames < 2) fail(ErrorKind::InvalidArgument, "fixtures need at least 2 frames");
    switch (kind) {
        case FixtureKind::Static: return make_static(o);
        case FixtureKind::Walker: return make_walker(o);
        case FixtureKind::Spinner: return make_spinner(o);
        case FixtureKind::Mirror: return make_mirror(o);
        case FixtureKind::AsymmetricArms: return make_asymmetric_arms(o);
        case FixtureKind::DenseShaker: return make_dense_shaker(o);
        case FixtureKind::Slider: return make_slider(o);
        case FixtureKind::Desync: return make_coordination(o, true);
        case FixtureKind::Sync: return make_coordination(o, false);
        case FixtureKind::Random: return make_random(o);
    }
    fail(ErrorKind::InvalidArgument, "unknown fixture kind");
}

}  // namespace motionsimp
