#include "motionsimp/motion.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "motionsimp/errors.hpp"

namespace motionsimp {

namespace {

void check_contacts(const ContactTrack& contacts, std::size_t frames) {
    if (contacts.size() != frames) {
        fail(ErrorKind::Shape, "contact track has " + std::to_string(contacts.size()) +
                                   " rows, expected " + std::to_string(frames));
    }
    for (const auto& row : contacts) {
        for (auto c : row) {
            if (c > 1) fail(ErrorKind::Shape, "contact entries must be 0 or 1");
        }
    }
}

}  // namespace

MotionSequence::MotionSequence(std::size_t frames, double fps, std::vector<Vec3> positions,
                               std::optional<ContactTrack> contacts)
    : frames_(frames), fps_(fps), positions_(std::move(positions)), contacts_(std::move(contacts)) {
    if (frames_ < 2) {
        fail(ErrorKind::Shape, "sequence needs at least 2 frames, got " + std::to_string(frames_));
    }
    if (positions_.size() != frames_ * kNumJoints) {
        fail(ErrorKind::Shape, "position buffer size does not match F x 24");
    }
    if (!std::isfinite(fps_) || fps_ <= 0.0) {
        fail(ErrorKind::InvalidArgument, "fps must be positive");
    }
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        if (!positions_[i].allFinite()) {
            fail(ErrorKind::NonFinite, "non-finite coordinate at frame " +
                                           std::to_string(i / kNumJoints) + ", joint " +
                                           std::to_string(i % kNumJoints));
        }
    }
    if (contacts_) check_contacts(*contacts_, frames_);
}

MotionSequence MotionSequence::from_pose(const std::array<Vec3, kNumJoints>& pose,
                                         std::size_t frames, double fps) {
    std::vector<Vec3> pos;
    pos.reserve(frames * kNumJoints);
    for (std::size_t f = 0; f < frames; ++f) {
        pos.insert(pos.end(), pose.begin(), pose.end());
    }
    return MotionSequence(frames, fps, std::move(pos));
}

void MotionSequence::set_contacts(std::optional<ContactTrack> contacts) {
    if (contacts) check_contacts(*contacts, frames_);
    contacts_ = std::move(contacts);
}

std::uint64_t MotionSequence::digest() const {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& p : positions_) {
        for (int a = 0; a < 3; ++a) {
            unsigned char bytes[sizeof(double)];
            const double v = p[a];
            std::memcpy(bytes, &v, sizeof(double));
            for (unsigned char b : bytes) {
                h ^= b;
                h *= 1099511628211ull;
            }
        }
    }
    return h;
}

bool operator==(const MotionSequence& a, const MotionSequence& b) {
    return a.frames_ == b.frames_ && a.fps_ == b.fps_ && a.positions_ == b.positions_ &&
           a.contacts_ == b.contacts_;
}

}  // namespace motionsimp
