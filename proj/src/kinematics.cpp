#include "motionsimp/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "motionsimp/errors.hpp"

namespace motionsimp {

namespace {

constexpr double kDegenerateHipSpan = 1e-9;

void smooth_field(const JointField& in, JointField& out, const SavgolParams& sg) {
    const std::size_t F = in.frames();
    if (sg.window < 3) {
        out = in;
        return;
    }
    const SavgolFilter filter(sg);
    std::vector<double> series(F);
    for (std::size_t j = 0; j < kNumJoints; ++j) {
        for (int a = 0; a < 3; ++a) {
            for (std::size_t f = 0; f < F; ++f) series[f] = in.at(f, j)[a];
            const auto smoothed = filter.apply(series);
            for (std::size_t f = 0; f < F; ++f) out.at(f, j)[a] = smoothed[f];
        }
    }
}

DerivativeSet compute(const MotionSequence& seq, const SavgolParams& sg) {
    const std::size_t F = seq.frames();
    const double fps = seq.fps();
    DerivativeSet d{JointField(F), JointField(F), JointField(F)};

    for (std::size_t f = 0; f + 1 < F; ++f) {
        for (std::size_t j = 0; j < kNumJoints; ++j) {
            d.velocity.at(f, j) = (seq.at(f + 1, j) - seq.at(f, j)) * fps;
        }
    }
    for (std::size_t j = 0; j < kNumJoints; ++j) {
        d.velocity.at(F - 1, j) = d.velocity.at(F - 2, j);
    }

    smooth_field(d.velocity, d.filtered_velocity, sg);

    if (F >= 3) {
        const auto& v = d.filtered_velocity;
        for (std::size_t f = 1; f + 1 < F; ++f) {
            for (std::size_t j = 0; j < kNumJoints; ++j) {
                d.acceleration.at(f, j) = (v.at(f + 1, j) - 2.0 * v.at(f, j) + v.at(f - 1, j)) * fps;
            }
        }
        for (std::size_t j = 0; j < kNumJoints; ++j) {
            d.acceleration.at(0, j) = d.acceleration.at(1, j);
            d.acceleration.at(F - 1, j) = d.acceleration.at(F - 2, j);
        }
    }
    return d;
}

}  // namespace

DerivativeSet derivatives(const MotionSequence& seq, SavgolParams sg) {
    sg.validate();
    if (seq.frames() < static_cast<std::size_t>(sg.window)) {
        fail(ErrorKind::InvalidArgument, "sequence has " + std::to_string(seq.frames()) +
                                             " frames, fewer than the SG window");
    }
    return compute(seq, sg);
}

DerivativeSet derivatives_fitted(const MotionSequence& seq, SavgolParams sg) {
    sg.validate();
    return compute(seq, sg.fitted_to(seq.frames()));
}

std::vector<double> savgol_fitted(const std::vector<double>& series, SavgolParams sg) {
    sg.validate();
    const SavgolParams fitted = sg.fitted_to(series.size());
    if (fitted.window < 3) return series;
    return SavgolFilter(fitted).apply(series);
}

Eigen::Matrix3d rotation_y(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Eigen::Matrix3d r;
    r << c, 0.0, s,
         0.0, 1.0, 0.0,
         -s, 0.0, c;
    return r;
}

std::optional<double> yaw_from_hips(const Vec3& left_hip, const Vec3& right_hip) {
    const double hx = left_hip.x() - right_hip.x();
    const double hz = left_hip.z() - right_hip.z();
    if (std::hypot(hx, hz) < kDegenerateHipSpan) return std::nullopt;
    // facing = hip vector turned -90 degrees about Y: (hx, hz) -> (-hz, hx)
    return wrap_angle(std::atan2(-hz, hx));
}

double wrap_angle(double angle) {
    constexpr double pi = std::numbers::pi;
    double a = std::remainder(angle, 2.0 * pi);
    if (a <= -pi) a += 2.0 * pi;
    return a;
}

std::vector<double> yaw_series(const MotionSequence& seq) {
    std::vector<double> yaw(seq.frames());
    double prev = 0.0;
    for (std::size_t f = 0; f < seq.frames(); ++f) {
        const auto y = yaw_from_hips(seq.at(f, joint::LeftHip), seq.at(f, joint::RightHip));
        prev = y.value_or(prev);
        yaw[f] = prev;
    }
    return yaw;
}

double pelvis_yaw(const MotionSequence& seq, std::size_t t) {
    if (t >= seq.frames()) fail(ErrorKind::InvalidArgument, "frame index out of range");
    for (std::size_t f = t + 1; f-- > 0;) {
        if (auto y = yaw_from_hips(seq.at(f, joint::LeftHip), seq.at(f, joint::RightHip))) {
            return *y;
        }
    }
    return 0.0;
}

std::vector<double> unwrap_angles(const std::vector<double>& angles) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> out(angles.size());
    double shift = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        if (i > 0) {
            const double jump = angles[i] - angles[i - 1];
            shift -= two_pi * std::round(jump / two_pi);
        }
        out[i] = angles[i] + shift;
    }
    return out;
}

MotionSequence rotate_about_y(const MotionSequence& seq, double angle, const Vec3& pivot) {
    const Eigen::Matrix3d r = rotation_y(angle);
    MotionSequence out = seq;
    for (std::size_t f = 0; f < seq.frames(); ++f) {
        for (std::size_t j = 0; j < kNumJoints; ++j) {
            out.at(f, j) = r * (seq.at(f, j) - pivot) + pivot;
        }
    }
    return out;
}

MotionSequence translate(const MotionSequence& seq, const Vec3& offset) {
    MotionSequence out = seq;
    for (std::size_t f = 0; f < seq.frames(); ++f) {
        for (std::size_t j = 0; j < kNumJoints; ++j) out.at(f, j) += offset;
    }
    return out;
}

MotionSequence mirror_sequence(const MotionSequence& seq) {
    const auto& partner = mirror_partner();
    MotionSequence out = seq;
    for (std::size_t f = 0; f < seq.frames(); ++f) {
        for (std::size_t j = 0; j < kNumJoints; ++j) {
            Vec3 p = seq.at(f, partner[j]);
            p.x() = -p.x();
            out.at(f, j) = p;
        }
    }
    if (seq.contacts()) {
        // contact channels are (L ankle, R ankle, L foot, R foot)
        ContactTrack c = *seq.contacts();
        for (auto& row : c) {
            std::swap(row[0], row[1]);
            std::swap(row[2], row[3]);
        }
        out.set_contacts(std::move(c));
    }
    return out;
}

}  // namespace motionsimp
