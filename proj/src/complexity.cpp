#include "motionsimp/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "motionsimp/errors.hpp"

namespace motionsimp {

namespace {

constexpr double kStaticSigma = 1e-9;
// |theta_T - theta_1| within this of a whole turn counts as a whole turn.
constexpr double kTurnSeamTolerance = 1e-9;

double mean(std::span<const double> v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double population_variance(std::span<const double> v) {
    if (v.empty()) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

double horizontal_range(const MotionSequence& seq, std::size_t j) {
    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_z = min_x, max_z = -min_x;
    for (std::size_t f = 0; f < seq.frames(); ++f) {
        const Vec3& p = seq.at(f, j);
        min_x = std::min(min_x, p.x());
        max_x = std::max(max_x, p.x());
        min_z = std::min(min_z, p.z());
        max_z = std::max(max_z, p.z());
    }
    return std::hypot(max_x - min_x, max_z - min_z);
}

}  // namespace

void MetricWeights::validate() const {
    const double all[] = {c1.alpha1, c1.alpha2, c1.alpha3, c2.beta, c3.gamma1, c3.gamma2,
                          c3.gamma3, c4.delta, c5.lambda, c5.delta, c5.epsilon};
    for (double v : all) {
        if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "metric weights must be finite");
    }
    if (entropy_bins < 2) fail(ErrorKind::InvalidArgument, "entropy_bins must be >= 2");
    if (c4.delta <= 0.0 || c5.delta <= 0.0 || c5.epsilon <= 0.0) {
        fail(ErrorKind::InvalidArgument, "delta and epsilon must be positive");
    }
    smoothing.validate();
}

ContactTrack estimate_contacts(const MotionSequence& seq, ContactThresholds thresholds) {
    const auto& feet = seq.skeleton().groups.feet;
    const std::size_t F = seq.frames();
    double ground = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < F; ++f) {
        for (std::size_t j : feet) ground = std::min(ground, seq.at(f, j).y());
    }
    ContactTrack track(F);
    for (std::size_t f = 0; f < F; ++f) {
        const std::size_t next = f + 1 < F ? f + 1 : f;
        const std::size_t prev = f + 1 < F ? f : f - 1;
        for (std::size_t k = 0; k < kContactChannels; ++k) {
            const std::size_t j = feet[k];
            const double speed = (seq.at(next, j) - seq.at(prev, j)).norm() * seq.fps();
            const double height = seq.at(f, j).y() - ground;
            track[f][k] = (speed < thresholds.speed && height < thresholds.height) ? 1 : 0;
        }
    }
    return track;
}

ContactTrack contacts_or_estimate(const MotionSequence& seq) {
    return seq.contacts() ? *seq.contacts() : estimate_contacts(seq);
}

double entropy(std::span<const double> values, int bins) {
    if (values.empty() || bins < 1) return 0.0;
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo)) return 0.0;
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    const double scale = static_cast<double>(bins) / (hi - lo);
    for (double v : values) {
        auto k = static_cast<long>(std::floor((v - lo) * scale));
        k = std::clamp<long>(k, 0, bins - 1);
        ++counts[static_cast<std::size_t>(k)];
    }
    const double n = static_cast<double>(values.size());
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h -= p * std::log(p);
    }
    return h;
}

double percentile(std::vector<double> values, double q) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const double rank = std::clamp(q, 0.0, 100.0) / 100.0 * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    const std::size_t n = values.size();
    const std::size_t mid = n / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<long>(mid), values.end());
    const double upper = values[mid];
    if (n % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<long>(mid));
    return 0.5 * (lower + upper);
}

CriterionResult evaluate_c1(const MotionSequence& seq, const DerivativeSet& deriv, const MetricWeights& w) {
    const std::size_t T = seq.frames();
    const double Td = static_cast<double>(T);
    CriterionResult r;
    r.activation.resize(T);

    std::vector<double> pooled;
    pooled.reserve(2 * T);
    for (std::size_t t = 0; t < T; ++t) pooled.push_back(deriv.velocity.at(t, joint::LeftFoot).norm());
    for (std::size_t t = 0; t < T; ++t) pooled.push_back(deriv.velocity.at(t, joint::RightFoot).norm());

    double speed_sum = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        r.activation[t] = pooled[t] + pooled[T + t];
        speed_sum += r.activation[t];
    }
    const double mean_speed = speed_sum / Td;
    const double h = entropy(pooled, w.entropy_bins);
    const double range = std::max(horizontal_range(seq, joint::LeftFoot), horizontal_range(seq, joint::RightFoot));

    const ContactTrack contacts = contacts_or_estimate(seq);
    std::size_t transitions = 0;
    for (std::size_t t = 1; t < T; ++t) {
        if (contacts[t] != contacts[t - 1]) ++transitions;
    }
    const double rate = static_cast<double>(transitions) / Td;

    r.score = mean_speed + w.c1.alpha1 * h + w.c1.alpha2 * range + w.c1.alpha3 * rate;
    return r;
}

CriterionResult evaluate_c2(const MotionSequence& seq, const DerivativeSet& deriv, const MetricWeights& w) {
    const std::size_t T = seq.frames();
    const auto& limbs = seq.skeleton().groups.limbs;
    CriterionResult r;
    r.activation.assign(T, 0.0);

    std::vector<double> speeds(T);
    std::vector<double> accel;
    accel.reserve(T * limbs.size());
    for (std::size_t j : limbs) {
        for (std::size_t t = 0; t < T; ++t) speeds[t] = deriv.velocity.at(t, j).norm();
        const double sigma = std::sqrt(population_variance(speeds));
        if (sigma >= kStaticSigma) {
            for (std::size_t t = 0; t < T; ++t) r.activation[t] += speeds[t] / sigma;
        }
        for (std::size_t t = 0; t < T; ++t) accel.push_back(deriv.acceleration.at(t, j).norm());
    }
    r.score = mean(r.activation) + w.c2.beta * median(std::move(accel));
    return r;
}

CriterionResult evaluate_c3(const MotionSequence& seq, const MetricWeights& w) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const std::size_t T = seq.frames();
    const std::vector<double> yaw = unwrap_angles(yaw_series(seq));
    const std::vector<double> smooth = savgol_fitted(yaw, w.smoothing);

    std::vector<double> d1(T - 1);
    for (std::size_t t = 0; t + 1 < T; ++t) d1[t] = smooth[t + 1] - smooth[t];
    std::vector<double> d2(T >= 3 ? T - 2 : 0);
    for (std::size_t t = 0; t < d2.size(); ++t) d2[t] = std::abs(d1[t + 1] - d1[t]);

    CriterionResult r;
    r.activation.resize(T);
    for (std::size_t t = 0; t + 1 < T; ++t) r.activation[t] = std::abs(d1[t]);
    r.activation[T - 1] = r.activation[T - 2];

    double turn = std::fmod(std::abs(yaw.back() - yaw.front()), two_pi);
    if (two_pi - turn < kTurnSeamTolerance) turn = 0.0;

    const double mean_speed = mean(std::span<const double>(r.activation.data(), T - 1));
    r.score = w.c3.gamma1 * (turn / std::numbers::pi) + w.c3.gamma2 * mean_speed + w.c3.gamma3 * mean(d2);
    return r;
}

CriterionResult evaluate_c4(const MotionSequence& seq, const DerivativeSet& deriv, const MetricWeights& w) {
    const std::size_t T = seq.frames();
    const auto& upper = seq.skeleton().groups.upper;
    const auto& lower = seq.skeleton().groups.lower;
    std::vector<double> iu(T, 0.0), il(T, 0.0), diff(T);
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t j : upper) iu[t] += deriv.velocity.at(t, j).norm();
        for (std::size_t j : lower) il[t] += deriv.velocity.at(t, j).norm();
        iu[t] /= static_cast<double>(upper.size());
        il[t] /= static_cast<double>(lower.size());
        diff[t] = iu[t] - il[t];
    }
    CriterionResult r;
    r.activation.resize(T);
    for (std::size_t t = 0; t < T; ++t) r.activation[t] = std::abs(diff[t]);
    const bool active = std::min(mean(iu), mean(il)) > w.c4.delta;
    r.score = active ? population_variance(diff) : 0.0;
    return r;
}

CriterionResult evaluate_c5(const MotionSequence& seq, const DerivativeSet& deriv, const MetricWeights& w) {
    const std::size_t T = seq.frames();
    const auto& pairs = seq.skeleton().groups.paired;
    const std::size_t P = pairs.size();
    const double eps = w.c5.epsilon;

    // joint weights inversely proportional to mean bilateral (filtered) speed
    std::vector<double> inv(P, 0.0);
    double total_left = 0.0, total_right = 0.0;
    for (std::size_t p = 0; p < P; ++p) {
        double sum = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
            const double l = deriv.filtered_velocity.at(t, pairs[p].left).norm();
            const double rr = deriv.filtered_velocity.at(t, pairs[p].right).norm();
            total_left += l;
            total_right += rr;
            sum += 0.5 * (l + rr);
        }
        inv[p] = 1.0 / (sum / static_cast<double>(T) + eps);
    }
    double inv_sum = 0.0;
    for (double v : inv) inv_sum += v;

    const std::vector<double> yaw = yaw_series(seq);
    CriterionResult r;
    r.activation.resize(T);
    for (std::size_t t = 0; t < T; ++t) {
        const Eigen::Matrix3d to_local = rotation_y(-yaw[t]);
        const Vec3& pelvis = seq.at(t, joint::Pelvis);
        double a = 0.0;
        for (std::size_t p = 0; p < P; ++p) {
            const std::size_t jl = pairs[p].left, jr = pairs[p].right;
            const double dv = std::abs(deriv.velocity.at(t, jl).norm() - deriv.velocity.at(t, jr).norm());
            const Vec3 left = to_local * (seq.at(t, jl) - pelvis);
            Vec3 right = to_local * (seq.at(t, jr) - pelvis);
            right.x() = -right.x();
            const double dp = (left - right).norm();
            a += (inv[p] / inv_sum) * (dv + 0.5 * dp);
        }
        r.activation[t] = a;
    }
    const double ratio = std::min(total_left, total_right) / (std::max(total_left, total_right) + eps);
    const double penalty = 1.0 + (ratio < w.c5.delta ? w.c5.lambda : 0.0);
    r.score = mean(r.activation) * penalty;
    return r;
}

double compute_c1(const MotionSequence& seq, const DerivativeSet& deriv, const MetricWeights& w) {
    return evaluate_c1(seq, deriv, w).score;
}
double compute_c2(const MotionSequence& seq, const DerivativeSet& deriv, const MetricWeights& w) {
    return evaluate_c2(seq, deriv, w).score;
}
double compute_c3(const MotionSequence& seq, const MetricWeights& w) { return evaluate_c3(seq, w).score; }
double compute_c4(const MotionSequence& seq, const DerivativeSet& deriv, const MetricWeights& w) {
    return evaluate_c4(seq, deriv, w).score;
}
double compute_c5(const MotionSequence& seq, const DerivativeSet& deriv, const MetricWeights& w) {
    return evaluate_c5(seq, deriv, w).score;
}

ComplexityProfile compute_profile(const MotionSequence& seq, const MetricWeights& w) {
    w.validate();
    const DerivativeSet deriv = derivatives_fitted(seq, w.smoothing);
    CriterionResult results[kNumCriteria] = {
        evaluate_c1(seq, deriv, w), evaluate_c2(seq, deriv, w), evaluate_c3(seq, w),
        evaluate_c4(seq, deriv, w), evaluate_c5(seq, deriv, w),
    };
    ComplexityProfile profile;
    profile.weights_used = w;
    for (std::size_t i = 0; i < kNumCriteria; ++i) {
        profile.scores[i] = results[i].score;
        profile.activations[i] = std::move(results[i].activation);
    }
    return profile;
}

}  // namespace motionsimp
