#include "motionsimp/rules.hpp"

#include <cmath>

#include "motionsimp/errors.hpp"
#include "motionsimp/kinematics.hpp"

namespace motionsimp {

namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

void check_interval(const MotionSequence& seq, const ComplexInterval& iv) {
    if (iv.start > iv.end || iv.end >= seq.frames()) {
        fail(ErrorKind::InvalidArgument, "interval outside the sequence");
    }
    for (std::size_t j : iv.joints) {
        if (j >= kNumJoints) fail(ErrorKind::InvalidArgument, "interval joint out of range");
    }
}

// Root reattachment per chain contained in the target set, then boundary
// smoothing. A whole-body target is already anchored, so it skips reattachment.
MotionSequence post_process(const MotionSequence& src, MotionSequence gen, const JointSet& joints,
                            std::size_t start, std::size_t end) {
    if (joints.size() < kNumJoints) {
        for (const auto& chain : src.skeleton().chains_within(joints)) {
            gen = reattach_root(src, gen, chain, start, end);
        }
    }
    return smooth_discontinuity(src, gen, joints, end);
}

}  // namespace

MotionSequence distance_compression(const MotionSequence& seq, const std::vector<ComplexInterval>& intervals,
                                    double k, PostProcess post) {
    if (!(k >= 0.0 && k <= 1.0)) fail(ErrorKind::InvalidArgument, "compression factor must be in [0, 1]");
    MotionSequence gen = seq;
    for (const auto& iv : intervals) {
        check_interval(gen, iv);
        const MotionSequence src = gen;
        for (std::size_t j : iv.joints) {
            gen.at(iv.start, j) = src.at(iv.start, j);
            for (std::size_t t = iv.start + 1; t <= iv.end; ++t) {
                gen.at(t, j) = gen.at(t - 1, j) + k * (src.at(t, j) - src.at(t - 1, j));
            }
        }
        if (post == PostProcess::Apply) gen = post_process(src, std::move(gen), iv.joints, iv.start, iv.end);
    }
    return gen;
}

MotionSequence velocity_reduction(const MotionSequence& seq, const std::vector<ComplexInterval>& intervals,
                                  int slowdown, PostProcess post) {
    if (slowdown < 2) fail(ErrorKind::InvalidArgument, "slowdown factor must be an integer >= 2");
    const auto lambda = static_cast<std::size_t>(slowdown);
    MotionSequence gen = seq;
    for (const auto& iv : intervals) {
        check_interval(gen, iv);
        const std::size_t stretched_end = iv.start + (iv.end - iv.start) * lambda;
        if (stretched_end >= gen.frames()) continue;
        const MotionSequence src = gen;
        for (std::size_t j : iv.joints) {
            for (std::size_t k = 0; k < iv.end - iv.start; ++k) {
                const Vec3& from = src.at(iv.start + k, j);
                const Vec3 step = src.at(iv.start + k + 1, j) - from;
                for (std::size_t i = 0; i < lambda; ++i) {
                    gen.at(iv.start + k * lambda + i, j) =
                        from + (static_cast<double>(i) / static_cast<double>(lambda)) * step;
                }
            }
            gen.at(stretched_end, j) = src.at(iv.end, j);
        }
        if (post == PostProcess::Apply) gen = post_process(src, std::move(gen), iv.joints, iv.start, stretched_end);
    }
    return gen;
}

MotionSequence directional_change(const MotionSequence& seq, const std::vector<ComplexInterval>& intervals,
                                  const FlipVector& flip, PostProcess post) {
    for (int v : flip) {
        if (v != 1 && v != -1) fail(ErrorKind::InvalidArgument, "flip vector entries must be -1 or +1");
    }
    const Vec3 f(flip[0], flip[1], flip[2]);
    MotionSequence gen = seq;
    for (const auto& iv : intervals) {
        check_interval(gen, iv);
        const MotionSequence src = gen;
        for (std::size_t j : iv.joints) {
            const Vec3 anchor = src.at(iv.start, j);
            Vec3 acc = Vec3::Zero();
            for (std::size_t t = iv.start + 1; t <= iv.end; ++t) {
                acc += f.cwiseProduct(src.at(t, j) - src.at(t - 1, j));
                gen.at(t, j) = anchor + acc;
            }
        }
        if (post == PostProcess::Apply) gen = post_process(src, std::move(gen), iv.joints, iv.start, iv.end);
    }
    return gen;
}

MotionSequence orientation_stabilization(const MotionSequence& seq, const std::vector<ComplexInterval>& intervals,
                                         std::optional<double> target) {
    MotionSequence gen = seq;
    for (const auto& iv : intervals) {
        check_interval(gen, iv);
        const double psi_target = target.value_or(pelvis_yaw(gen, iv.start));
        for (std::size_t f = iv.start; f <= iv.end; ++f) {
            const double psi = pelvis_yaw(gen, f);
            const Eigen::Matrix3d r = rotation_y(psi_target - psi);
            const Vec3 pelvis = gen.at(f, joint::Pelvis);
            for (std::size_t j = 0; j < kNumJoints; ++j) {
                gen.at(f, j) = r * (gen.at(f, j) - pelvis) + pelvis;
            }
        }
    }
    return gen;
}

MotionSequence reattach_root(const MotionSequence& orig, const MotionSequence& gen, const JointChain& chain,
                             std::size_t start, std::size_t end) {
    if (end >= gen.frames() || start > end) fail(ErrorKind::InvalidArgument, "interval outside the sequence");
    MotionSequence out = gen;
    const std::size_t root = chain.root();
    for (std::size_t f = start; f <= end; ++f) {
        const Vec3 delta = orig.at(f, root) - gen.at(f, root);
        for (std::size_t j : chain.joints) out.at(f, j) = gen.at(f, j) + delta;
        out.at(f, root) = orig.at(f, root);
    }
    return out;
}

MotionSequence smooth_discontinuity(const MotionSequence& orig, const MotionSequence& gen, const JointSet& joints,
                                    std::size_t boundary) {
    MotionSequence out = gen;
    if (boundary + 1 >= gen.frames()) return out;
    for (std::size_t j : joints) {
        Vec3 offset = orig.at(boundary, j) - gen.at(boundary, j);
        for (std::size_t f = boundary + 1; f < gen.frames(); ++f) {
            const Vec3 d = orig.at(f, j) - orig.at(f - 1, j);
            out.at(f, j) -= offset;
            for (int a = 0; a < 3; ++a) {
                if (sign(d[a]) == -sign(offset[a])) {
                    const double u = offset[a] + d[a];
                    offset[a] = sign(u) != sign(offset[a]) ? 0.0 : u;
                }
            }
        }
    }
    return out;
}

std::optional<FlipVector> derive_flip_vector(const std::vector<MotionTrend>& trends, const ComplexInterval& interval,
                                             double alpha) {
    std::vector<const MotionTrend*> left, right;
    for (const auto& t : trends) {
        if (overlap_ratio(t.start, t.end, interval.start, interval.end) < alpha) continue;
        if (t.joint == joint::LeftWrist) left.push_back(&t);
        if (t.joint == joint::RightWrist) right.push_back(&t);
    }
    const MotionTrend* best_l = nullptr;
    const MotionTrend* best_r = nullptr;
    double best = -1.0;
    for (const auto* l : left) {
        for (const auto* r : right) {
            const double ratio = overlap_ratio(l->start, l->end, r->start, r->end);
            if (ratio >= alpha && ratio > best) {
                best = ratio;
                best_l = l;
                best_r = r;
            }
        }
    }
    if (best_l == nullptr) return std::nullopt;
    FlipVector flip{1, 1, 1};
    for (int a = 0; a < 3; ++a) {
        const int sl = sign(best_l->direction[a]);
        const int sr = sign(best_r->direction[a]);
        if (sl != 0 && sr != 0 && sl != sr) flip[a] = -1;
    }
    return flip;
}

}  // namespace motionsimp
