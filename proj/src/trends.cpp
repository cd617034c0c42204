#include "motionsimp/trends.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "motionsimp/errors.hpp"

namespace motionsimp {

namespace {

int sign_eps(double d, double eps) {
    if (d >= eps) return 1;
    if (d <= -eps) return -1;
    return 0;
}

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }

    std::vector<std::size_t> parent;
};

bool trend_order(const MotionTrend& a, const MotionTrend& b) {
    if (a.joint != b.joint) return a.joint < b.joint;
    if (a.start != b.start) return a.start < b.start;
    if (a.end != b.end) return a.end < b.end;
    return a.direction < b.direction;
}

// One sweep over a single joint's trends (sorted by start). Returns true if
// any pair linked.
bool sweep_once(std::vector<MotionTrend>& trends, double alpha) {
    const std::size_t n = trends.size();
    DisjointSets groups(n);
    std::vector<std::size_t> active;
    bool linked = false;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& in = trends[i];
        for (std::size_t a : active) {
            if (overlap_ratio(trends[a].start, trends[a].end, in.start, in.end) >= alpha) {
                linked |= groups.unite(a, i);
            }
        }
        active.push_back(i);
        // evict trends that end before the incoming start; later trends
        // start no earlier, so they can never overlap again
        std::erase_if(active, [&](std::size_t a) { return trends[a].end < in.start; });
    }
    if (!linked) return false;

    std::map<std::size_t, MotionTrend> merged;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = groups.find(i);
        auto [it, fresh] = merged.try_emplace(root, trends[i]);
        if (fresh) continue;
        MotionTrend& m = it->second;
        m.start = std::min(m.start, trends[i].start);
        m.end = std::max(m.end, trends[i].end);
        for (int a = 0; a < 3; ++a) m.direction[a] += trends[i].direction[a];
    }
    trends.clear();
    for (auto& [root, t] : merged) trends.push_back(t);
    std::sort(trends.begin(), trends.end(), trend_order);
    return true;
}

}  // namespace

double overlap_ratio(std::size_t s1, std::size_t e1, std::size_t s2, std::size_t e2) {
    const std::size_t shortest = std::min(e1 - s1, e2 - s2);
    if (shortest == 0) return 0.0;
    const std::size_t lo = std::max(s1, s2);
    const std::size_t hi = std::min(e1, e2);
    if (hi <= lo) return 0.0;
    return static_cast<double>(hi - lo) / static_cast<double>(shortest);
}

std::vector<MotionTrend> detect_axis_trends(const MotionSequence& seq, std::size_t joint, int axis, double epsilon) {
    if (!(epsilon > 0.0)) fail(ErrorKind::InvalidArgument, "trend epsilon must be positive");
    if (axis < 0 || axis > 2) fail(ErrorKind::InvalidArgument, "axis must be 0, 1 or 2");
    std::vector<MotionTrend> out;
    const std::size_t steps = seq.frames() - 1;
    std::size_t t = 0;
    while (t < steps) {
        const int s = sign_eps(seq.at(t + 1, joint)[axis] - seq.at(t, joint)[axis], epsilon);
        if (s == 0) {
            ++t;
            continue;
        }
        std::size_t u = t + 1;
        while (u < steps && sign_eps(seq.at(u + 1, joint)[axis] - seq.at(u, joint)[axis], epsilon) == s) ++u;
        MotionTrend tr;
        tr.joint = joint;
        tr.start = t;
        tr.end = u;  // last step is u - 1, which ends at frame u
        tr.direction[axis] = s;
        out.push_back(tr);
        t = u;
    }
    return out;
}

std::vector<MotionTrend> merge_trends(std::vector<MotionTrend> trends, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::InvalidArgument, "alpha must be in (0, 1]");
    std::sort(trends.begin(), trends.end(), trend_order);
    std::vector<MotionTrend> out;
    auto begin = trends.begin();
    while (begin != trends.end()) {
        auto end = std::find_if(begin, trends.end(), [&](const MotionTrend& t) { return t.joint != begin->joint; });
        std::vector<MotionTrend> joint_trends(begin, end);
        while (sweep_once(joint_trends, alpha)) {
        }
        for (const auto& t : joint_trends) {
            if (t.direction != Direction{0, 0, 0}) out.push_back(t);
        }
        begin = end;
    }
    return out;
}

std::vector<MotionTrend> detect_motion_trends(const MotionSequence& seq, double epsilon, double alpha) {
    std::vector<MotionTrend> axis_trends;
    for (std::size_t j = 0; j < kNumJoints; ++j) {
        for (int a = 0; a < 3; ++a) {
            auto t = detect_axis_trends(seq, j, a, epsilon);
            axis_trends.insert(axis_trends.end(), t.begin(), t.end());
        }
    }
    return merge_trends(std::move(axis_trends), alpha);
}

std::vector<std::pair<std::size_t, std::size_t>> threshold_runs(const std::vector<double>& activation,
                                                                double tau, std::size_t min_len) {
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    const std::size_t n = activation.size();
    std::size_t f = 0;
    while (f < n) {
        if (!(activation[f] > tau)) {
            ++f;
            continue;
        }
        std::size_t g = f;
        while (g + 1 < n && activation[g + 1] > tau) ++g;
        if (g - f + 1 >= min_len) runs.emplace_back(f, g);
        f = g + 1;
    }
    return runs;
}

namespace {

JointSet chain_union(const SkeletonSpec& sk, std::initializer_list<const char*> names) {
    JointSet out;
    for (const char* name : names) {
        const auto& c = sk.chain(name);
        out.insert(out.end(), c.joints.begin(), c.joints.end());
    }
    return out;
}

double mean_group_speed(const DerivativeSet& deriv, const JointSet& group, std::size_t s, std::size_t e) {
    double total = 0.0;
    for (std::size_t f = s; f <= e; ++f) {
        for (std::size_t j : group) total += deriv.velocity.at(f, j).norm();
    }
    return total / static_cast<double>((e - s + 1) * group.size());
}

}  // namespace

JointSet select_target_joints(int criterion, const MotionSequence& seq, const std::vector<MotionTrend>& trends,
                              std::size_t start, std::size_t end, const DerivativeSet& deriv) {
    const SkeletonSpec& sk = seq.skeleton();
    switch (criterion) {
        case 1:
            return chain_union(sk, {"left_leg", "right_leg"});
        case 2: {
            JointSet out;
            for (const auto& chain : sk.chains) {
                const bool moving = std::any_of(trends.begin(), trends.end(), [&](const MotionTrend& t) {
                    return std::find(chain.joints.begin(), chain.joints.end(), t.joint) != chain.joints.end() &&
                           overlap_ratio(t.start, t.end, start, end) >= 0.5;
                });
                if (moving) out.insert(out.end(), chain.joints.begin(), chain.joints.end());
            }
            if (out.empty()) out = chain_union(sk, {"left_leg", "right_leg", "left_arm", "right_arm"});
            return out;
        }
        case 3: {
            JointSet all(kNumJoints);
            std::iota(all.begin(), all.end(), 0);
            return all;
        }
        case 4: {
            const double upper = mean_group_speed(deriv, sk.groups.upper, start, end);
            const double lower = mean_group_speed(deriv, sk.groups.lower, start, end);
            return upper >= lower ? chain_union(sk, {"left_arm", "right_arm"})
                                  : chain_union(sk, {"left_leg", "right_leg"});
        }
        case 5:
            return chain_union(sk, {"right_arm"});
        default:
            fail(ErrorKind::InvalidArgument, "criterion must be 1..5");
    }
}

std::vector<ComplexInterval> detect_intervals(const MotionSequence& seq, const ComplexityProfile& profile,
                                              int criterion, double tau, std::size_t min_len,
                                              const std::vector<MotionTrend>& trends) {
    if (criterion < 1 || criterion > 5) fail(ErrorKind::InvalidArgument, "criterion must be 1..5");
    if (min_len < 2) fail(ErrorKind::InvalidArgument, "minimum interval length must be >= 2");
    const auto runs = threshold_runs(profile.activation(criterion), tau, min_len);
    std::vector<ComplexInterval> out;
    if (runs.empty()) return out;
    const DerivativeSet deriv = derivatives_fitted(seq, profile.weights_used.smoothing);
    for (const auto& [s, e] : runs) {
        out.push_back({criterion, s, e, select_target_joints(criterion, seq, trends, s, e, deriv)});
    }
    return out;
}

}  // namespace motionsimp
