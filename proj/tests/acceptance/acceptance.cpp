// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "motionsimp/cli.hpp"
#include "motionsimp/complexity.hpp"
#include "motionsimp/eval.hpp"
#include "motionsimp/fixtures.hpp"
#include "motionsimp/kinematics.hpp"
#include "motionsimp/motion_io.hpp"
#include "motionsimp/pipeline.hpp"
#include "motionsimp/rules.hpp"
#include "motionsimp/service.hpp"
#include "oracles.hpp"
#include "tmpdir.hpp"

using namespace motionsimp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

int sgn(double v) { return (v > 0) - (v < 0); }

// Collects failed conditions for one criterion.
struct Outcome {
    std::vector<std::string> failures;
    std::string summary;

    void expect(bool ok, const std::string& what) {
        if (!ok && failures.size() < 5) failures.push_back(what);
        if (!ok) ++failed;
    }
    std::size_t failed = 0;
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

MotionSequence map_frames(const MotionSequence& seq, const std::function<Vec3(std::size_t, std::size_t, const Vec3&)>& fn) {
    std::vector<Vec3> pos;
    pos.reserve(seq.positions().size());
    for (std::size_t f = 0; f < seq.frames(); ++f) {
        for (std::size_t j = 0; j < kNumJoints; ++j) pos.push_back(fn(f, j, seq.at(f, j)));
    }
    return MotionSequence(seq.frames(), seq.fps(), pos, seq.contacts());
}

MotionSequence every_other_frame(const MotionSequence& seq) {
    std::vector<Vec3> pos;
    std::size_t n = 0;
    for (std::size_t f = 0; f < seq.frames(); f += 2, ++n) {
        for (std::size_t j = 0; j < kNumJoints; ++j) pos.push_back(seq.at(f, j));
    }
    return MotionSequence(n, seq.fps(), pos);
}

MotionSequence spin(const MotionSequence& seq, double rad_per_s) {
    return map_frames(seq, [&](std::size_t f, std::size_t, const Vec3& p) {
        const Vec3 pivot = seq.at(f, joint::Pelvis);
        return Vec3(rotation_y(rad_per_s * static_cast<double>(f) / seq.fps()) * (p - pivot) + pivot);
    });
}

// ---------------------------------------------------------------------------

Outcome metric_oracle() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> frames(30, 300);
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto seq = testgen::random_motion(1000 + s, frames(rng));
        const auto profile = compute_profile(seq);
        for (int c = 1; c <= 5; ++c) {
            const double r = rel(profile.score(c), oracle::score(c, seq));
            worst = std::max(worst, r);
            o.expect(r <= 1e-9, "seed " + std::to_string(1000 + s) + " C" + std::to_string(c) + " rel " + fmt(r));
        }
    }
    const double secs = seconds_since(t0);
    o.expect(secs < 30.0, "runtime " + fmt(secs) + " s");
    o.summary = "50 sequences, worst rel err " + fmt(worst) + ", " + fmt(secs) + " s";
    return o;
}

Outcome constants() {
    Outcome o;
    const MetricWeights w;
    o.expect(w.c1.alpha1 == 1.5 && w.c1.alpha2 == 0.05 && w.c1.alpha3 == 15.0, "C1 weights");
    o.expect(w.c2.beta == 0.005, "C2 beta");
    o.expect(w.c3.gamma1 == 0.3 && w.c3.gamma2 == 1.0 && w.c3.gamma3 == 0.5, "C3 gammas");
    o.expect(w.c4.delta == 0.01, "C4 delta");
    o.expect(w.c5.lambda == 0.5 && w.c5.delta == 0.01 && w.c5.epsilon == 1e-6, "C5 constants");
    o.expect(w.entropy_bins == 10, "entropy bins");
    const SimplifyConfig c;
    o.expect(c.epsilon == 0.2 && kDefaultTrendEpsilon == 0.2, "trend epsilon");
    o.expect(c.alpha == 0.5 && kDefaultOverlapAlpha == 0.5, "overlap alpha");
    o.summary = "metric weights and trend defaults";
    return o;
}

Outcome zero_symmetry() {
    Outcome o;
    const auto still = compute_profile(make_fixture(FixtureKind::Static, {180, 60.0, 0}));
    double worst = 0.0;
    for (int c = 1; c <= 5; ++c) worst = std::max(worst, std::abs(still.score(c)));
    o.expect(worst < 1e-12, "static max |score| " + fmt(worst));

    double mirror = 0.0;
    for (std::uint64_t s = 0; s < 3; ++s) {
        mirror = std::max(mirror, compute_profile(make_fixture(FixtureKind::Mirror, {180, 60.0, s})).score(5));
    }
    o.expect(mirror < 1e-9, "mirror C5 " + fmt(mirror));

    double c3 = 0.0;
    for (auto kind : {FixtureKind::Static, FixtureKind::Mirror, FixtureKind::AsymmetricArms}) {
        c3 = std::max(c3, std::abs(compute_profile(make_fixture(kind, {180, 60.0, 1})).score(3)));
    }
    o.expect(c3 < 1e-12, "zero-rotation C3 " + fmt(c3));
    o.summary = "static " + fmt(worst) + ", mirror C5 " + fmt(mirror) + ", zero-rotation C3 " + fmt(c3);
    return o;
}

Outcome monotonicity() {
    Outcome o;
    std::ostringstream detail;
    for (std::uint64_t s = 0; s < 3; ++s) {
        for (auto kind : {FixtureKind::Random, FixtureKind::Walker, FixtureKind::DenseShaker}) {
            const auto seq = make_fixture(kind, {240, 60.0, s});
            const double base = compute_profile(seq).score(2);
            const double fast = compute_profile(every_other_frame(seq)).score(2);
            o.expect(fast > base, fixture_name(kind) + " C2 " + fmt(base) + " -> " + fmt(fast));
        }
    }

    for (auto kind : {FixtureKind::Static, FixtureKind::Walker, FixtureKind::Mirror}) {
        const auto seq = make_fixture(kind, {180, 60.0, 2});
        const double base = compute_profile(seq).score(3);
        const double turned = compute_profile(spin(seq, 1.5)).score(3);
        o.expect(turned > base, fixture_name(kind) + " C3 " + fmt(base) + " -> " + fmt(turned));
    }

    for (std::uint64_t s = 0; s < 3; ++s) {
        const auto walk = make_fixture(FixtureKind::Walker, {240, 60.0, s});
        const auto& feet = smpl24().groups.feet;
        const auto doubled = map_frames(walk, [&](std::size_t, std::size_t j, const Vec3& p) {
            if (std::find(feet.begin(), feet.end(), j) == feet.end()) return p;
            const Vec3& p0 = walk.at(0, j);
            return Vec3(p0.x() + 2.0 * (p.x() - p0.x()), p.y(), p0.z() + 2.0 * (p.z() - p0.z()));
        });
        const double base = compute_profile(walk).score(1);
        const double more = compute_profile(doubled).score(1);
        o.expect(more > base, "walker C1 " + fmt(base) + " -> " + fmt(more));
        if (s == 0) detail << "walker C1 " << fmt(base) << " -> " << fmt(more) << "; ";
    }

    for (std::uint64_t s = 0; s < 3; ++s) {
        const double de = compute_profile(make_fixture(FixtureKind::Desync, {240, 60.0, s})).score(4);
        const double sy = compute_profile(make_fixture(FixtureKind::Sync, {240, 60.0, s})).score(4);
        o.expect(de > sy, "C4 desync " + fmt(de) + " vs sync " + fmt(sy));
        if (s == 0) detail << "C4 desync " << fmt(de) << " > sync " << fmt(sy);
    }
    o.summary = "C2 compression, C3 spin, " + detail.str();
    return o;
}

Outcome sweep_oracle() {
    Outcome o;
    std::mt19937_64 rng(7);
    std::size_t merged_total = 0;
    for (int round = 0; round < 200; ++round) {
        const auto trends = testgen::random_trends(rng, 2 + static_cast<std::size_t>(round % 40));
        const auto got = merge_trends(trends, kDefaultOverlapAlpha);
        const auto want = oracle::merge_fixed_point(trends, kDefaultOverlapAlpha);
        merged_total += got.size();
        o.expect(got == want, "set " + std::to_string(round) + ": " + std::to_string(got.size()) + " vs " +
                                  std::to_string(want.size()) + " trends");
    }
    o.summary = "200 trend sets, " + std::to_string(merged_total) + " merged trends compared";
    return o;
}

Outcome rule_contracts() {
    Outcome o;
    const auto& sk = smpl24();
    double step_err = 0.0, dir_err = 0.0, yaw_err = 0.0, dist_err = 0.0, root_res = 0.0;
    bool endpoints = true, skip = true, smooth_ok = true;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto seq = testgen::random_motion(500 + s, 120);
        const ComplexInterval arm{5, 10, 60, sk.chain("right_arm").joints};
        const ComplexInterval leg{1, 20, 50, sk.chain("left_leg").joints};

        const double k = 0.1 * static_cast<double>(s);
        const auto dc = distance_compression(seq, {arm}, k, PostProcess::Skip);
        for (std::size_t j : arm.joints) {
            for (std::size_t t = arm.start + 1; t <= arm.end; ++t) {
                const Vec3 want = k * (seq.at(t, j) - seq.at(t - 1, j));
                step_err = std::max(step_err, ((dc.at(t, j) - dc.at(t - 1, j)) - want).cwiseAbs().maxCoeff());
            }
        }

        const auto vr = velocity_reduction(seq, {leg}, 2, PostProcess::Skip);
        for (std::size_t j : leg.joints) {
            endpoints = endpoints && vr.at(leg.start, j) == seq.at(leg.start, j) &&
                        vr.at(leg.start + 2 * (leg.end - leg.start), j) == seq.at(leg.end, j);
        }
        const ComplexInterval late{1, 80, 110, leg.joints};
        skip = skip && velocity_reduction(seq, {late}, 2) == seq;

        const FlipVector flip{-1, static_cast<int>(s % 2) * 2 - 1, 1};
        const auto dch = directional_change(seq, {arm}, flip, PostProcess::Skip);
        for (std::size_t j : arm.joints) {
            for (std::size_t t = arm.start + 1; t <= arm.end; ++t) {
                const Vec3 a = dch.at(t, j) - dch.at(t - 1, j);
                const Vec3 b = seq.at(t, j) - seq.at(t - 1, j);
                for (int ax = 0; ax < 3; ++ax) dir_err = std::max(dir_err, std::abs(std::abs(a[ax]) - std::abs(b[ax])));
            }
        }

        const ComplexInterval whole{3, 15, 100, {}};
        const double target = -1.0 + 0.3 * static_cast<double>(s);
        const auto os = orientation_stabilization(seq, {whole}, target);
        for (std::size_t f = whole.start; f <= whole.end; ++f) {
            yaw_err = std::max(yaw_err, std::abs(wrap_angle(pelvis_yaw(os, f) - target)));
            for (std::size_t a = 0; a < kNumJoints; ++a) {
                for (std::size_t b = a + 1; b < kNumJoints; ++b) {
                    dist_err = std::max(dist_err, std::abs((seq.at(f, a) - seq.at(f, b)).norm() -
                                                           (os.at(f, a) - os.at(f, b)).norm()));
                }
            }
        }

        const auto other = translate(testgen::random_motion(600 + s, 120), Vec3(0.4, 0.1, -0.3));
        for (const auto& chain : sk.chains) {
            const auto ra = reattach_root(seq, other, chain, 10, 90);
            for (std::size_t f = 10; f <= 90; ++f) {
                root_res = std::max(root_res, (ra.at(f, chain.root()) - seq.at(f, chain.root())).norm());
            }
        }

        const auto sm = smooth_discontinuity(seq, dc, arm.joints, arm.end);
        for (std::size_t j : arm.joints) {
            Vec3 prev = seq.at(arm.end, j) - dc.at(arm.end, j);
            for (std::size_t f = arm.end + 1; f < seq.frames(); ++f) {
                const Vec3 off = dc.at(f, j) - sm.at(f, j);
                for (int ax = 0; ax < 3; ++ax) {
                    smooth_ok = smooth_ok && std::abs(off[ax]) <= std::abs(prev[ax]) + 1e-12 &&
                                sgn(off[ax]) * sgn(prev[ax]) >= 0;
                }
                prev = off;
            }
        }
    }
    o.expect(step_err < 1e-12, "distance compression step error " + fmt(step_err));
    o.expect(endpoints, "velocity reduction endpoints");
    o.expect(skip, "velocity reduction skip rule");
    o.expect(dir_err < 1e-12, "directional change magnitude error " + fmt(dir_err));
    o.expect(yaw_err < 1e-6, "orientation yaw error " + fmt(yaw_err));
    o.expect(dist_err < 1e-12, "orientation distance error " + fmt(dist_err));
    o.expect(root_res == 0.0, "root residual " + fmt(root_res));
    o.expect(smooth_ok, "smoothing offset not monotone");
    o.summary = "step " + fmt(step_err) + ", flip " + fmt(dir_err) + ", yaw " + fmt(yaw_err) + ", dist " +
                fmt(dist_err) + ", root " + fmt(root_res);
    return o;
}

Outcome pipeline_guard() {
    Outcome o;
    std::size_t attempted = 0, accepted = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto seq = testgen::random_motion(3000 + s, 90 + 2 * s);
        SimplifyConfig config;
        if (s % 2) config.epsilon = 0.02;
        const auto weights = config.metric_weights();
        PipelineState state{seq, compute_profile(seq, weights), detect_motion_trends(seq, config.epsilon, config.alpha)};
        for (int c = 1; c <= 5; ++c) {
            const MotionSequence before = state.working;
            const double score_before = compute_profile(before, weights).score(c);
            const auto rec = run_stage(c, state, config);
            attempted += rec.attempted;
            if (rec.accepted) {
                ++accepted;
                const double score_after = compute_profile(state.working, weights).score(c);
                o.expect(score_after < score_before, "seed " + std::to_string(s) + " C" + std::to_string(c) +
                                                         " " + fmt(score_before) + " -> " + fmt(score_after));
            } else {
                o.expect(state.working == before, "seed " + std::to_string(s) + " C" + std::to_string(c) +
                                                      " rejected stage changed the sequence");
            }
        }
        const auto full = simplify(seq, config);
        o.expect(full.motion == state.working, "seed " + std::to_string(s) + " replay differs from simplify");
    }

    const auto clip = testgen::random_motion(99, 300);
    simplify(clip);
    double best = 1e9;
    for (int i = 0; i < 5; ++i) {
        const auto t0 = Clock::now();
        simplify(clip);
        best = std::min(best, seconds_since(t0));
    }
    o.expect(best < 0.1, "300-frame simplify took " + fmt(best * 1e3) + " ms");
    o.summary = "100 sequences, " + std::to_string(attempted) + " stages attempted, " + std::to_string(accepted) +
                " accepted; 300-frame simplify " + fmt(best * 1e3) + " ms";
    return o;
}

Outcome evaluation() {
    Outcome o;
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n01(0.0, 1.0);

    std::vector<FeatureVector> x, y;
    for (int i = 0; i < 40; ++i) {
        FeatureVector a{FeatureKind::Kinetic, {}}, b{FeatureKind::Kinetic, {}};
        for (int d = 0; d < 6; ++d) {
            a.values.push_back(n01(rng));
            b.values.push_back(1.0 + 2.0 * n01(rng));
        }
        x.push_back(a);
        y.push_back(b);
    }
    const double self = fid(x, x);
    const double asym = std::abs(fid(x, y) - fid(y, x));
    o.expect(std::abs(self) < 1e-9, "fid(X,X) " + fmt(self));
    o.expect(asym < 1e-9, "fid asymmetry " + fmt(asym));

    std::vector<FeatureVector> g0, g1;
    for (int i = 0; i < 10000; ++i) {
        g0.push_back({FeatureKind::Kinetic, {n01(rng)}});
        g1.push_back({FeatureKind::Kinetic, {1.0 + n01(rng)}});
    }
    const double gauss = fid(g0, g1);
    o.expect(std::abs(gauss - 1.0) < 0.1, "1-D Gaussian fid " + fmt(gauss));

    std::size_t exact = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto a = testgen::random_motion(700 + s, 30 + 7 * s);
        const auto b = testgen::random_motion(800 + s, 40 + 5 * s);
        o.expect(dtw_cost(a, a) == 0.0, "dtw(a,a) nonzero");
        const auto d = pose_distance_matrix(a, b);
        double derr = 0.0;
        for (std::size_t i = 0; i < a.frames(); i += 3) {
            for (std::size_t k = 0; k < b.frames(); k += 3) {
                derr = std::max(derr, std::abs(d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) -
                                               oracle::pose_distance(a, i, b, k)));
            }
        }
        o.expect(derr < 1e-9, "pose distance error " + fmt(derr));
        const bool same = dtw_cost(a, b) == oracle::dtw(d);
        exact += same;
        o.expect(same, "dtw differs from DP oracle on pair " + std::to_string(s));
    }

    double div_err = 0.0;
    for (int set = 0; set < 10; ++set) {
        std::vector<FeatureVector> feats;
        std::vector<std::vector<double>> raw;
        for (int i = 0; i < 5 + set; ++i) {
            FeatureVector f{FeatureKind::Geometric, {}};
            for (int d = 0; d < 8; ++d) f.values.push_back(3.0 * n01(rng));
            raw.push_back(f.values);
            feats.push_back(f);
        }
        div_err = std::max(div_err, rel(diversity(feats), oracle::diversity(raw)));
    }
    o.expect(div_err < 1e-12, "diversity rel error " + fmt(div_err));
    o.summary = "fid(X,X) " + fmt(self) + ", gaussian " + fmt(gauss) + ", dtw exact " + std::to_string(exact) +
                "/20, diversity " + fmt(div_err);
    return o;
}

Outcome interface_consistency() {
    Outcome o;
    testgen::TempDir dir;
    Service service;
    std::size_t compared = 0;
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto seq = testgen::random_motion(900 + s, 100 + 20 * s);
        const std::string stem = "clip" + std::to_string(s);
        save_motion(seq, dir / (stem + ".json"), MotionFormat::Json);
        std::ostringstream out, err;
        const int code = cli::run({"analyze", (dir / (stem + ".json")).string(), "--out-dir", (dir / "out").string()},
                                  out, err);
        o.expect(code == 0, "analyze exit " + std::to_string(code) + ": " + err.str());
        const auto id = nlohmann::json::parse(service.post_sequence(motion_to_json(seq).dump()).body)["id"];
        const auto reply = service.get_profile(id.get<std::string>());
        o.expect(reply.status == 200, "profile status " + std::to_string(reply.status));
        o.expect(testgen::read_file(dir / "out" / (stem + ".profile.json")) == reply.body,
                 stem + ": CLI and service profiles differ");
        ++compared;

        for (auto fmt_kind : {MotionFormat::Bin, MotionFormat::Json}) {
            const auto path = dir / (stem + (fmt_kind == MotionFormat::Bin ? ".bin" : ".rt.json"));
            save_motion(seq, path, fmt_kind);
            const auto back = load_motion(path);
            o.expect(back == seq, stem + ": round trip not lossless");
        }
        const std::string bytes = encode_motion_bin(seq);
        o.expect(encode_motion_bin(decode_motion_bin(bytes)) == bytes, stem + ": binary re-encode differs");
    }
    const auto walk = make_fixture(FixtureKind::Walker, {90, 30.0, 1});
    o.expect(decode_motion_bin(encode_motion_bin(walk)) == walk, "contacts lost in binary round trip");
    o.summary = std::to_string(compared) + " profiles identical, JSON and binary round trips lossless";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"metric-oracle", metric_oracle},
        {"constants-fidelity", constants},
        {"zero-symmetry", zero_symmetry},
        {"monotonicity", monotonicity},
        {"sweep-line-oracle", sweep_oracle},
        {"rule-contracts", rule_contracts},
        {"pipeline-guard", pipeline_guard},
        {"evaluation-metrics", evaluation},
        {"interface-consistency", interface_consistency},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome out;
        try {
            out = check();
        } catch (const std::exception& e) {
            out.expect(false, std::string("exception: ") + e.what());
        }
        if (out.failed == 0) {
            std::cout << "PASS " << name << ": " << out.summary << "\n";
        } else {
            ++failed;
            std::cout << "FAIL " << name << ": " << out.failed << " check(s) failed";
            for (const auto& f : out.failures) std::cout << "; " << f;
            std::cout << "\n";
        }
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
