#include "motionsimp/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "motionsimp/complexity.hpp"
#include "motionsimp/errors.hpp"
#include "motionsimp/kinematics.hpp"

namespace motionsimp {

namespace {

constexpr double kGravity = 9.81;

struct JointPairIdx {
    std::size_t a;
    std::size_t b;
};

// Pairs used by geometric_features.
constexpr JointPairIdx kDistancePairs[] = {
    {joint::LeftWrist, joint::RightWrist},  {joint::LeftAnkle, joint::RightAnkle},
    {joint::LeftWrist, joint::Pelvis},      {joint::RightWrist, joint::Pelvis},
    {joint::LeftAnkle, joint::Pelvis},      {joint::RightAnkle, joint::Pelvis},
    {joint::Head, joint::Pelvis},           {joint::LeftWrist, joint::LeftAnkle},
    {joint::RightWrist, joint::RightAnkle}, {joint::LeftElbow, joint::RightElbow},
    {joint::LeftKnee, joint::RightKnee},
};

constexpr std::size_t kHeightJoints[] = {
    joint::Pelvis,     joint::Head,      joint::Neck,      joint::LeftWrist,  joint::RightWrist, joint::LeftElbow,
    joint::RightElbow, joint::LeftKnee,  joint::RightKnee, joint::LeftAnkle,  joint::RightAnkle,
};

static_assert(std::size(kDistancePairs) * 2 + std::size(kHeightJoints) == kGeometricDims);

// Forward difference x fps with the last row repeated.
JointField forward_rate(const MotionSequence& seq) {
    const std::size_t F = seq.frames();
    JointField v(F);
    for (std::size_t f = 0; f + 1 < F; ++f) {
        for (std::size_t j = 0; j < kNumJoints; ++j) v.at(f, j) = (seq.at(f + 1, j) - seq.at(f, j)) * seq.fps();
    }
    for (std::size_t j = 0; j < kNumJoints; ++j) v.at(F - 1, j) = v.at(F - 2, j);
    return v;
}

JointField forward_rate(const JointField& in, double fps) {
    const std::size_t F = in.frames();
    JointField v(F);
    for (std::size_t f = 0; f + 1 < F; ++f) {
        for (std::size_t j = 0; j < kNumJoints; ++j) v.at(f, j) = (in.at(f + 1, j) - in.at(f, j)) * fps;
    }
    for (std::size_t j = 0; j < kNumJoints; ++j) v.at(F - 1, j) = v.at(F - 2, j);
    return v;
}

Eigen::MatrixXd stack(std::span<const FeatureVector> feats) {
    if (feats.empty()) return {};
    const std::size_t dims = feats.front().values.size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(feats.size()), static_cast<Eigen::Index>(dims));
    for (std::size_t i = 0; i < feats.size(); ++i) {
        if (feats[i].values.size() != dims || feats[i].kind != feats.front().kind) {
            fail(ErrorKind::Shape, "feature vectors differ in kind or dimension");
        }
        for (std::size_t d = 0; d < dims; ++d) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = feats[i].values[d];
    }
    return m;
}

Eigen::MatrixXd covariance(const Eigen::MatrixXd& x) {
    const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
    return (centered.transpose() * centered) / static_cast<double>(x.rows() - 1);
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().transpose();
}

double mean_bone_length(const MotionSequence& seq) {
    const auto& parents = seq.skeleton().joint_parents;
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t f = 0; f < seq.frames(); ++f) {
        for (std::size_t j = 1; j < kNumJoints; ++j) {
            total += (seq.at(f, j) - seq.at(f, static_cast<std::size_t>(parents[j]))).norm();
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

}  // namespace

double pfc(const MotionSequence& seq) {
    const ContactTrack contacts = contacts_or_estimate(seq);
    const JointField v = forward_rate(seq);
    const auto& feet = seq.skeleton().groups.feet;
    double total = 0.0;
    for (std::size_t f = 0; f < seq.frames(); ++f) {
        for (std::size_t k = 0; k < kContactChannels; ++k) {
            if (contacts[f][k]) total += v.at(f, feet[k]).norm();
        }
    }
    return 100.0 * total / static_cast<double>(seq.frames() * kContactChannels);
}

double pbc(const MotionSequence& seq) {
    const ContactTrack contacts = contacts_or_estimate(seq);
    const JointField a = forward_rate(forward_rate(seq), seq.fps());
    const Vec3 gravity(0.0, -kGravity, 0.0);
    double total = 0.0;
    for (std::size_t f = 0; f < seq.frames(); ++f) {
        const bool supported = std::any_of(contacts[f].begin(), contacts[f].end(), [](auto c) { return c != 0; });
        if (supported) {
            double s = 0.0;
            for (std::size_t j = 0; j < kNumJoints; ++j) s += a.at(f, j).norm();
            total += s / static_cast<double>(kNumJoints);
        } else {
            Vec3 com = Vec3::Zero();
            for (std::size_t j = 0; j < kNumJoints; ++j) com += a.at(f, j);
            com /= static_cast<double>(kNumJoints);
            total += (com - gravity).norm();
        }
    }
    return total / static_cast<double>(seq.frames());
}

FeatureVector kinetic_features(const MotionSequence& seq) {
    const JointField v = forward_rate(seq);
    const JointField a = forward_rate(v, seq.fps());
    const double F = static_cast<double>(seq.frames());
    FeatureVector out{FeatureKind::Kinetic, std::vector<double>(kKineticDims, 0.0)};
    for (std::size_t j = 0; j < kNumJoints; ++j) {
        double sv = 0.0, sa = 0.0;
        for (std::size_t f = 0; f < seq.frames(); ++f) {
            sv += v.at(f, j).norm();
            sa += a.at(f, j).norm();
        }
        out.values[j] = sv / F;
        out.values[kNumJoints + j] = sa / F;
    }
    return out;
}

FeatureVector geometric_features(const MotionSequence& seq) {
    const std::size_t F = seq.frames();
    const double Fd = static_cast<double>(F);
    FeatureVector out{FeatureKind::Geometric, {}};
    out.values.reserve(kGeometricDims);
    for (const auto& [a, b] : kDistancePairs) {
        std::vector<double> d(F);
        double sum = 0.0;
        for (std::size_t f = 0; f < F; ++f) {
            d[f] = (seq.at(f, a) - seq.at(f, b)).norm();
            sum += d[f];
        }
        const double mean = sum / Fd;
        double sq = 0.0;
        for (double v : d) sq += (v - mean) * (v - mean);
        out.values.push_back(mean);
        out.values.push_back(std::sqrt(sq / Fd));
    }
    double ground = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < F; ++f) {
        for (std::size_t j : seq.skeleton().groups.feet) ground = std::min(ground, seq.at(f, j).y());
    }
    for (std::size_t j : kHeightJoints) {
        double sum = 0.0;
        for (std::size_t f = 0; f < F; ++f) sum += seq.at(f, j).y() - ground;
        out.values.push_back(sum / Fd);
    }
    return out;
}

double frechet_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.cols() != b.cols()) fail(ErrorKind::Shape, "feature dimension mismatch");
    if (a.rows() < 2 || b.rows() < 2) fail(ErrorKind::InvalidArgument, "FID needs at least two samples per side");
    const Eigen::VectorXd mu_a = a.colwise().mean();
    const Eigen::VectorXd mu_b = b.colwise().mean();
    const Eigen::MatrixXd cov_a = covariance(a);
    const Eigen::MatrixXd cov_b = covariance(b);

    // tr((S_a S_b)^{1/2}) = tr((S_a^{1/2} S_b S_a^{1/2})^{1/2}), the latter symmetric PSD
    const Eigen::MatrixXd root_a = psd_sqrt(cov_a);
    const Eigen::MatrixXd inner = root_a * cov_b * root_a;
    const Eigen::MatrixXd sym = 0.5 * (inner + inner.transpose());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    const double tr_sqrt = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();

    const double value = (mu_a - mu_b).squaredNorm() + cov_a.trace() + cov_b.trace() - 2.0 * tr_sqrt;
    return std::max(0.0, value);
}

double fid(std::span<const FeatureVector> sample, std::span<const FeatureVector> reference) {
    if (!sample.empty() && !reference.empty() && sample.front().kind != reference.front().kind) {
        fail(ErrorKind::Shape, "FID inputs must be the same feature kind");
    }
    return frechet_distance(stack(sample), stack(reference));
}

double diversity(std::span<const FeatureVector> feats) {
    if (feats.size() < 2) return 0.0;
    const Eigen::MatrixXd m = stack(feats);
    double total = 0.0;
    std::size_t pairs = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < m.rows(); ++j) {
            total += (m.row(i) - m.row(j)).norm();
            ++pairs;
        }
    }
    return total / static_cast<double>(pairs);
}

std::vector<Vec3> normalized_pose_frames(const MotionSequence& seq) {
    double scale = mean_bone_length(seq);
    if (scale < 1e-12) scale = 1.0;
    const std::vector<double> yaw = yaw_series(seq);
    std::vector<Vec3> out(seq.frames() * kNumJoints);
    for (std::size_t f = 0; f < seq.frames(); ++f) {
        const Eigen::Matrix3d r = rotation_y(-yaw[f]);
        const Vec3& pelvis = seq.at(f, joint::Pelvis);
        for (std::size_t j = 0; j < kNumJoints; ++j) {
            out[f * kNumJoints + j] = r * (seq.at(f, j) - pelvis) / scale;
        }
    }
    return out;
}

Eigen::MatrixXd pose_distance_matrix(const MotionSequence& a, const MotionSequence& b) {
    if (a.skeleton().joint_names != b.skeleton().joint_names) {
        fail(ErrorKind::Shape, "sequences use different skeletons");
    }
    const auto pa = normalized_pose_frames(a);
    const auto pb = normalized_pose_frames(b);
    Eigen::MatrixXd d(static_cast<Eigen::Index>(a.frames()), static_cast<Eigen::Index>(b.frames()));
    for (std::size_t i = 0; i < a.frames(); ++i) {
        for (std::size_t k = 0; k < b.frames(); ++k) {
            double sq = 0.0;
            for (std::size_t j = 0; j < kNumJoints; ++j) {
                sq += (pa[i * kNumJoints + j] - pb[k * kNumJoints + j]).squaredNorm();
            }
            d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = std::sqrt(sq);
        }
    }
    return d;
}

double dtw_cost(const MotionSequence& a, const MotionSequence& b) {
    const Eigen::MatrixXd d = pose_distance_matrix(a, b);
    const Eigen::Index n = d.rows(), m = d.cols();
    std::vector<double> prev(static_cast<std::size_t>(m)), cur(static_cast<std::size_t>(m));
    prev[0] = d(0, 0);
    for (Eigen::Index k = 1; k < m; ++k) prev[k] = prev[k - 1] + d(0, k);
    for (Eigen::Index i = 1; i < n; ++i) {
        cur[0] = prev[0] + d(i, 0);
        for (Eigen::Index k = 1; k < m; ++k) {
            cur[k] = d(i, k) + std::min({prev[k], cur[k - 1], prev[k - 1]});
        }
        std::swap(prev, cur);
    }
    return prev[static_cast<std::size_t>(m - 1)];
}

EvalReport evaluate_pairs(std::span<const SequencePair> pairs, std::span<const MotionSequence> reference) {
    EvalReport report;
    report.pairs = pairs.size();
    if (pairs.empty()) return report;
    std::vector<FeatureVector> kin, geo;
    for (const auto& p : pairs) {
        report.pfc += pfc(p.simplified);
        report.pbc += pbc(p.simplified);
        report.dtw_cost += dtw_cost(p.original, p.simplified);
        kin.push_back(kinetic_features(p.simplified));
        geo.push_back(geometric_features(p.simplified));
    }
    const double n = static_cast<double>(pairs.size());
    report.pfc /= n;
    report.pbc /= n;
    report.dtw_cost /= n;
    report.dist_k = diversity(kin);
    report.dist_g = diversity(geo);

    if (!reference.empty()) {
        std::vector<FeatureVector> ref_kin, ref_geo;
        double ref_pbc = 0.0;
        for (const auto& r : reference) {
            ref_kin.push_back(kinetic_features(r));
            ref_geo.push_back(geometric_features(r));
            ref_pbc += pbc(r);
        }
        report.pbc_vs_reference = report.pbc - ref_pbc / static_cast<double>(reference.size());
        if (kin.size() >= 2 && ref_kin.size() >= 2) {
            report.fid_k = fid(kin, ref_kin);
            report.fid_g = fid(geo, ref_geo);
        }
    }
    return report;
}

}  // namespace motionsimp
