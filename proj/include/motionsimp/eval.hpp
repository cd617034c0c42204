#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "motionsimp/motion.hpp"

namespace motionsimp {

enum class FeatureKind { Kinetic, Geometric };

inline constexpr std::size_t kKineticDims = 48;
inline constexpr std::size_t kGeometricDims = 33;

struct FeatureVector {
    FeatureKind kind = FeatureKind::Kinetic;
    std::vector<double> values;
};

/// Feature-set version; FID and diversity are comparable only within one tag.
inline constexpr const char* kFeatureVersion = "features-v1";

/// Foot sliding during contact: 100 x mean over frames of the contact-gated
/// foot-joint speed averaged over the four contact joints.
double pfc(const MotionSequence& seq);

/// Whole-body support plausibility: mean over frames of the mean joint
/// acceleration magnitude on supported frames, and of |a_com - g| on
/// unsupported frames, g = (0, -9.81, 0).
double pbc(const MotionSequence& seq);

/// Per-joint mean speed (24) then per-joint mean acceleration magnitude (24).
FeatureVector kinetic_features(const MotionSequence& seq);

/// Mean and std of 11 joint-pair distances (22), then mean height above the
/// lowest foot sample of 11 joints (11).
FeatureVector geometric_features(const MotionSequence& seq);

/// Frechet distance between Gaussian fits of two sample sets (rows = samples).
double frechet_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

double fid(std::span<const FeatureVector> sample, std::span<const FeatureVector> reference);

/// Mean pairwise Euclidean distance over all unordered pairs.
double diversity(std::span<const FeatureVector> feats);

/// Frames centred on the pelvis, rotated to face +Z and divided by the mean
/// bone length of the sequence.
std::vector<Vec3> normalized_pose_frames(const MotionSequence& seq);

/// L2 distance between frame i of a and frame j of b over all stacked joints.
Eigen::MatrixXd pose_distance_matrix(const MotionSequence& a, const MotionSequence& b);

/// Full quadratic DTW (steps (1,0), (0,1), (1,1)) over normalised pose distance.
double dtw_cost(const MotionSequence& a, const MotionSequence& b);

struct EvalReport {
    double pfc = 0.0;
    double pbc = 0.0;
    std::optional<double> pbc_vs_reference;  // pbc minus reference corpus mean
    std::optional<double> fid_k;
    std::optional<double> fid_g;
    double dist_k = 0.0;
    double dist_g = 0.0;
    double dtw_cost = 0.0;
    std::size_t pairs = 0;
    std::string version = kFeatureVersion;
};

struct SequencePair {
    MotionSequence original;
    MotionSequence simplified;
};

/// Batch report over (original, simplified) pairs. PFC, PBC and DTW are means
/// over pairs; FID needs a reference corpus and at least two samples a side.
EvalReport evaluate_pairs(std::span<const SequencePair> pairs, std::span<const MotionSequence> reference = {});

}  // namespace motionsimp
