#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "motionsimp/kinematics.hpp"
#include "motionsimp/motion.hpp"
#include "motionsimp/savgol.hpp"

namespace motionsimp {

inline constexpr std::size_t kNumCriteria = 5;

/// Fixed coefficients of the five complexity scores.
struct MetricWeights {
    struct {
        double alpha1 = 1.5;   // foot-speed entropy
        double alpha2 = 0.05;  // horizontal foot range
        double alpha3 = 15.0;  // contact transition rate
    } c1;
    struct {
        double beta = 0.005;  // median smoothed acceleration
    } c2;
    struct {
        double gamma1 = 0.3;  // total turn
        double gamma2 = 1.0;  // angular speed
        double gamma3 = 0.5;  // angular acceleration
    } c3;
    struct {
        double delta = 0.01;  // m/s activity gate
    } c4;
    struct {
        double lambda = 0.5;  // one-sided penalty
        double delta = 0.01;
        double epsilon = 1e-6;
    } c5;
    int entropy_bins = 10;
    SavgolParams smoothing{};

    void validate() const;
};

struct ContactThresholds {
    double speed = 0.15;   // m/s
    double height = 0.05;  // m above the lowest foot sample
};

/// Score plus its frame-local integrand m_i[f].
struct CriterionResult {
    double score = 0.0;
    std::vector<double> activation;
};

struct ComplexityProfile {
    std::array<double, kNumCriteria> scores{};
    std::array<std::vector<double>, kNumCriteria> activations;
    MetricWeights weights_used;

    double score(int criterion) const { return scores.at(static_cast<std::size_t>(criterion - 1)); }
    const std::vector<double>& activation(int criterion) const {
        return activations.at(static_cast<std::size_t>(criterion - 1));
    }
};

ContactTrack estimate_contacts(const MotionSequence& seq, ContactThresholds thresholds = {});

/// The sequence's own contacts, or estimated ones when it has none.
ContactTrack contacts_or_estimate(const MotionSequence& seq);

/// Shannon entropy (nats) of a `bins`-bin histogram spanning [min, max].
double entropy(std::span<const double> values, int bins);

/// Linear-interpolated percentile, q in [0, 100].
double percentile(std::vector<double> values, double q);

double median(std::vector<double> values);

CriterionResult evaluate_c1(const MotionSequence& seq, const DerivativeSet& deriv, const MetricWeights& w);
CriterionResult evaluate_c2(const MotionSequence& seq, const DerivativeSet& deriv, const MetricWeights& w);
CriterionResult evaluate_c3(const MotionSequence& seq, const MetricWeights& w);
CriterionResult evaluate_c4(const MotionSequence& seq, const DerivativeSet& deriv, const MetricWeights& w);
CriterionResult evaluate_c5(const MotionSequence& seq, const DerivativeSet& deriv, const MetricWeights& w);

double compute_c1(const MotionSequence& seq, const DerivativeSet& deriv, const MetricWeights& w);
double compute_c2(const MotionSequence& seq, const DerivativeSet& deriv, const MetricWeights& w);
double compute_c3(const MotionSequence& seq, const MetricWeights& w);
double compute_c4(const MotionSequence& seq, const DerivativeSet& deriv, const MetricWeights& w);
double compute_c5(const MotionSequence& seq, const DerivativeSet& deriv, const MetricWeights& w);

ComplexityProfile compute_profile(const MotionSequence& seq, const MetricWeights& w = {});

}  // namespace motionsimp
