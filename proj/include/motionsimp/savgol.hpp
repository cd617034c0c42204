#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace motionsimp {

struct SavgolParams {
    int window = 9;
    int order = 3;

    /// Throws MotionError(InvalidArgument) unless window is odd and window > order >= 1.
    void validate() const;

    /// Largest usable parameters for a series of length n: the window shrinks to
    /// the largest odd value <= n and the order to window - 1 when needed. A
    /// window below 3 means "no filtering".
    SavgolParams fitted_to(std::size_t n) const;
};

/// Savitzky-Golay smoother with polynomial-fit edges: frames within half a
/// window of either end are evaluated from the fit over the first or last
/// full window, so polynomials up to `order` are reproduced everywhere.
class SavgolFilter {
public:
    explicit SavgolFilter(SavgolParams params);

    const SavgolParams& params() const { return params_; }

    /// Requires series.size() >= window.
    std::vector<double> apply(std::span<const double> series) const;

    /// Weight row that evaluates the window fit at window position `pos`.
    Eigen::RowVectorXd weights_at(int pos) const { return weights_.row(pos); }

private:
    SavgolParams params_;
    Eigen::MatrixXd weights_;  // window x window
};

}  // namespace motionsimp
