#include "motionsimp/savgol.hpp"

#include <algorithm>
#include <string>

#include <Eigen/QR>

#include "motionsimp/errors.hpp"

namespace motionsimp {

void SavgolParams::validate() const {
    if (window % 2 == 0 || window < 3) {
        fail(ErrorKind::InvalidArgument, "SG window must be odd and >= 3, got " + std::to_string(window));
    }
    if (order < 1 || order >= window) {
        fail(ErrorKind::InvalidArgument, "SG order must satisfy 1 <= order < window");
    }
}

SavgolParams SavgolParams::fitted_to(std::size_t n) const {
    SavgolParams p = *this;
    if (static_cast<std::size_t>(p.window) > n) {
        p.window = static_cast<int>(n % 2 == 1 ? n : n - 1);
    }
    if (p.order >= p.window) p.order = p.window - 1;
    return p;
}

SavgolFilter::SavgolFilter(SavgolParams params) : params_(params) {
    params_.validate();
    const int w = params_.window;
    const int half = w / 2;
    const int cols = params_.order + 1;

    Eigen::MatrixXd vander(w, cols);
    for (int i = 0; i < w; ++i) {
        double x = 1.0;
        for (int c = 0; c < cols; ++c) {
            vander(i, c) = x;
            x *= static_cast<double>(i - half);
        }
    }
    // Least-squares coefficient operator: coeffs = pinv * samples.
    const Eigen::MatrixXd pinv =
        vander.colPivHouseholderQr().solve(Eigen::MatrixXd::Identity(w, w));
    weights_ = vander * pinv;
}

std::vector<double> SavgolFilter::apply(std::span<const double> series) const {
    const int w = params_.window;
    const int half = w / 2;
    const auto n = static_cast<int>(series.size());
    if (n < w) {
        fail(ErrorKind::InvalidArgument, "series shorter than SG window");
    }
    std::vector<double> out(series.size());
    for (int t = 0; t < n; ++t) {
        const int start = std::clamp(t - half, 0, n - w);
        const int pos = t - start;
        double acc = 0.0;
        for (int i = 0; i < w; ++i) {
            acc += weights_(pos, i) * series[start + i];
        }
        out[t] = acc;
    }
    return out;
}

}  // namespace motionsimp
