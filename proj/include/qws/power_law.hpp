#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qws {

// sigma* = prefactor * N^exponent, fitted by ordinary least squares on
// (log N, log sigma*). Residual is the RMS in log space.
struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double rms_residual = 0.0;
};

inline PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3)
        throw std::invalid_argument("fit_power_law: need at least 3 points");
    const double n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [N, sigma] : points) {
        if (!(N > 0.0) || !(sigma > 0.0))
            throw std::invalid_argument("fit_power_law: points must be positive");
        sx += std::log(N);
        sy += std::log(sigma);
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [N, sigma] : points) {
        const double dx = std::log(N) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(sigma) - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_power_law: all N equal");

    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    const double intercept = my - fit.exponent * mx;
    fit.prefactor = std::exp(intercept);
    double ss = 0.0;
    for (const auto& [N, sigma] : points) {
        const double r = std::log(sigma) - (intercept + fit.exponent * std::log(N));
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace qws
