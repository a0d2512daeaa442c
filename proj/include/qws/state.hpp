#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qws/geometry.hpp"

namespace qws {

using cdouble = std::complex<double>;

// Walker state on the grid: 4*L^2 amplitudes psi_{j,k;x,y}.
struct WalkerState {
    GridGeometry geometry;
    std::vector<cdouble> amplitudes;

    WalkerState() = default;
    explicit WalkerState(const GridGeometry& g) : geometry(g), amplitudes(g.dimension()) {}

    cdouble& at(int j, int k, int x, int y) {
        return amplitudes[amplitude_index(geometry, j, k, x, y)];
    }
    const cdouble& at(int j, int k, int x, int y) const {
        return amplitudes[amplitude_index(geometry, j, k, x, y)];
    }
};

// Uniform superposition over all coin and position basis states: the
// starting state of every run. Each amplitude is 1/sqrt(4 L^2).
inline WalkerState uniform_state(const GridGeometry& geometry) {
    WalkerState state(geometry);
    const double a = 1.0 / std::sqrt(static_cast<double>(state.amplitudes.size()));
    for (auto& amp : state.amplitudes) amp = a;
    return state;
}

inline WalkerState basis_state(const GridGeometry& geometry, int j, int k, int x, int y) {
    if ((j & ~1) || (k & ~1)) throw std::invalid_argument("coin indices must be 0 or 1");
    if (!geometry.contains(x, y)) throw std::out_of_range("basis position outside grid");
    WalkerState state(geometry);
    state.at(j, k, x, y) = cdouble{1.0, 0.0};
    return state;
}

inline double norm_squared(const WalkerState& state) {
    double sum = 0.0;
    for (const auto& amp : state.amplitudes) sum += std::norm(amp);
    return sum;
}

inline double norm(const WalkerState& state) { return std::sqrt(norm_squared(state)); }

// Hermitian inner product <a|b> = sum conj(a_i) b_i.
inline cdouble inner_product(const WalkerState& a, const WalkerState& b) {
    if (!same_grid(a.geometry, b.geometry))
        throw std::invalid_argument("inner_product: mismatched grid geometries");
    cdouble sum{0.0, 0.0};
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
        sum += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    return sum;
}

// p_t(x,y) per the Born rule: the coin register is traced out by summing
// the four squared amplitude moduli at each position.
struct PositionDistribution {
    int side_length = 0;
    std::vector<double> probabilities;
    int time_step = 0;

    double at(int x, int y) const {
        return probabilities[static_cast<std::size_t>(y) * side_length + x];
    }
};

inline PositionDistribution position_distribution(const WalkerState& state, int time_step = 0) {
    PositionDistribution dist;
    dist.side_length = state.geometry.side_length;
    dist.time_step = time_step;
    dist.probabilities.resize(state.geometry.vertex_count());
    const cdouble* amp = state.amplitudes.data();
    for (double& p : dist.probabilities) {
        p = std::norm(amp[0]) + std::norm(amp[1]) + std::norm(amp[2]) + std::norm(amp[3]);
        amp += 4;
    }
    return dist;
}

// Probability of finding the walker at `target` if measured now.
inline double success_probability(const WalkerState& state, Vertex target) {
    if (!state.geometry.contains(target.x, target.y))
        throw std::out_of_range("success_probability: target outside grid");
    const cdouble* amp =
        state.amplitudes.data() + 4 * position_index(state.geometry, target.x, target.y);
    return std::norm(amp[0]) + std::norm(amp[1]) + std::norm(amp[2]) + std::norm(amp[3]);
}

}  // namespace qws
