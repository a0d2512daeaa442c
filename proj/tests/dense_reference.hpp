#pragma once

// Dense-matrix reference for small grids. Operators are rebuilt here from
// their defining formulas (coin matrix from the reflection/tensor forms, the
// shift from the basis-map rule, the phase from the field values) and applied
// by explicit matrix-vector products, independent of the library kernels.

#include <array>
#include <complex>
#include <random>
#include <vector>

#include "qws/qws.hpp"

namespace qws::testref {

using Matrix = std::vector<std::vector<cdouble>>;

inline Matrix zeros(std::size_t n) { return Matrix(n, std::vector<cdouble>(n)); }

inline std::vector<cdouble> matvec(const Matrix& m, const std::vector<cdouble>& v) {
    std::vector<cdouble> out(m.size());
    for (std::size_t r = 0; r < m.size(); ++r) {
        cdouble acc{0.0, 0.0};
        for (std::size_t c = 0; c < v.size(); ++c) acc += m[r][c] * v[c];
        out[r] = acc;
    }
    return out;
}

// 2|d><d| - I with |d> = (1,1,1,1)/2, via the outer product
inline std::array<cdouble, 16> grover_coin_matrix() {
    std::array<cdouble, 16> m{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m[4 * r + c] = 2.0 * 0.5 * 0.5 - (r == c ? 1.0 : 0.0);
    return m;
}

// Kronecker product of two 2x2 Hadamards, coin order c = 2j + k
inline std::array<cdouble, 16> hadamard_tensor_matrix() {
    const double h = 1.0 / std::sqrt(2.0);
    const double H[2][2] = {{h, h}, {h, -h}};
    std::array<cdouble, 16> m{};
    for (int j1 = 0; j1 < 2; ++j1)
        for (int k1 = 0; k1 < 2; ++k1)
            for (int j2 = 0; j2 < 2; ++j2)
                for (int k2 = 0; k2 < 2; ++k2)
                    m[4 * (2 * j1 + k1) + (2 * j2 + k2)] = H[j1][j2] * H[k1][k2];
    return m;
}

inline Matrix coin_tensor_identity(const GridGeometry& g, const std::array<cdouble, 16>& coin) {
    Matrix m = zeros(g.dimension());
    const int L = g.side_length;
    for (int y = 0; y < L; ++y)
        for (int x = 0; x < L; ++x)
            for (int rc = 0; rc < 4; ++rc)
                for (int cc = 0; cc < 4; ++cc) {
                    const CoinIndex r = coin_from_index(rc);
                    const CoinIndex c = coin_from_index(cc);
                    m[amplitude_index(g, r.j, r.k, x, y)][amplitude_index(g, c.j, c.k, x, y)] =
                        coin[4 * rc + cc];
                }
    return m;
}

// S|j,k>|x,y> = |j,1-k>|x + j(-1)^k mod L, y + (1-j)(-1)^k mod L>
inline Matrix flip_flop_matrix(const GridGeometry& g) {
    Matrix m = zeros(g.dimension());
    const int L = g.side_length;
    for (int y = 0; y < L; ++y)
        for (int x = 0; x < L; ++x)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) {
                    const int sign = (k == 0) ? 1 : -1;
                    const int nx = (x + j * sign + L) % L;
                    const int ny = (y + (1 - j) * sign + L) % L;
                    m[amplitude_index(g, j, 1 - k, nx, ny)][amplitude_index(g, j, k, x, y)] = 1.0;
                }
    return m;
}

// direction-preserving interior move; bounce with coin flip at the walls
inline Matrix standard_reflective_matrix(const GridGeometry& g) {
    Matrix m = zeros(g.dimension());
    const int L = g.side_length;
    for (int y = 0; y < L; ++y)
        for (int x = 0; x < L; ++x)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) {
                    const int sign = (k == 0) ? 1 : -1;
                    const int nx = x + j * sign;
                    const int ny = y + (1 - j) * sign;
                    const std::size_t col = amplitude_index(g, j, k, x, y);
                    if (nx >= 0 && nx < L && ny >= 0 && ny < L)
                        m[amplitude_index(g, j, k, nx, ny)][col] = 1.0;
                    else
                        m[amplitude_index(g, j, 1 - k, x, y)][col] = 1.0;
                }
    return m;
}

inline Matrix phase_diagonal(const PotentialField& field) {
    const GridGeometry& g = field.geometry;
    Matrix m = zeros(g.dimension());
    for (int y = 0; y < g.side_length; ++y)
        for (int x = 0; x < g.side_length; ++x)
            for (int c = 0; c < 4; ++c) {
                const CoinIndex ci = coin_from_index(c);
                const std::size_t i = amplitude_index(g, ci.j, ci.k, x, y);
                m[i][i] = std::exp(cdouble{0.0, field.value_at(x, y)});
            }
    return m;
}

inline std::vector<cdouble> random_unit_vector(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cdouble> v(n);
    double ss = 0.0;
    for (auto& a : v) {
        a = cdouble{gauss(rng), gauss(rng)};
        ss += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(ss);
    for (auto& a : v) a *= scale;
    return v;
}

inline WalkerState random_unit_state(const GridGeometry& g, unsigned seed) {
    WalkerState state(g);
    state.amplitudes = random_unit_vector(g.dimension(), seed);
    return state;
}

}  // namespace qws::testref
