#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "qws/state.hpp"

namespace qws {

enum class CoinKind { Grover, HadamardTensor, Custom };

// 4x4 unitary on the coin register, row-major: out_r = sum_c m[4r+c] * in_c.
// Row/column order follows coin_index: c = 2j + k.
struct CoinOperator {
    std::array<cdouble, 16> matrix{};
    CoinKind kind = CoinKind::Custom;

    // max entrywise deviation of M M^dagger from the identity
    static double unitarity_defect(const std::array<cdouble, 16>& m) {
        double worst = 0.0;
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                cdouble e{0.0, 0.0};
                for (int t = 0; t < 4; ++t) e += m[4 * r + t] * std::conj(m[4 * c + t]);
                if (r == c) e -= 1.0;
                worst = std::max(worst, std::abs(e));
            }
        }
        return worst;
    }

    // Grover coin 2|d><d| - I with |d> the uniform coin state:
    // diagonal -1/2, off-diagonal +1/2.
    static CoinOperator grover() {
        CoinOperator coin;
        coin.kind = CoinKind::Grover;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) coin.matrix[4 * r + c] = (r == c) ? -0.5 : 0.5;
        return coin;
    }

    // H (x) H: entries (-1)^(j j' + k k') / 2.
    static CoinOperator hadamard_tensor() {
        CoinOperator coin;
        coin.kind = CoinKind::HadamardTensor;
        for (int r = 0; r < 4; ++r) {
            const CoinIndex rc = coin_from_index(r);
            for (int c = 0; c < 4; ++c) {
                const CoinIndex cc = coin_from_index(c);
                const int sign = ((rc.j * cc.j + rc.k * cc.k) & 1) ? -1 : 1;
                coin.matrix[4 * r + c] = 0.5 * sign;
            }
        }
        return coin;
    }

    // Any 4x4 matrix, validated unitary at construction.
    static CoinOperator custom(const std::array<cdouble, 16>& m, double tolerance = 1e-12) {
        const double defect = unitarity_defect(m);
        if (!(defect <= tolerance))
            throw std::invalid_argument("custom coin is not unitary (defect " +
                                        std::to_string(defect) + ")");
        CoinOperator coin;
        coin.matrix = m;
        coin.kind = CoinKind::Custom;
        return coin;
    }
};

namespace detail {

// Grover: out_c = s/2 - in_c with s the coin-vector sum.
inline void coin_grover_inplace(WalkerState& state) {
    cdouble* amp = state.amplitudes.data();
    const std::size_t n = state.geometry.vertex_count();
    for (std::size_t p = 0; p < n; ++p, amp += 4) {
        const cdouble half_sum = 0.5 * (amp[0] + amp[1] + amp[2] + amp[3]);
        amp[0] = half_sum - amp[0];
        amp[1] = half_sum - amp[1];
        amp[2] = half_sum - amp[2];
        amp[3] = half_sum - amp[3];
    }
}

// H (x) H via the 4-point butterfly.
inline void coin_hadamard_inplace(WalkerState& state) {
    cdouble* amp = state.amplitudes.data();
    const std::size_t n = state.geometry.vertex_count();
    for (std::size_t p = 0; p < n; ++p, amp += 4) {
        const cdouble a = amp[0], b = amp[1], c = amp[2], d = amp[3];
        amp[0] = 0.5 * (a + b + c + d);
        amp[1] = 0.5 * (a - b + c - d);
        amp[2] = 0.5 * (a + b - c - d);
        amp[3] = 0.5 * (a - b - c + d);
    }
}

inline void coin_generic_inplace(WalkerState& state, const std::array<cdouble, 16>& m) {
    cdouble* amp = state.amplitudes.data();
    const std::size_t n = state.geometry.vertex_count();
    for (std::size_t p = 0; p < n; ++p, amp += 4) {
        const cdouble a = amp[0], b = amp[1], c = amp[2], d = amp[3];
        amp[0] = m[0] * a + m[1] * b + m[2] * c + m[3] * d;
        amp[1] = m[4] * a + m[5] * b + m[6] * c + m[7] * d;
        amp[2] = m[8] * a + m[9] * b + m[10] * c + m[11] * d;
        amp[3] = m[12] * a + m[13] * b + m[14] * c + m[15] * d;
    }
}

inline void coin_inplace(WalkerState& state, const CoinOperator& coin) {
    switch (coin.kind) {
        case CoinKind::Grover: coin_grover_inplace(state); break;
        case CoinKind::HadamardTensor: coin_hadamard_inplace(state); break;
        case CoinKind::Custom: coin_generic_inplace(state, coin.matrix); break;
    }
}

}  // namespace detail

// (C (x) I): multiply the 4-vector of coin amplitudes at every position.
inline WalkerState apply_coin(WalkerState state, const CoinOperator& coin) {
    detail::coin_inplace(state, coin);
    return state;
}

}  // namespace qws
