#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qws/state.hpp"

namespace qws {

enum class ShiftKind { FlipFlopPeriodic, StandardReflective };

// Shift operator S as a permutation of the 4 L^2 basis states, applied as a
// precomputed gather: out[i] = in[source[i]].
struct ShiftRule {
    ShiftKind kind = ShiftKind::FlipFlopPeriodic;
    GridGeometry geometry;
    std::vector<std::uint32_t> source;

    // The basis map. Flip-flop: |j,k>|x,y> -> |j,1-k>|x + j(-1)^k, y + (1-j)(-1)^k>
    // with positions wrapped mod L. Standard/reflective: same displacement with
    // the coin kept, except a move that would exit the grid bounces: the
    // direction bit flips and the position is held.
    BasisState map_basis(int j, int k, int x, int y) const {
        const int step = (k == 0) ? 1 : -1;
        const int dx = (j == 1) ? step : 0;
        const int dy = (j == 0) ? step : 0;
        if (kind == ShiftKind::FlipFlopPeriodic) {
            const int L = geometry.side_length;
            return {j, 1 - k, (x + dx + L) % L, (y + dy + L) % L};
        }
        const int tx = x + dx;
        const int ty = y + dy;
        if (geometry.contains(tx, ty)) return {j, k, tx, ty};
        return {j, 1 - k, x, y};
    }

    static ShiftRule flip_flop_periodic(const GridGeometry& g) {
        return build(ShiftKind::FlipFlopPeriodic, g);
    }
    static ShiftRule standard_reflective(const GridGeometry& g) {
        return build(ShiftKind::StandardReflective, g);
    }

private:
    static ShiftRule build(ShiftKind kind, const GridGeometry& g) {
        ShiftRule rule;
        rule.kind = kind;
        rule.geometry = g;
        rule.source.resize(g.dimension());
        const int L = g.side_length;
        for (int y = 0; y < L; ++y)
            for (int x = 0; x < L; ++x)
                for (int c = 0; c < 4; ++c) {
                    const CoinIndex ci = coin_from_index(c);
                    const BasisState to = rule.map_basis(ci.j, ci.k, x, y);
                    rule.source[amplitude_index(g, to.j, to.k, to.x, to.y)] =
                        static_cast<std::uint32_t>(amplitude_index(g, ci.j, ci.k, x, y));
                }
        return rule;
    }
};

namespace detail {

inline void shift_into(const WalkerState& src, const ShiftRule& shift, WalkerState& dst) {
    const std::size_t n = src.amplitudes.size();
    const cdouble* in = src.amplitudes.data();
    cdouble* out = dst.amplitudes.data();
    const std::uint32_t* from = shift.source.data();
    for (std::size_t i = 0; i < n; ++i) out[i] = in[from[i]];
}

}  // namespace detail

inline WalkerState apply_shift(const WalkerState& state, const ShiftRule& shift) {
    if (!same_grid(state.geometry, shift.geometry))
        throw std::invalid_argument("apply_shift: mismatched grid geometries");
    WalkerState result(state.geometry);
    detail::shift_into(state, shift, result);
    return result;
}

}  // namespace qws
