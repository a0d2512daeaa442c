#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qws {

enum class Boundary { Periodic, Reflective };

// L x L grid, N = L^2 vertices. Positions x,y in [0, L).
struct GridGeometry {
    int side_length = 2;
    Boundary boundary = Boundary::Periodic;

    GridGeometry() = default;
    explicit GridGeometry(int side, Boundary b = Boundary::Periodic)
        : side_length(side), boundary(b) {
        if (side < 2)
            throw std::invalid_argument("grid side length must be at least 2, got " +
                                        std::to_string(side));
    }

    int side() const { return side_length; }
    std::size_t vertex_count() const {
        return static_cast<std::size_t>(side_length) * side_length;
    }
    std::size_t dimension() const { return 4 * vertex_count(); }
    bool contains(int x, int y) const {
        return x >= 0 && x < side_length && y >= 0 && y < side_length;
    }
    // default marked/target vertex and Gaussian mean: the grid center (L/2, L/2)
    int center() const { return side_length / 2; }
};

// Operations only require matching grid sizes; boundary is carried metadata.
inline bool same_grid(const GridGeometry& a, const GridGeometry& b) {
    return a.side_length == b.side_length;
}

struct Vertex {
    int x = 0;
    int y = 0;
};

inline bool operator==(const Vertex& a, const Vertex& b) { return a.x == b.x && a.y == b.y; }

// Coin basis |j,k>: j selects the axis (j=1 -> x, j=0 -> y), k the sign via (-1)^k.
struct CoinIndex {
    int j = 0;
    int k = 0;
};

inline int coin_index(int j, int k) { return 2 * j + k; }
inline CoinIndex coin_from_index(int c) { return {(c >> 1) & 1, c & 1}; }

// Amplitude layout: position-major, coin-minor, so the coin pass touches
// contiguous 4-vectors and the shift pass is a strided permutation.
inline std::size_t position_index(const GridGeometry& g, int x, int y) {
    return static_cast<std::size_t>(y) * g.side_length + x;
}

inline std::size_t amplitude_index(const GridGeometry& g, int j, int k, int x, int y) {
    return 4 * position_index(g, x, y) + coin_index(j, k);
}

struct BasisState {
    int j = 0;
    int k = 0;
    int x = 0;
    int y = 0;
};

inline bool operator==(const BasisState& a, const BasisState& b) {
    return a.j == b.j && a.k == b.k && a.x == b.x && a.y == b.y;
}

inline BasisState decode_amplitude_index(const GridGeometry& g, std::size_t index) {
    const int c = static_cast<int>(index & 3);
    const std::size_t p = index >> 2;
    const CoinIndex ci = coin_from_index(c);
    return {ci.j, ci.k, static_cast<int>(p % g.side_length), static_cast<int>(p / g.side_length)};
}

}  // namespace qws
