#pragma once

#include "qws/coin.hpp"
#include "qws/shift.hpp"

namespace qws {

enum class ModelLabel { Custom = 0, Model1 = 1, Model2 = 2 };

// A coin/shift pairing. Model 1 is the AKR configuration (Grover coin,
// flip-flop shift, periodic boundaries); Model 2 uses the Hadamard coin with
// the standard shift and reflective boundaries.
struct WalkModel {
    CoinOperator coin;
    ShiftRule shift;
    ModelLabel label = ModelLabel::Custom;

    static WalkModel model1(GridGeometry g) {
        g.boundary = Boundary::Periodic;
        return {CoinOperator::grover(), ShiftRule::flip_flop_periodic(g), ModelLabel::Model1};
    }

    static WalkModel model2(GridGeometry g) {
        g.boundary = Boundary::Reflective;
        return {CoinOperator::hadamard_tensor(), ShiftRule::standard_reflective(g),
                ModelLabel::Model2};
    }

    static WalkModel custom(CoinOperator coin, ShiftRule shift) {
        return {std::move(coin), std::move(shift), ModelLabel::Custom};
    }

    const GridGeometry& geometry() const { return shift.geometry; }
};

inline WalkModel make_model(ModelLabel label, const GridGeometry& g) {
    switch (label) {
        case ModelLabel::Model1: return WalkModel::model1(g);
        case ModelLabel::Model2: return WalkModel::model2(g);
        default: throw std::invalid_argument("make_model: custom models need explicit operators");
    }
}

// One walk substep U = S (C (x) I), no potential applied.
inline WalkerState walk_substep(WalkerState state, const WalkModel& model) {
    detail::coin_inplace(state, model.coin);
    return apply_shift(state, model.shift);
}

}  // namespace qws
