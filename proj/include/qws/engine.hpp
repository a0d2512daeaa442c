#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qws/potential.hpp"
#include "qws/walk.hpp"

namespace qws {

// Inclusive step interval for peak extraction.
struct Window {
    int first = 0;
    int last = 0;
};

// Default peak-search window [0, 3 sqrt(N)] = [0, 3L].
inline int default_window_last(const GridGeometry& g) { return 3 * g.side_length; }
inline Window default_window(const GridGeometry& g) { return {0, default_window_last(g)}; }

struct EvolutionConfig {
    GridGeometry geometry;
    WalkModel model;
    PotentialField field;
    int steps = 0;
    Vertex target;
    Window window;
    std::vector<int> snapshot_steps;  // record the position distribution at these t
    bool keep_final_state = false;

    void validate() const {
        if (!same_grid(geometry, model.geometry()) || !same_grid(geometry, field.geometry))
            throw std::invalid_argument("evolution config: model/field/geometry grids differ");
        if (!geometry.contains(target.x, target.y))
            throw std::out_of_range("evolution config: target outside grid");
        if (steps < 0) throw std::invalid_argument("evolution config: negative step count");
        if (window.first < 0 || window.last < window.first || window.last > steps)
            throw std::invalid_argument("evolution config: window must lie within [0, steps]");
        for (int t : snapshot_steps)
            if (t < 0 || t > steps)
                throw std::invalid_argument("evolution config: snapshot step outside run");
    }
};

// Standard experiment setup: given model and field on grid g, evolve over the
// window (steps = window.last), target at the grid center.
inline EvolutionConfig standard_config(const GridGeometry& g, WalkModel model,
                                       PotentialField field, std::optional<Window> window = {}) {
    EvolutionConfig config;
    config.geometry = g;
    config.model = std::move(model);
    config.field = std::move(field);
    config.window = window.value_or(default_window(g));
    config.steps = config.window.last;
    config.target = {g.center(), g.center()};
    return config;
}

struct RunRecord {
    std::vector<double> success_series;  // p_t(target) for t = 0..steps
    int peak_step = 0;
    double peak_probability = 0.0;
    std::vector<PositionDistribution> snapshots;
    std::optional<WalkerState> final_state;
};

// argmax/max over the inclusive window, ties broken toward smaller t.
inline std::pair<int, double> peak_in_window(std::span<const double> series, Window window) {
    if (window.first < 0 || window.last < window.first ||
        static_cast<std::size_t>(window.last) >= series.size())
        throw std::invalid_argument("peak_in_window: window outside series");
    int arg = window.first;
    double best = series[window.first];
    for (int t = window.first + 1; t <= window.last; ++t)
        if (series[t] > best) {
            best = series[t];
            arg = t;
        }
    return {arg, best};
}

namespace detail {

// One evolution step, coin -> shift -> phase, ping-ponging through the
// caller's scratch buffer.
inline void step_buffers(WalkerState& state, WalkerState& scratch, const WalkModel& model,
                         const PotentialField& field) {
    coin_inplace(state, model.coin);
    shift_into(state, model.shift, scratch);
    std::swap(state.amplitudes, scratch.amplitudes);
    phase_inplace(state, field);
}

}  // namespace detail

// One full evolution step U = e^{i f} S (C (x) I): coin, then shift, then
// the diagonal phase.
inline WalkerState step(WalkerState state, const WalkModel& model, const PotentialField& field) {
    if (!same_grid(state.geometry, model.geometry()) ||
        !same_grid(state.geometry, field.geometry))
        throw std::invalid_argument("step: mismatched grid geometries");
    WalkerState scratch(state.geometry);
    detail::step_buffers(state, scratch, model, field);
    return state;
}

inline WalkerState step(WalkerState state, const EvolutionConfig& config) {
    return step(std::move(state), config.model, config.field);
}

// Evolve from the uniform state, recording p_t(target) at every step
// (t = 0 included) and the peak over the configured window.
inline RunRecord run(const EvolutionConfig& config) {
    config.validate();
    RunRecord record;
    record.success_series.reserve(config.steps + 1);

    WalkerState state = uniform_state(config.geometry);
    WalkerState scratch(config.geometry);

    auto snapshot_requested = [&](int t) {
        return std::find(config.snapshot_steps.begin(), config.snapshot_steps.end(), t) !=
               config.snapshot_steps.end();
    };

    record.success_series.push_back(success_probability(state, config.target));
    if (snapshot_requested(0)) record.snapshots.push_back(position_distribution(state, 0));

    for (int t = 1; t <= config.steps; ++t) {
        detail::step_buffers(state, scratch, config.model, config.field);
        record.success_series.push_back(success_probability(state, config.target));
        if (snapshot_requested(t)) record.snapshots.push_back(position_distribution(state, t));
    }

    const auto [arg, best] = peak_in_window(record.success_series, config.window);
    record.peak_step = arg;
    record.peak_probability = best;
    if (config.keep_final_state) record.final_state = std::move(state);
    return record;
}

}  // namespace qws
