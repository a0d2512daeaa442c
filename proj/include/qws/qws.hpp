#pragma once

// Discrete-time quantum walk spatial search on 2D grids under phase
// potentials: states, operators, potential fields, the evolution engine,
// and the sweep/threshold experiment harness.

#include "qws/coin.hpp"
#include "qws/engine.hpp"
#include "qws/experiments.hpp"
#include "qws/format.hpp"
#include "qws/geometry.hpp"
#include "qws/io.hpp"
#include "qws/parallel.hpp"
#include "qws/potential.hpp"
#include "qws/power_law.hpp"
#include "qws/shift.hpp"
#include "qws/state.hpp"
#include "qws/walk.hpp"
