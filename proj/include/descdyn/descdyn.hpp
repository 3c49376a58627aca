#pragma once

// Descriptive-proximity analysis of discrete dynamical systems: exact circle
// and torus maps, probe-based nearness, transitivity and sensitivity checks,
// conjugacy transport, and cat-map image shuffling.

#include "angle.hpp"
#include "basis.hpp"
#include "config.hpp"
#include "conjugacy.hpp"
#include "experiments.hpp"
#include "feature.hpp"
#include "image.hpp"
#include "orbit.hpp"
#include "probe.hpp"
#include "proximity.hpp"
#include "rational.hpp"
#include "sensitivity.hpp"
#include "systems.hpp"
#include "transitivity.hpp"
