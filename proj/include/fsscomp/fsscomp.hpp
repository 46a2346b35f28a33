#pragma once

// Convenience umbrella header for the whole library.

#include "analytic.hpp"
#include "cascade.hpp"
#include "compensation.hpp"
#include "config.hpp"
#include "core_state.hpp"
#include "eom.hpp"
#include "experiments.hpp"
#include "metrics.hpp"
#include "montecarlo.hpp"
