#pragma once

// Umbrella header: latency model, share allocator, split planner, round
// simulator, randomized scenarios, file formats and sweep harness.

#include "splitplan/allocator.hpp"
#include "splitplan/errors.hpp"
#include "splitplan/io.hpp"
#include "splitplan/latency.hpp"
#include "splitplan/parallel.hpp"
#include "splitplan/planner.hpp"
#include "splitplan/profile.hpp"
#include "splitplan/resnet18.hpp"
#include "splitplan/scenario.hpp"
#include "splitplan/simulator.hpp"
#include "splitplan/sweeps.hpp"
