#pragma once

// Umbrella header: the modular DE/PSO engines, the seeded benchmark
// suite, and the parallel experiment harness.

#include "evobench/common.hpp"
#include "evobench/core/population.hpp"
#include "evobench/core/rng.hpp"
#include "evobench/core/state.hpp"
#include "evobench/de/builder.hpp"
#include "evobench/de/engine.hpp"
#include "evobench/experiment/observer.hpp"
#include "evobench/experiment/parameter_record.hpp"
#include "evobench/experiment/recorder.hpp"
#include "evobench/experiment/runner.hpp"
#include "evobench/hybrid/psode.hpp"
#include "evobench/hybrid/restart.hpp"
#include "evobench/presets.hpp"
#include "evobench/problems/batch.hpp"
#include "evobench/problems/suite.hpp"
#include "evobench/pso/cso.hpp"
#include "evobench/pso/engine.hpp"
