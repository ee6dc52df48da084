#pragma once

#include "geoplace/types.hpp"
#include "geoplace/validate.hpp"
#include "geoplace/latency.hpp"
#include "geoplace/feasibility.hpp"
#include "geoplace/cost.hpp"
#include "geoplace/allocator.hpp"
#include "geoplace/metrics.hpp"
#include "geoplace/default_scenario.hpp"
#include "geoplace/sweep.hpp"
#include "geoplace/scenario_io.hpp"
#include "geoplace/spec_io.hpp"
#include "geoplace/results.hpp"
#include "geoplace/oracle_check.hpp"
