#pragma once

// Umbrella header for the benchmark-redundancy analysis library.

#include "redbench/cross_benchmark.hpp"
#include "redbench/errors.hpp"
#include "redbench/instance_redundancy.hpp"
#include "redbench/metrics.hpp"
#include "redbench/parallel.hpp"
#include "redbench/records.hpp"
#include "redbench/redundancy_matrix.hpp"
#include "redbench/report.hpp"
#include "redbench/rng.hpp"
#include "redbench/score_matrix.hpp"
#include "redbench/svg.hpp"
#include "redbench/synth.hpp"
