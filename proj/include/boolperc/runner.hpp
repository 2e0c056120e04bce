#pragma once

#include "boolperc/config.hpp"

namespace boolperc {

// Executes the configured experiment: writes manifest.json, one CSV per
// estimator invocation, summary.json with the agreement flags, a plot.svg for
// grid experiments, and timing.txt. Everything except timing.txt is
// byte-identical across reruns and worker counts.
void run_experiment(const ExperimentConfig& cfg);

} // namespace boolperc
