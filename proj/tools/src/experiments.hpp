#pragma once

#include "run_config.hpp"

namespace qtool {

// numerical failure that should map to the dedicated exit code: the run was
// configured correctly but the computation did not reach its contract
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// dispatches on cfg.experiment and writes the experiment's output files
void run_experiment(const RunConfig& cfg);

} // namespace qtool
