#pragma once

#include "qzip/config.hpp"
#include "qzip/report.hpp"

namespace qzip {

// End-to-end run for one configuration: sample signal blocks in the working
// basis frame, condense with the LZ codec, locate and cut the blank region,
// decode what was kept, and account rate and recovery.
Report run_pipeline(const ExperimentConfig& config);

Report run_rate_mode(const ExperimentConfig& config);
Report run_lz_curve_mode(const ExperimentConfig& config);
Report run_theorem1_mode(const ExperimentConfig& config);
Report run_truncate_sim_mode(const ExperimentConfig& config);
Report run_search_mode(const ExperimentConfig& config);

// Dispatch on config.mode; validates first.
Report run_experiment(const ExperimentConfig& config);

}  // namespace qzip
