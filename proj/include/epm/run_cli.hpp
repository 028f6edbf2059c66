#pragma once

#include "epm/run_config.hpp"

namespace epm {

// Executes one configured run and writes its artifact set under cfg.out_dir.
// Exit codes: 0 success, 2 configuration error, 3 instability, 4 I/O error.
int run_experiment(RunConfig cfg);

}  // namespace epm
