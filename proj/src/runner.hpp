#pragma once
#include "config.hpp"

namespace bilap {

// Dispatches a validated config: runs the matching module and writes the
// artifact set plus manifest.txt under cfg.out. Progress goes to stdout;
// artifacts are byte-deterministic. Throws BilapError on failure.
void run_config(const RunConfig& cfg);

}  // namespace bilap
