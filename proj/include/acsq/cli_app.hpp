#pragma once

// Entry point of the command-line front end; returns the process exit code:
// 0 success, 2 configuration error, 3 numeric failure, 4 when --strict
// escalates convergence warnings.

namespace acsq {

int run_cli(int argc, char** argv);

}  // namespace acsq
