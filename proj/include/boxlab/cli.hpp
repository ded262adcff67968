#pragma once

namespace boxlab {

// Full command-line front end; returns the process exit code.
// 0 success, 1 verification failure, 2 usage or spec error, 3 resolution or
// budget error, 4 construction capacity error.
int run_cli(int argc, char** argv);

}  // namespace boxlab
