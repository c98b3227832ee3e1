#pragma once

namespace pdmdirac {

/// Full command-line front end; returns the process exit code.
/// 0 = success, 2 = config/schema violation, 3 = numerical failure.
int run_cli(int argc, const char* const* argv);

}  // namespace pdmdirac
