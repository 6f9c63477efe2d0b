#pragma once

namespace vekua::cli {

// Entry point behind the `vekua` binary. Exit codes: 0 success, 1 bad
// arguments / config / input files, 2 runtime failure.
int run(int argc, const char* const* argv);

} // namespace vekua::cli
