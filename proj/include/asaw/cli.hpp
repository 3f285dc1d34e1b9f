#pragma once

namespace asaw::cli {

// Exit codes: 0 success, 1 check failure (e.g. walk-sum mismatch),
// 2 usage/config error, 3 numerical or I/O failure.
int run(int argc, const char* const* argv);

} // namespace asaw::cli
