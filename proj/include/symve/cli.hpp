#pragma once

namespace symve::cli {

// Command dispatch for the `symve` binary. Exit codes: 0 success,
// 1 usage error, 2 validation error, 3 resource-limit error.
int run(int argc, const char* const* argv);

}  // namespace symve::cli
