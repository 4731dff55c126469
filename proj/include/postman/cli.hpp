#pragma once

namespace postman {

// Command-line entry point (also linked by the CLI test binary).
// Exit codes: 0 success, 1 instance/solver errors, 2 usage errors.
int cli_main(int argc, const char* const* argv);

}  // namespace postman
