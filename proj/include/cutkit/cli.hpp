#pragma once

#include <ostream>

namespace cutkit {

// Full command-line driver; the cutkit binary is a thin wrapper around this.
// Streams are injectable so the commands can be driven in-process by tests.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cutkit
