#pragma once

#include <iosfwd>

namespace lowtw::cli {

inline constexpr const char* kSchema = "lowtw-cli/1";

enum Exit : int {
    kOk = 0,
    kValidation = 1,  // input parsed but failed a check, or a verdict failed
    kUsage = 2,
    kParse = 3,
    kModule = 4,  // error raised by a library operation
};

// JSON goes to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lowtw::cli
