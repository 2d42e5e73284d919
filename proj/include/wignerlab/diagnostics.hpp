#pragma once

#include <functional>
#include <string>

namespace wignerlab {

using WarningSink = std::function<void(const std::string&)>;

// Non-fatal diagnostics (edge amplitude, truncated Moyal series, figure
// caption conditions). The default sink prints to stderr.
void warn(const std::string& message);

// Returns the previous sink. Passing an empty function restores the default.
WarningSink set_warning_sink(WarningSink sink);

}  // namespace wignerlab
