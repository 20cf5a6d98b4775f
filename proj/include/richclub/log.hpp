#pragma once

#include <functional>
#include <string>

namespace richclub {

using WarningSink = std::function<void(const std::string&)>;

/// Replaces the warning sink (stderr by default); pass an empty function to
/// silence warnings. Returns the previous sink.
WarningSink set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace richclub
