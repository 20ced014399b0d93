#pragma once

#include <string>

namespace whitney {

/// Shortest decimal text that round-trips to the same double; `inf` for +infinity.
std::string format_real(double value);

}  // namespace whitney
