#pragma once

#include <string>

namespace radrobust {

// Shortest decimal text that round-trips to the same double. Locale independent, so files written
// with it are byte-stable across runs.
std::string format_real(double value);

} // namespace radrobust
