#pragma once

#include <string>

namespace stgp {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_real(double v);

}  // namespace stgp
