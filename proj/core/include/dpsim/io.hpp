#pragma once

#include <string>

namespace dpsim {

// Shortest decimal representation that parses back to exactly the same
// double (round-trip formatting).
std::string format_double(double v);

}  // namespace dpsim
