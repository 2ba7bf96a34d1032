#pragma once

#include <string>

namespace wlab {

/// printf-style "%.<digits>g"; CSV uses 12 significant digits, OBJ 9.
std::string format_g(double value, int digits);
inline std::string format_g12(double value) { return format_g(value, 12); }
inline std::string format_g9(double value) { return format_g(value, 9); }

} // namespace wlab
