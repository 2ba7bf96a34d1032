#include "wlab/format.hpp"

#include <cstdio>

namespace wlab {

std::string format_g(double value, int digits)
{
    char buffer[64];
    const int len = std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
    return std::string(buffer, static_cast<std::size_t>(len));
}

} // namespace wlab
