#include "hyperwave/format.hpp"

#include <cstdio>

namespace hyperwave::format {

std::string sig12(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace hyperwave::format
