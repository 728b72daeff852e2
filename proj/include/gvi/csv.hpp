#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace gvi {

/// Shortest exact decimal form; NaN renders as an empty field.
inline std::string csv_double(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace gvi
