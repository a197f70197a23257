#pragma once

#include <cstdio>
#include <string>

namespace cpl {

/// Shortest fixed formatting that round-trips a double; used for CSV output
/// so repeated runs are byte-identical.
inline std::string fmt_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace cpl
