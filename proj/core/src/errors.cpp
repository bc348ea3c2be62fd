#include "prandtl/errors.hpp"

#include <cstdio>

namespace prandtl {

std::string describe_node(const char* what, int i, int j, double value) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s at node (%d, %d), value %.6g", what, i, j, value);
    return buf;
}

}  // namespace prandtl
