#pragma once

#include <doctest.h>

#include <cmath>
#include <string>

#include "famedkit/partition.hpp"

namespace fk = famedkit;

inline const double kPi = 3.14159265358979323846;
inline const double kVol41 = 2.029883212819307;

inline fk::OrderedTriangulation preset(const std::string& name) {
    return fk::load_triangulation(fk::resolve_triangulation_path(name));
}

inline std::string data_path(const std::string& name) {
    return std::string(FAMEDKIT_TEST_DATA) + "/" + name;
}

inline const std::vector<std::string>& all_presets() {
    static const std::vector<std::string> p{"fig8", "twist_4", "twist_5", "twist_6", "twist_7"};
    return p;
}
