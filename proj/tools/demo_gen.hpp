#ifndef EDA_TOOLS_DEMO_GEN_HPP
#define EDA_TOOLS_DEMO_GEN_HPP

#include <cstdint>

#include "formats.hpp"

namespace eda::tools {

// Synthetic stand-in for a human-demonstrated drawing: a slow inward
// spiral stroke traversed with a minimum-jerk speed profile, so the
// path is smooth and starts/ends at rest. The seed jitters the shape
// parameters; a fixed seed reproduces the file bit for bit.
struct DemoGenParams {
    std::uint64_t seed = 1;
    double rate = 333.0;   // Hz
    int samples = 2331;    // P
    double centerX = 0.55;  // m, placement in the robot workspace
    double centerY = 0.0;
    double size = 0.055;   // m, base radius of the stroke
};

DemoData generateDemo(const DemoGenParams& params);

}  // namespace eda::tools

#endif
