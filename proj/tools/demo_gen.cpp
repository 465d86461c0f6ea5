#include "demo_gen.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "eda/primitives.hpp"

namespace eda::tools {

DemoData generateDemo(const DemoGenParams& params)
{
    if (params.samples < 3 || !(params.rate > 0.0) || !(params.size > 0.0)) {
        throw std::invalid_argument("demo gen: need samples >= 3, rate > 0, size > 0");
    }
    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double turns = 1.75 + 0.1 * unit(rng);
    const double shrink = 0.55 + 0.05 * unit(rng);
    const double driftX = 0.25 * params.size * (1.0 + 0.2 * unit(rng));
    const double startAngle = 0.4 + 0.1 * unit(rng);

    const int P = params.samples;
    const double T = static_cast<double>(P - 1) / params.rate;

    DemoData demo;
    demo.times.resize(P);
    demo.positions.resize(P, 2);
    for (int j = 0; j < P; ++j) {
        const double t = static_cast<double>(j) / params.rate;
        double u, du;
        minJerkBasis(t, 0.0, T, u, du);
        const double angle = startAngle + 2.0 * M_PI * turns * u;
        const double radius = params.size * (1.0 - shrink * u);
        demo.times[j] = t;
        demo.positions(j, 0) = params.centerX + driftX * u + radius * std::cos(angle);
        demo.positions(j, 1) = params.centerY + radius * std::sin(angle);
    }
    return demo;
}

}  // namespace eda::tools
